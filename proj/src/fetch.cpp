#include <zlib.h>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <fstream>
#include <sstream>

#include "p2g/errors.hpp"
#include "p2g/fetch.hpp"

// Only pulled in for http(s) mirrors; tests run against file:// fixtures.
#include <httplib.h>

namespace p2g {

namespace fs = std::filesystem;
namespace pt = boost::property_tree;

namespace {

std::string local_name(const std::string& element) {
    auto colon = element.rfind(':');
    return colon == std::string::npos ? element : element.substr(colon + 1);
}

struct Url {
    std::string scheme;  // "file", "http", "https", or "" for bare paths
    std::string host_port;
    std::string path;
};

Url split_url(const std::string& url) {
    auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) return {"", "", url};
    Url out;
    out.scheme = url.substr(0, scheme_end);
    std::string rest = url.substr(scheme_end + 3);
    if (out.scheme == "file") {
        out.path = rest;  // file://<path>, host part unused
        return out;
    }
    auto slash = rest.find('/');
    out.host_port = slash == std::string::npos ? rest : rest.substr(0, slash);
    out.path = slash == std::string::npos ? "/" : rest.substr(slash);
    return out;
}

std::string fetch_bytes(const Url& base, const std::string& relative) {
    if (base.scheme.empty() || base.scheme == "file") {
        fs::path file = fs::path(base.path) / relative;
        std::ifstream in(file, std::ios::binary);
        if (!in)
            throw Error(Errc::network_error, "cannot read '" + file.string() + "'");
        std::ostringstream buffer;
        buffer << in.rdbuf();
        return buffer.str();
    }
    if (base.scheme == "http" || base.scheme == "https") {
        httplib::Client client((base.scheme + "://" + base.host_port).c_str());
        client.set_follow_location(true);
        std::string path = base.path;
        if (path.empty() || path.back() != '/') path += '/';
        auto res = client.Get((path + relative).c_str());
        if (!res)
            throw Error(Errc::network_error, "request failed for '" + relative + "'");
        if (res->status != 200)
            throw Error(Errc::network_error, "HTTP " + std::to_string(res->status) + " for '" +
                                                 relative + "'");
        return res->body;
    }
    throw Error(Errc::network_error, "unsupported URL scheme '" + base.scheme + "'");
}

// Inflates a gzip stream; DecompressError on corrupt or truncated data.
std::string gunzip(const std::string& compressed) {
    z_stream strm{};
    if (inflateInit2(&strm, 15 + 16) != Z_OK)
        throw Error(Errc::decompress_error, "inflateInit2 failed");
    std::string out;
    std::vector<char> chunk(64 * 1024);
    strm.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(compressed.data()));
    strm.avail_in = static_cast<uInt>(compressed.size());
    int rc = Z_OK;
    do {
        strm.next_out = reinterpret_cast<Bytef*>(chunk.data());
        strm.avail_out = static_cast<uInt>(chunk.size());
        rc = inflate(&strm, Z_NO_FLUSH);
        if (rc != Z_OK && rc != Z_STREAM_END) {
            inflateEnd(&strm);
            throw Error(Errc::decompress_error,
                        strm.msg ? strm.msg : "corrupt gzip stream");
        }
        out.append(chunk.data(), chunk.size() - strm.avail_out);
        // keep draining while the output chunk keeps filling up
    } while (rc != Z_STREAM_END && (strm.avail_in > 0 || strm.avail_out == 0));
    inflateEnd(&strm);
    if (rc != Z_STREAM_END)
        throw Error(Errc::decompress_error, "truncated gzip stream");
    return out;
}

void write_file(const fs::path& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(Errc::io_error, "cannot write '" + path.string() + "'");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error(Errc::io_error, "write failure on '" + path.string() + "'");
}

}  // namespace

FetchManifest fetch_repo_metadata(const std::string& base_url, const fs::path& dest) {
    Url base = split_url(base_url);
    std::string repomd_bytes = fetch_bytes(base, "repodata/repomd.xml");

    pt::ptree tree;
    std::istringstream in(repomd_bytes);
    try {
        pt::read_xml(in, tree);
    } catch (const pt::xml_parser_error& e) {
        throw Error(Errc::malformed_xml, std::string("repomd.xml: ") + e.message());
    }

    std::string primary_href;
    std::string comps_href;
    for (const auto& [root_key, root] : tree) {
        if (local_name(root_key) != "repomd") continue;
        for (const auto& [key, node] : root) {
            if (local_name(key) != "data") continue;
            std::string type = node.get<std::string>("<xmlattr>.type", "");
            std::string href;
            for (const auto& [ckey, cnode] : node) {
                if (local_name(ckey) == "location")
                    href = cnode.get<std::string>("<xmlattr>.href", "");
            }
            if (href.empty()) continue;
            if (type == "primary") primary_href = href;
            if (type == "group" || type == "group_gz") comps_href = href;
        }
    }
    if (primary_href.empty())
        throw Error(Errc::not_found, "repomd.xml lists no primary metadata");

    fs::create_directories(dest);
    FetchManifest manifest;
    auto retrieve = [&](const std::string& kind, const std::string& href) {
        std::string bytes = fetch_bytes(base, href);
        std::string filename = fs::path(href).filename().string();
        if (filename.ends_with(".gz")) {
            bytes = gunzip(bytes);
            filename = filename.substr(0, filename.size() - 3);
        }
        fs::path local = dest / filename;
        write_file(local, bytes);
        manifest.files.push_back({kind, local, bytes.size()});
    };
    retrieve("primary", primary_href);
    if (!comps_href.empty()) {
        retrieve("comps", comps_href);
        manifest.comps_found = true;
    }
    return manifest;
}

}  // namespace p2g
