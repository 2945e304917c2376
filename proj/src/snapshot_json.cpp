#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "p2g/errors.hpp"
#include "p2g/ingest.hpp"

namespace p2g {

using ordered_json = nlohmann::ordered_json;

namespace {

const ordered_json& require_key(const ordered_json& obj, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end())
        throw Error(Errc::schema_violation, std::string("missing key '") + key + "'");
    return *it;
}

std::string require_string(const ordered_json& obj, const char* key) {
    const auto& value = require_key(obj, key);
    if (!value.is_string())
        throw Error(Errc::schema_violation, std::string("key '") + key + "' must be a string");
    return value.get<std::string>();
}

std::vector<std::string> require_string_array(const ordered_json& obj, const char* key) {
    const auto& value = require_key(obj, key);
    if (!value.is_array())
        throw Error(Errc::schema_violation, std::string("key '") + key + "' must be an array");
    std::vector<std::string> out;
    out.reserve(value.size());
    for (const auto& item : value) {
        if (!item.is_string())
            throw Error(Errc::schema_violation,
                        std::string("entries of '") + key + "' must be strings");
        out.push_back(item.get<std::string>());
    }
    return out;
}

}  // namespace

Snapshot parse_snapshot_json(std::string_view text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(Errc::schema_violation, e.what());
    }
    if (!doc.is_object()) throw Error(Errc::schema_violation, "snapshot must be a JSON object");

    Snapshot snapshot;
    snapshot.distribution = require_string(doc, "distribution");
    snapshot.version = require_string(doc, "version");

    const auto& groups = require_key(doc, "groups");
    if (!groups.is_array()) throw Error(Errc::schema_violation, "'groups' must be an array");
    for (const auto& g : groups) {
        GroupDef group;
        group.id = require_string(g, "id");
        group.name = require_string(g, "name");
        group.description = require_string(g, "description");
        const auto& members = require_key(g, "packages");
        if (!members.is_array())
            throw Error(Errc::schema_violation, "group 'packages' must be an array");
        for (const auto& m : members) {
            PackageEntry entry;
            entry.name = require_string(m, "name");
            entry.requirement = requirement_from_string(require_string(m, "requirement"));
            group.packages.push_back(std::move(entry));
        }
        snapshot.groups.push_back(std::move(group));
    }

    const auto& packages = require_key(doc, "packages");
    if (!packages.is_array()) throw Error(Errc::schema_violation, "'packages' must be an array");
    for (const auto& p : packages) {
        PackageMeta pkg;
        pkg.name = require_string(p, "name");
        pkg.description = require_string(p, "description");
        pkg.provides = require_string_array(p, "provides");
        pkg.requires_ = require_string_array(p, "requires");
        snapshot.packages.push_back(std::move(pkg));
    }

    validate(snapshot);
    return snapshot;
}

Snapshot load_snapshot(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::io_error, "cannot open '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw Error(Errc::io_error, "read failure on '" + path.string() + "'");
    return parse_snapshot_json(buffer.str());
}

std::string save_snapshot(const Snapshot& snapshot) {
    ordered_json doc;
    doc["distribution"] = snapshot.distribution;
    doc["version"] = snapshot.version;
    doc["groups"] = ordered_json::array();
    for (const auto& group : snapshot.groups) {
        ordered_json g;
        g["id"] = group.id;
        g["name"] = group.name;
        g["description"] = group.description;
        g["packages"] = ordered_json::array();
        for (const auto& entry : group.packages) {
            ordered_json m;
            m["name"] = entry.name;
            m["requirement"] = to_string(entry.requirement);
            g["packages"].push_back(std::move(m));
        }
        doc["groups"].push_back(std::move(g));
    }
    doc["packages"] = ordered_json::array();
    for (const auto& pkg : snapshot.packages) {
        ordered_json p;
        p["name"] = pkg.name;
        p["description"] = pkg.description;
        p["provides"] = pkg.provides;
        p["requires"] = pkg.requires_;
        doc["packages"].push_back(std::move(p));
    }
    return doc.dump(2) + "\n";
}

void save_snapshot_file(const Snapshot& snapshot, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(Errc::io_error, "cannot write '" + path.string() + "'");
    out << save_snapshot(snapshot);
    if (!out) throw Error(Errc::io_error, "write failure on '" + path.string() + "'");
}

}  // namespace p2g
