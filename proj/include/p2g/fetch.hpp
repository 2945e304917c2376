#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace p2g {

struct FetchedFile {
    std::string kind;  // "comps" or "primary"
    std::filesystem::path path;
    std::uintmax_t size_bytes = 0;
};

struct FetchManifest {
    std::vector<FetchedFile> files;
    // Real repos may omit the comps reference; callers proceed package-only.
    bool comps_found = false;
};

/// Fetches repodata/repomd.xml under base_url, follows its primary and
/// group (comps) references, downloads them into dest and gunzips files
/// whose name ends in ".gz". base_url accepts http://, https:// and
/// file:// URLs plus bare filesystem paths.
///
/// A repomd without a comps entry is not an error: the manifest comes back
/// with comps_found == false and the primary file only. Throws
/// Error(network_error) when the transfer fails, Error(not_found) when the
/// repomd lists no primary, Error(decompress_error) on corrupt gzip data,
/// Error(malformed_xml) on an unparseable repomd.
FetchManifest fetch_repo_metadata(const std::string& base_url, const std::filesystem::path& dest);

}  // namespace p2g
