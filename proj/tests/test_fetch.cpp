#include <doctest.h>

#include <algorithm>

#include "p2g/errors.hpp"
#include "p2g/fetch.hpp"
#include "test_support.hpp"

using namespace p2g;

namespace {

std::string file_url(const std::filesystem::path& path) { return "file://" + path.string(); }

}  // namespace

TEST_CASE("fetch from a file:// mirror yields comps and primary") {
    auto dest = testsup::fresh_temp_dir("fetch");
    auto manifest = fetch_repo_metadata(file_url(testsup::fixtures_dir() / "mirror"), dest);
    CHECK(manifest.comps_found);
    REQUIRE(manifest.files.size() == 2);
    auto primary = std::find_if(manifest.files.begin(), manifest.files.end(),
                                [](const FetchedFile& f) { return f.kind == "primary"; });
    REQUIRE(primary != manifest.files.end());
    CHECK(primary->path.filename() == "primary.xml");  // .gz suffix stripped
    // decompressed bytes match the original fixture
    CHECK(testsup::read_file(primary->path) ==
          testsup::read_file(testsup::fixtures_dir() / "primary_mini.xml"));
    auto comps = std::find_if(manifest.files.begin(), manifest.files.end(),
                              [](const FetchedFile& f) { return f.kind == "comps"; });
    REQUIRE(comps != manifest.files.end());
    CHECK(comps->size_bytes > 0);
    std::filesystem::remove_all(dest);
}

TEST_CASE("repomd without comps still fetches primary") {
    auto dest = testsup::fresh_temp_dir("fetch_nc");
    auto manifest =
        fetch_repo_metadata(file_url(testsup::fixtures_dir() / "mirror_nocomps"), dest);
    CHECK_FALSE(manifest.comps_found);
    REQUIRE(manifest.files.size() == 1);
    CHECK(manifest.files[0].kind == "primary");
    std::filesystem::remove_all(dest);
}

TEST_CASE("corrupt gzip raises DecompressError") {
    auto dest = testsup::fresh_temp_dir("fetch_bad");
    try {
        fetch_repo_metadata(file_url(testsup::fixtures_dir() / "mirror_badgz"), dest);
        FAIL("expected DecompressError");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::decompress_error);
    }
    std::filesystem::remove_all(dest);
}

TEST_CASE("unreachable mirror raises NetworkError") {
    auto dest = testsup::fresh_temp_dir("fetch_missing");
    try {
        fetch_repo_metadata(file_url(dest / "nope"), dest);
        FAIL("expected NetworkError");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::network_error);
    }
    std::filesystem::remove_all(dest);
}
