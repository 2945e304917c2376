#pragma once

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "p2g/types.hpp"

namespace testsup {

inline std::filesystem::path fixtures_dir() { return P2G_FIXTURES_DIR; }
inline std::filesystem::path golden_dir() { return P2G_GOLDEN_DIR; }

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

inline std::filesystem::path fresh_temp_dir(const std::string& tag) {
    static std::mt19937_64 rng{std::random_device{}()};
    auto dir = std::filesystem::temp_directory_path() /
               ("p2g_" + tag + "_" + std::to_string(rng()));
    std::filesystem::create_directories(dir);
    return dir;
}

// Deterministic random snapshots for property tests. Descriptions draw from
// a small pool so that vocabularies overlap; some member entries reference
// names missing from the universe on purpose.
inline p2g::Snapshot random_snapshot(std::mt19937_64& rng, int max_groups = 10,
                                     int max_members = 6, int min_groups = 0,
                                     int max_packages = 25) {
    static const std::vector<std::string> words = {
        "desktop", "editor",  "server",  "network", "font",    "library", "tools",
        "graphical", "terminal", "kernel", "sound",  "video",   "input",  "language",
        "files", "manager", "client", "secure", "archive", "compression"};
    static const std::vector<std::string> caps = {"liba", "libb", "libc2", "libd", "libe",
                                                  "cap1", "cap2", "cap3"};
    auto pick = [&](std::size_t bound) { return static_cast<std::size_t>(rng() % bound); };
    auto sentence = [&](int max_len) {
        std::string text;
        int len = static_cast<int>(pick(max_len + 1));
        for (int i = 0; i < len; ++i) {
            if (!text.empty()) text += ' ';
            text += words[pick(words.size())];
        }
        return text;
    };

    p2g::Snapshot snapshot;
    snapshot.distribution = "randomish";
    snapshot.version = std::to_string(rng() % 100);

    int package_count = static_cast<int>(pick(max_packages + 1));
    for (int i = 0; i < package_count; ++i) {
        p2g::PackageMeta pkg;
        pkg.name = "p" + std::to_string(i);
        pkg.description = sentence(8);
        pkg.provides.push_back(pkg.name);
        if (rng() % 2) pkg.provides.push_back(caps[pick(caps.size())]);
        int reqs = static_cast<int>(pick(4));
        for (int r = 0; r < reqs; ++r) {
            if (rng() % 3 == 0 && package_count > 1)
                pkg.requires_.push_back("p" + std::to_string(pick(package_count)));
            else
                pkg.requires_.push_back(caps[pick(caps.size())]);
        }
        snapshot.packages.push_back(std::move(pkg));
    }

    int group_count = min_groups + static_cast<int>(pick(max_groups - min_groups + 1));
    for (int g = 0; g < group_count; ++g) {
        p2g::GroupDef group;
        group.id = "g" + std::to_string(g);
        group.name = sentence(3);
        group.description = sentence(8);
        int members = static_cast<int>(pick(max_members + 1));
        for (int m = 0; m < members; ++m) {
            p2g::PackageEntry entry;
            // occasionally reference a package missing from the universe
            if (package_count == 0 || rng() % 8 == 0)
                entry.name = "ghost" + std::to_string(m);
            else
                entry.name = "p" + std::to_string(pick(package_count));
            entry.requirement = static_cast<p2g::Requirement>(rng() % 3);
            bool duplicate = false;
            for (const auto& existing : group.packages)
                if (existing.name == entry.name) duplicate = true;
            if (!duplicate) group.packages.push_back(std::move(entry));
        }
        snapshot.groups.push_back(std::move(group));
    }
    return snapshot;
}

}  // namespace testsup
