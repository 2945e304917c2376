#pragma once

#include <string>
#include <vector>

namespace p2g {

/// Membership level of a package inside a group. Unknown levels found in
/// comps files (e.g. "conditional") are folded into Optional at parse time.
enum class Requirement {
    Mandatory,
    Default,
    Optional,
};

const char* to_string(Requirement r);

/// Parses "mandatory"/"default"/"optional"; throws Error(schema_violation)
/// on anything else.
Requirement requirement_from_string(const std::string& s);

struct PackageEntry {
    std::string name;
    Requirement requirement = Requirement::Optional;

    bool operator==(const PackageEntry&) const = default;
};

struct GroupDef {
    std::string id;
    std::string name;
    std::string description;
    std::vector<PackageEntry> packages;

    bool operator==(const GroupDef&) const = default;
};

struct PackageMeta {
    std::string name;
    std::string description;
    std::vector<std::string> provides;
    std::vector<std::string> requires_;  // "requires" is reserved in C++20

    bool operator==(const PackageMeta&) const = default;
};

/// One distribution version: every group plus the total package universe.
/// Groups may reference package names absent from the universe; such entries
/// are kept (they carry weight in list comparisons) but have no description
/// and no node in the dependency graph.
struct Snapshot {
    std::string distribution;
    std::string version;
    std::vector<GroupDef> groups;
    std::vector<PackageMeta> packages;

    bool operator==(const Snapshot&) const = default;
};

/// Checks Snapshot invariants: unique group ids, unique package names,
/// no duplicate package name within one group, non-empty names.
/// Throws Error(schema_violation) on the first violation found.
void validate(const Snapshot& snapshot);

}  // namespace p2g
