#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "p2g/types.hpp"

namespace p2g {

struct CompsParseResult {
    std::vector<GroupDef> groups;   // document order
    std::vector<std::string> warnings;
};

struct PrimaryParseResult {
    std::vector<PackageMeta> packages;
    std::vector<std::string> warnings;
};

/// Parses the comps XML subset:
///   comps > group > (id, name, description, packagelist > packagereq[@type])
/// Unknown elements are ignored. For <name>/<description> the first child
/// without an xml:lang attribute wins (falling back to the first child).
/// packagereq types outside {mandatory, default, optional} map to optional
/// and add a warning; a missing type attribute means mandatory (the comps
/// DTD default). Throws Error(malformed_xml), Error(missing_field) for a
/// group without <id>, Error(duplicate_group_id).
CompsParseResult parse_comps(std::string_view xml_bytes);

/// Parses the primary-metadata XML subset:
///   metadata > package > (name, description, format > provides/requires > entry[@name])
/// Namespace prefixes are ignored by local-name matching. Duplicate package
/// names collapse to the last occurrence and add a warning.
/// Throws Error(malformed_xml), Error(missing_field) for a package without name.
PrimaryParseResult parse_primary(std::string_view xml_bytes);

/// Reads canonical snapshot JSON and validates all Snapshot invariants.
/// Throws Error(io_error) or Error(schema_violation).
Snapshot load_snapshot(const std::filesystem::path& path);

/// Parses canonical snapshot JSON from a string (same contract as
/// load_snapshot, minus the file access).
Snapshot parse_snapshot_json(std::string_view text);

/// Serializes the canonical snapshot JSON with a fixed key order:
///   {"distribution", "version",
///    "groups":   [{"id","name","description","packages":[{"name","requirement"}]}],
///    "packages": [{"name","description","provides":[...],"requires":[...]}]}
/// Output is byte-stable: load_snapshot(save_snapshot(s)) == s and repeated
/// saves produce identical bytes.
std::string save_snapshot(const Snapshot& snapshot);

/// save_snapshot to a file. Throws Error(io_error).
void save_snapshot_file(const Snapshot& snapshot, const std::filesystem::path& path);

}  // namespace p2g
