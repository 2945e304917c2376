#include "p2g/types.hpp"

#include <unordered_set>

#include "p2g/errors.hpp"

namespace p2g {

const char* errc_name(Errc code) {
    switch (code) {
        case Errc::malformed_xml: return "MalformedXml";
        case Errc::missing_field: return "MissingField";
        case Errc::duplicate_group_id: return "DuplicateGroupId";
        case Errc::schema_violation: return "SchemaViolation";
        case Errc::io_error: return "IoError";
        case Errc::network_error: return "NetworkError";
        case Errc::not_found: return "NotFound";
        case Errc::decompress_error: return "DecompressError";
        case Errc::unknown_node: return "UnknownNode";
        case Errc::same_package: return "SamePackage";
        case Errc::unknown_group: return "UnknownGroup";
        case Errc::empty_group: return "EmptyGroup";
        case Errc::singleton_corpus: return "SingletonCorpus";
        case Errc::empty_corpus: return "EmptyCorpus";
        case Errc::empty_input: return "EmptyInput";
        case Errc::bad_hyperparam: return "BadHyperparam";
        case Errc::length_mismatch: return "LengthMismatch";
        case Errc::too_few_points: return "TooFewPoints";
        case Errc::usage_error: return "UsageError";
    }
    return "Error";
}

const char* to_string(Requirement r) {
    switch (r) {
        case Requirement::Mandatory: return "mandatory";
        case Requirement::Default: return "default";
        case Requirement::Optional: return "optional";
    }
    return "optional";
}

Requirement requirement_from_string(const std::string& s) {
    if (s == "mandatory") return Requirement::Mandatory;
    if (s == "default") return Requirement::Default;
    if (s == "optional") return Requirement::Optional;
    throw Error(Errc::schema_violation, "unknown requirement level '" + s + "'");
}

void validate(const Snapshot& snapshot) {
    std::unordered_set<std::string> group_ids;
    for (const auto& group : snapshot.groups) {
        if (group.id.empty())
            throw Error(Errc::schema_violation, "group with empty id");
        if (!group_ids.insert(group.id).second)
            throw Error(Errc::schema_violation, "duplicate group id '" + group.id + "'");
        std::unordered_set<std::string> member_names;
        for (const auto& entry : group.packages) {
            if (entry.name.empty())
                throw Error(Errc::schema_violation,
                            "empty package name in group '" + group.id + "'");
            if (!member_names.insert(entry.name).second)
                throw Error(Errc::schema_violation, "duplicate package '" + entry.name +
                                                        "' in group '" + group.id + "'");
        }
    }
    std::unordered_set<std::string> package_names;
    for (const auto& pkg : snapshot.packages) {
        if (pkg.name.empty())
            throw Error(Errc::schema_violation, "package with empty name");
        if (!package_names.insert(pkg.name).second)
            throw Error(Errc::schema_violation, "duplicate package name '" + pkg.name + "'");
    }
}

}  // namespace p2g
