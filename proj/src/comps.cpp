#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include <optional>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "p2g/errors.hpp"
#include "p2g/ingest.hpp"

namespace p2g {

namespace pt = boost::property_tree;

namespace {

std::string local_name(const std::string& element) {
    auto colon = element.rfind(':');
    return colon == std::string::npos ? element : element.substr(colon + 1);
}

bool has_lang_attr(const pt::ptree& node) {
    auto attrs = node.get_child_optional("<xmlattr>");
    if (!attrs) return false;
    for (const auto& [name, value] : *attrs)
        if (local_name(name) == "lang") return true;
    return false;
}

// First child of the given local name without an xml:lang attribute,
// falling back to the first child of that name.
std::optional<std::string> untranslated_text(const pt::ptree& parent, const std::string& name) {
    std::optional<std::string> fallback;
    for (const auto& [key, child] : parent) {
        if (local_name(key) != name) continue;
        if (!has_lang_attr(child)) return child.get_value<std::string>();
        if (!fallback) fallback = child.get_value<std::string>();
    }
    return fallback;
}

pt::ptree parse_xml(std::string_view xml_bytes) {
    std::istringstream in{std::string(xml_bytes)};
    pt::ptree tree;
    try {
        pt::read_xml(in, tree);
    } catch (const pt::xml_parser_error& e) {
        throw Error(Errc::malformed_xml, e.message());
    }
    return tree;
}

}  // namespace

CompsParseResult parse_comps(std::string_view xml_bytes) {
    pt::ptree tree = parse_xml(xml_bytes);
    const pt::ptree* comps = nullptr;
    for (const auto& [key, child] : tree) {
        if (local_name(key) == "comps") {
            comps = &child;
            break;
        }
    }
    if (!comps) throw Error(Errc::malformed_xml, "document root is not <comps>");

    CompsParseResult result;
    std::unordered_set<std::string> seen_ids;
    for (const auto& [key, node] : *comps) {
        if (local_name(key) != "group") continue;
        GroupDef group;
        auto id = untranslated_text(node, "id");
        if (!id || id->empty()) throw Error(Errc::missing_field, "<group> without <id>");
        group.id = *id;
        if (!seen_ids.insert(group.id).second)
            throw Error(Errc::duplicate_group_id, "group id '" + group.id + "' appears twice");
        group.name = untranslated_text(node, "name").value_or("");
        group.description = untranslated_text(node, "description").value_or("");

        if (auto packagelist = node.get_child_optional("packagelist")) {
            std::unordered_set<std::string> member_names;
            for (const auto& [pkey, pnode] : *packagelist) {
                if (local_name(pkey) != "packagereq") continue;
                PackageEntry entry;
                entry.name = pnode.get_value<std::string>();
                if (entry.name.empty())
                    throw Error(Errc::missing_field,
                                "empty <packagereq> in group '" + group.id + "'");
                // real comps files occasionally repeat an entry; the first
                // occurrence wins so the GroupDef invariant holds
                if (!member_names.insert(entry.name).second) {
                    result.warnings.push_back("group '" + group.id + "': duplicate packagereq '" +
                                              entry.name + "' ignored");
                    continue;
                }
                // Missing type means mandatory, the comps DTD default.
                std::string type = pnode.get<std::string>("<xmlattr>.type", "mandatory");
                if (type == "mandatory") {
                    entry.requirement = Requirement::Mandatory;
                } else if (type == "default") {
                    entry.requirement = Requirement::Default;
                } else if (type == "optional") {
                    entry.requirement = Requirement::Optional;
                } else {
                    entry.requirement = Requirement::Optional;
                    result.warnings.push_back("group '" + group.id + "': packagereq type '" +
                                              type + "' mapped to optional");
                }
                group.packages.push_back(std::move(entry));
            }
        }
        result.groups.push_back(std::move(group));
    }
    return result;
}

PrimaryParseResult parse_primary(std::string_view xml_bytes) {
    pt::ptree tree = parse_xml(xml_bytes);
    const pt::ptree* metadata = nullptr;
    for (const auto& [key, child] : tree) {
        if (local_name(key) == "metadata") {
            metadata = &child;
            break;
        }
    }
    if (!metadata) throw Error(Errc::malformed_xml, "document root is not <metadata>");

    PrimaryParseResult result;
    std::unordered_map<std::string, std::size_t> position_of;
    for (const auto& [key, node] : *metadata) {
        if (local_name(key) != "package") continue;
        PackageMeta pkg;
        auto name = untranslated_text(node, "name");
        if (!name || name->empty()) throw Error(Errc::missing_field, "<package> without <name>");
        pkg.name = *name;
        pkg.description = untranslated_text(node, "description").value_or("");

        for (const auto& [fkey, fnode] : node) {
            if (local_name(fkey) != "format") continue;
            for (const auto& [ckey, cnode] : fnode) {
                std::string cap_kind = local_name(ckey);
                if (cap_kind != "provides" && cap_kind != "requires") continue;
                auto& target = cap_kind == "provides" ? pkg.provides : pkg.requires_;
                for (const auto& [ekey, enode] : cnode) {
                    if (local_name(ekey) != "entry") continue;
                    std::string cap = enode.get<std::string>("<xmlattr>.name", "");
                    if (!cap.empty()) target.push_back(std::move(cap));
                }
            }
        }

        auto [it, inserted] = position_of.emplace(pkg.name, result.packages.size());
        if (inserted) {
            result.packages.push_back(std::move(pkg));
        } else {
            result.warnings.push_back("duplicate package '" + pkg.name +
                                      "' collapsed to the last occurrence");
            result.packages[it->second] = std::move(pkg);
        }
    }
    return result;
}

}  // namespace p2g
