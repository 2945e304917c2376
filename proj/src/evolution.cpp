#include "p2g/evolution.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "num_format.hpp"
#include "p2g/errors.hpp"
#include "p2g/gvalue.hpp"

namespace p2g {

const char* to_string(ChangePattern pattern) {
    switch (pattern) {
        case ChangePattern::Split: return "split";
        case ChangePattern::Merge: return "merge";
        case ChangePattern::Rename: return "rename";
        case ChangePattern::AddFeature: return "add_feature";
        case ChangePattern::RemoveFeature: return "remove_feature";
        case ChangePattern::ReplaceFeature: return "replace_feature";
    }
    return "";
}

namespace {

std::map<std::string, const GroupDef*> groups_by_id(const Snapshot& snapshot) {
    std::map<std::string, const GroupDef*> map;
    for (const auto& group : snapshot.groups) map.emplace(group.id, &group);
    return map;
}

std::set<std::string> grouped_names(const Snapshot& snapshot) {
    std::set<std::string> names;
    for (const auto& group : snapshot.groups)
        for (const auto& entry : group.packages) names.insert(entry.name);
    return names;
}

std::set<std::string> member_names(const GroupDef& group) {
    std::set<std::string> names;
    for (const auto& entry : group.packages) names.insert(entry.name);
    return names;
}

// Weighted-Jaccard similarity of two package lists (1 = identical lists).
double weighted_overlap(const GroupDef& a, const GroupDef& b) {
    std::unordered_map<std::string, double> wa, wb;
    for (const auto& e : a.packages) wa[e.name] = package_weight(e.requirement);
    for (const auto& e : b.packages) wb[e.name] = package_weight(e.requirement);
    if (wa.empty() && wb.empty()) return 1.0;
    double numerator = 0.0, denominator = 0.0;
    for (const auto& [name, w] : wa) {
        auto it = wb.find(name);
        if (it != wb.end()) {
            numerator += std::min(w, it->second);
            denominator += std::max(w, it->second);
        } else {
            denominator += w;
        }
    }
    for (const auto& [name, w] : wb)
        if (wa.find(name) == wa.end()) denominator += w;
    return numerator / denominator;
}

}  // namespace

GroupDiff diff_groups(const Snapshot& prev, const Snapshot& curr) {
    auto prev_map = groups_by_id(prev);
    auto curr_map = groups_by_id(curr);
    GroupDiff diff;
    for (const auto& [id, group] : curr_map)
        if (prev_map.find(id) == prev_map.end()) diff.added.push_back(*group);
    for (const auto& [id, group] : prev_map) {
        if (curr_map.find(id) == curr_map.end())
            diff.removed.push_back(*group);
        else
            diff.retained.push_back(id);
    }
    return diff;
}

FlowReport classify_flows(const Snapshot& prev, const Snapshot& curr) {
    FlowReport report;
    report.prev_version = prev.version;
    report.curr_version = curr.version;

    auto prev_grouped = grouped_names(prev);
    auto curr_grouped = grouped_names(curr);
    std::unordered_set<std::string> prev_universe, curr_universe;
    for (const auto& pkg : prev.packages) prev_universe.insert(pkg.name);
    for (const auto& pkg : curr.packages) curr_universe.insert(pkg.name);

    for (const auto& name : curr_grouped)
        if (prev_grouped.count(name) == 0) report.ap.push_back(name);
    for (const auto& name : prev_grouped)
        if (curr_grouped.count(name) == 0) report.rp.push_back(name);

    for (const auto& name : report.ap)
        prev_universe.count(name) ? ++report.s1 : ++report.s2;
    for (const auto& name : report.rp)
        curr_universe.count(name) ? ++report.o1 : ++report.o2;
    return report;
}

FlowBreakdown aggregate_flows(std::span<const FlowReport> reports) {
    if (reports.empty()) throw Error(Errc::empty_input, "no flow reports to aggregate");
    FlowBreakdown breakdown;
    for (const auto& report : reports) {
        breakdown.s1 += report.s1;
        breakdown.s2 += report.s2;
        breakdown.o1 += report.o1;
        breakdown.o2 += report.o2;
    }
    breakdown.total = breakdown.s1 + breakdown.s2 + breakdown.o1 + breakdown.o2;
    if (breakdown.total == 0) {
        breakdown.zero_total = true;
        return breakdown;
    }
    double total = static_cast<double>(breakdown.total);
    breakdown.s1_pct = 100.0 * static_cast<double>(breakdown.s1) / total;
    breakdown.s2_pct = 100.0 * static_cast<double>(breakdown.s2) / total;
    breakdown.o1_pct = 100.0 * static_cast<double>(breakdown.o1) / total;
    breakdown.o2_pct = 100.0 * static_cast<double>(breakdown.o2) / total;
    return breakdown;
}

namespace {

struct Candidate {
    ChangeRecord record;
    int priority;  // tie-break after confidence: lower wins
};

int pattern_priority(ChangePattern pattern) {
    switch (pattern) {
        case ChangePattern::Rename: return 0;
        case ChangePattern::Split: return 1;
        case ChangePattern::Merge: return 2;
        case ChangePattern::ReplaceFeature: return 3;
        default: return 4;
    }
}

}  // namespace

std::vector<ChangeRecord> suggest_patterns(const Snapshot& prev, const Snapshot& curr,
                                           const PatternThresholds& thresholds) {
    GroupDiff diff = diff_groups(prev, curr);
    auto curr_map = groups_by_id(curr);

    std::vector<Candidate> candidates;

    // rename: one removed group whose package list closely matches one added group
    for (const auto& removed : diff.removed) {
        for (const auto& added : diff.added) {
            double overlap = weighted_overlap(removed, added);
            if (overlap < thresholds.rename_overlap) continue;
            ChangeRecord record;
            record.pattern = ChangePattern::Rename;
            record.involved_old = {removed.id};
            record.involved_new = {added.id};
            record.confidence = overlap;
            record.evidence = "weighted package overlap " + detail::format_double(overlap) +
                              " between removed '" + removed.id + "' and added '" + added.id +
                              "'";
            candidates.push_back({std::move(record), pattern_priority(ChangePattern::Rename)});
        }
    }

    // split: members of a removed group land in two or more added groups
    for (const auto& removed : diff.removed) {
        auto members = member_names(removed);
        if (members.empty()) continue;
        std::vector<const GroupDef*> parts;
        std::set<std::string> covered;
        for (const auto& added : diff.added) {
            auto added_members = member_names(added);
            std::vector<std::string> shared;
            std::set_intersection(members.begin(), members.end(), added_members.begin(),
                                  added_members.end(), std::back_inserter(shared));
            if (shared.empty()) continue;
            parts.push_back(&added);
            covered.insert(shared.begin(), shared.end());
        }
        if (parts.size() < 2) continue;
        double coverage =
            static_cast<double>(covered.size()) / static_cast<double>(members.size());
        if (coverage < thresholds.coverage) continue;
        ChangeRecord record;
        record.pattern = ChangePattern::Split;
        record.involved_old = {removed.id};
        for (const auto* part : parts) record.involved_new.push_back(part->id);
        record.confidence = coverage;
        record.evidence = std::to_string(covered.size()) + " of " +
                          std::to_string(members.size()) + " members of removed '" + removed.id +
                          "' spread across " + std::to_string(parts.size()) + " added groups";
        candidates.push_back({std::move(record), pattern_priority(ChangePattern::Split)});
    }

    // merge: mirror of split
    for (const auto& added : diff.added) {
        auto members = member_names(added);
        if (members.empty()) continue;
        std::vector<const GroupDef*> parts;
        std::set<std::string> covered;
        for (const auto& removed : diff.removed) {
            auto removed_members = member_names(removed);
            std::vector<std::string> shared;
            std::set_intersection(members.begin(), members.end(), removed_members.begin(),
                                  removed_members.end(), std::back_inserter(shared));
            if (shared.empty()) continue;
            parts.push_back(&removed);
            covered.insert(shared.begin(), shared.end());
        }
        if (parts.size() < 2) continue;
        double coverage =
            static_cast<double>(covered.size()) / static_cast<double>(members.size());
        if (coverage < thresholds.coverage) continue;
        ChangeRecord record;
        record.pattern = ChangePattern::Merge;
        for (const auto* part : parts) record.involved_old.push_back(part->id);
        record.involved_new = {added.id};
        record.confidence = coverage;
        record.evidence = std::to_string(covered.size()) + " of " +
                          std::to_string(members.size()) + " members of added '" + added.id +
                          "' drawn from " + std::to_string(parts.size()) + " removed groups";
        candidates.push_back({std::move(record), pattern_priority(ChangePattern::Merge)});
    }

    // replace_feature: a removed group absorbed by exactly one retained group
    for (const auto& removed : diff.removed) {
        auto members = member_names(removed);
        if (members.empty()) continue;
        const GroupDef* absorber = nullptr;
        double absorber_coverage = 0.0;
        int covering = 0;
        for (const auto& retained_id : diff.retained) {
            auto retained_members = member_names(*curr_map.at(retained_id));
            std::vector<std::string> shared;
            std::set_intersection(members.begin(), members.end(), retained_members.begin(),
                                  retained_members.end(), std::back_inserter(shared));
            double coverage =
                static_cast<double>(shared.size()) / static_cast<double>(members.size());
            if (coverage >= thresholds.coverage) {
                ++covering;
                absorber = curr_map.at(retained_id);
                absorber_coverage = coverage;
            }
        }
        if (covering != 1) continue;  // ambiguous absorbers suggest nothing
        ChangeRecord record;
        record.pattern = ChangePattern::ReplaceFeature;
        record.involved_old = {removed.id};
        record.involved_new = {absorber->id};
        record.confidence = absorber_coverage;
        record.evidence = "members of removed '" + removed.id + "' absorbed by retained '" +
                          absorber->id + "' (coverage " +
                          detail::format_double(absorber_coverage) + ")";
        candidates.push_back({std::move(record), pattern_priority(ChangePattern::ReplaceFeature)});
    }

    // Greedy assignment, best candidate first; every group id is consumed by
    // at most one record.
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const Candidate& a, const Candidate& b) {
                         if (a.record.confidence != b.record.confidence)
                             return a.record.confidence > b.record.confidence;
                         if (a.priority != b.priority) return a.priority < b.priority;
                         if (a.record.involved_old != b.record.involved_old)
                             return a.record.involved_old < b.record.involved_old;
                         return a.record.involved_new < b.record.involved_new;
                     });

    std::vector<ChangeRecord> records;
    std::set<std::string> used_old, used_new;
    auto available = [&](const ChangeRecord& record) {
        for (const auto& id : record.involved_old)
            if (used_old.count(id)) return false;
        for (const auto& id : record.involved_new)
            if (used_new.count(id)) return false;
        return true;
    };
    for (auto& candidate : candidates) {
        if (!available(candidate.record)) continue;
        for (const auto& id : candidate.record.involved_old) used_old.insert(id);
        for (const auto& id : candidate.record.involved_new) used_new.insert(id);
        records.push_back(std::move(candidate.record));
    }

    // leftovers: plain feature additions / removals
    for (const auto& added : diff.added) {
        if (used_new.count(added.id)) continue;
        double best = 0.0;
        for (const auto& removed : diff.removed)
            best = std::max(best, weighted_overlap(removed, added));
        ChangeRecord record;
        record.pattern = ChangePattern::AddFeature;
        record.involved_new = {added.id};
        record.confidence = 1.0 - best;
        record.evidence = diff.removed.empty()
                              ? "no removed group to pair with '" + added.id + "'"
                              : "closest removed group overlaps '" + added.id + "' by " +
                                    detail::format_double(best);
        records.push_back(std::move(record));
    }
    for (const auto& removed : diff.removed) {
        if (used_old.count(removed.id)) continue;
        double best = 0.0;
        for (const auto& added : diff.added)
            best = std::max(best, weighted_overlap(removed, added));
        ChangeRecord record;
        record.pattern = ChangePattern::RemoveFeature;
        record.involved_old = {removed.id};
        record.confidence = 1.0 - best;
        record.evidence = diff.added.empty()
                              ? "no added group to pair with '" + removed.id + "'"
                              : "closest added group overlaps '" + removed.id + "' by " +
                                    detail::format_double(best);
        records.push_back(std::move(record));
    }
    return records;
}

}  // namespace p2g
