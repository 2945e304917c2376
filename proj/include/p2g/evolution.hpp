#pragma once

#include <span>
#include <string>
#include <vector>

#include "p2g/types.hpp"

namespace p2g {

struct GroupDiff {
    std::vector<GroupDef> added;    // present only in the newer snapshot, ordered by id
    std::vector<GroupDef> removed;  // present only in the older, ordered by id
    std::vector<std::string> retained;  // ids in both, sorted
};

GroupDiff diff_groups(const Snapshot& prev, const Snapshot& curr);

/// Package-flow classification between consecutive versions.
/// ap: names grouped in curr but not in prev ("grouped" = member of at
/// least one group's package list). rp: the reverse. s1/s2 partition ap by
/// presence in prev's package universe, o1/o2 partition rp by presence in
/// curr's universe.
struct FlowReport {
    std::string prev_version;
    std::string curr_version;
    std::vector<std::string> ap;  // sorted
    std::vector<std::string> rp;  // sorted
    long s1 = 0;  // newly grouped, already in prev universe
    long s2 = 0;  // newly grouped, new to the distribution
    long o1 = 0;  // de-grouped, still in curr universe
    long o2 = 0;  // de-grouped and gone from the distribution
};

FlowReport classify_flows(const Snapshot& prev, const Snapshot& curr);

struct FlowBreakdown {
    long s1 = 0, s2 = 0, o1 = 0, o2 = 0;
    long total = 0;
    double s1_pct = 0.0, s2_pct = 0.0, o1_pct = 0.0, o2_pct = 0.0;
    bool zero_total = false;  // all counts zero; percentages reported as 0
};

/// Sums the reports; percentages are of the grand total and sum to 100
/// within 1e-9 unless zero_total. Throws Error(empty_input).
FlowBreakdown aggregate_flows(std::span<const FlowReport> reports);

enum class ChangePattern {
    Split,
    Merge,
    Rename,
    AddFeature,
    RemoveFeature,
    ReplaceFeature,
};

const char* to_string(ChangePattern pattern);

struct ChangeRecord {
    ChangePattern pattern;
    std::vector<std::string> involved_old;
    std::vector<std::string> involved_new;
    double confidence = 0.0;
    std::string evidence;
};

struct PatternThresholds {
    double rename_overlap = 0.7;  // weighted-Jaccard floor for rename
    double coverage = 0.6;        // member-coverage floor for split/merge/replace
};

/// Heuristic change-pattern suggestions for one version pair. Candidate
/// records are ranked by confidence and assigned greedily so that every
/// group id appears in at most one record; leftovers become add_feature /
/// remove_feature. Output is deterministic for identical inputs. Records
/// are suggestions with evidence, not ground truth.
std::vector<ChangeRecord> suggest_patterns(const Snapshot& prev, const Snapshot& curr,
                                           const PatternThresholds& thresholds = {});

}  // namespace p2g
