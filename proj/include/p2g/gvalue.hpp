#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "p2g/depgraph.hpp"
#include "p2g/textvec.hpp"
#include "p2g/types.hpp"

namespace p2g {

/// Membership weight: mandatory 0.8, default 0.5, optional 0.2.
double package_weight(Requirement requirement);

/// Group-size statistics over one snapshot. stddev is the sample standard
/// deviation (n-1 denominator, 0 when n <= 1).
struct DistributionStats {
    double mean = 0.0;
    double stddev = 0.0;
    double lower = 0.0;  // mean - 2*stddev
    double upper = 0.0;  // mean + 2*stddev
};

DistributionStats group_size_stats(const Snapshot& snapshot);

/// 1 iff the group's package count lies in [mean - 2*stddev, mean + 2*stddev]
/// (inclusive at both endpoints), else 0.
int distribution_value(const GroupDef& group, const DistributionStats& stats);

struct CompactnessResult {
    double value = 0.0;
    bool singleton = false;  // set when the group has fewer than two packages
};

/// Mean over ordered package pairs (j != k) of max(sim, dep), denominator
/// m*(m-1). Packages absent from the snapshot universe contribute sim = 0
/// and dep = 0 to their pairs. Groups with m <= 1 score 0 with the
/// singleton flag set. Throws Error(unknown_group).
CompactnessResult compactness(const GroupDef& group, const DependencyGraph& graph,
                              const EmbeddingBackend& embedder, const Snapshot& snapshot);

/// Mean cosine similarity between the group-description vector and each
/// member package's description vector; absent packages contribute 0.
/// Throws Error(unknown_group) and Error(empty_group) when m == 0.
double relevance(const GroupDef& group, const EmbeddingBackend& embedder,
                 const Snapshot& snapshot);

/// Mean over the other n-1 groups of ED(name_i, name_j)/max(len_i, len_j),
/// measured in Unicode scalar values; a pair of empty names scores 0.
/// Throws Error(singleton_corpus) when fewer than two groups exist.
double name_differentiation(const GroupDef& group, std::span<const GroupDef> all);

/// Mean over others of 1 - (cos(desc_i, desc_j) + 1)/2.
double desc_differentiation(const GroupDef& group, std::span<const GroupDef> all,
                            const EmbeddingBackend& embedder);

/// Weighted-Jaccard distance of package lists averaged over the other
/// groups: 1 - sum_min(intersection)/sum_max(union); a package present in
/// only one list contributes its own weight to the denominator. Two empty
/// lists score 0.
double pkglist_differentiation(const GroupDef& group, std::span<const GroupDef> all);

/// (ndif + ddif + pdif) / 3.
double differentiation(const GroupDef& group, std::span<const GroupDef> all,
                       const EmbeddingBackend& embedder);

/// Per-group quality report. The differentiation fields are absent when the
/// snapshot has a single group; gvalue then averages the three remaining
/// components. flags uses a fixed vocabulary: "singleton", "empty_group",
/// "dif_not_computable" (the CLI may append "low_quality").
struct GValueReport {
    std::string group_id;
    double com = 0.0;
    double rel = 0.0;
    std::optional<double> ndif;
    std::optional<double> ddif;
    std::optional<double> pdif;
    std::optional<double> dif;
    int dist = 0;
    double gvalue = 0.0;
    std::vector<std::string> flags;
};

GValueReport score_group(const GroupDef& group, const Snapshot& snapshot,
                         const DependencyGraph& graph, const EmbeddingBackend& embedder,
                         const DistributionStats& stats);

struct ScoreResult {
    std::vector<GValueReport> reports;      // sorted by group_id
    std::vector<GValueReport> low_quality;  // gvalue < threshold, ascending by gvalue
};

/// Scores every group of the snapshot with the shipped TF-IDF backend
/// (corpus: group descriptions first, then package descriptions).
ScoreResult score_snapshot(const Snapshot& snapshot, double threshold = 0.2);

/// CSV with header group_id,com,rel,ndif,ddif,pdif,dif,dist,gvalue,flags;
/// absent values are empty cells, flags are joined with ';'.
std::string reports_to_csv(std::span<const GValueReport> reports);

}  // namespace p2g
