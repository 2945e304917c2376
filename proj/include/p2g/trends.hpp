#pragma once

#include <span>
#include <string>
#include <vector>

#include "p2g/types.hpp"

namespace p2g {

struct TrendPoint {
    std::string version;
    long group_count = 0;
    long p2g_package_count = 0;    // distinct grouped names present in the universe
    long total_package_count = 0;
    double ratio = 0.0;            // p2g / total, 0 when total == 0
};

/// One point per snapshot, input order preserved (callers order by version).
std::vector<TrendPoint> trend_series(std::span<const Snapshot> snapshots);

struct SpearmanResult {
    double rho = 0.0;
    double p_value = 1.0;
};

/// Spearman rank correlation with mid-rank tie handling. rho is the Pearson
/// correlation of the rank vectors; the two-sided p-value comes from exact
/// permutation enumeration for n <= 8 and the t approximation otherwise.
/// A zero-variance input yields rho = 0, p = 1.
/// Throws Error(length_mismatch) and Error(too_few_points) when n < 3.
SpearmanResult spearman(std::span<const double> xs, std::span<const double> ys);

/// Trend table as CSV: version,groups,p2g_packages,total_packages,ratio.
std::string trend_to_csv(std::span<const TrendPoint> points);

}  // namespace p2g
