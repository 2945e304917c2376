#include "p2g/trends.hpp"

#include <algorithm>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_set>

#include "num_format.hpp"
#include "p2g/errors.hpp"

namespace p2g {

std::vector<TrendPoint> trend_series(std::span<const Snapshot> snapshots) {
    std::vector<TrendPoint> points;
    points.reserve(snapshots.size());
    for (const auto& snapshot : snapshots) {
        TrendPoint point;
        point.version = snapshot.version;
        point.group_count = static_cast<long>(snapshot.groups.size());
        point.total_package_count = static_cast<long>(snapshot.packages.size());
        std::unordered_set<std::string> universe;
        for (const auto& pkg : snapshot.packages) universe.insert(pkg.name);
        // Distinct grouped names; entries referencing packages outside the
        // universe don't count as adopters, which keeps ratio <= 1.
        std::set<std::string> grouped;
        for (const auto& group : snapshot.groups)
            for (const auto& entry : group.packages)
                if (universe.count(entry.name)) grouped.insert(entry.name);
        point.p2g_package_count = static_cast<long>(grouped.size());
        point.ratio = point.total_package_count > 0
                          ? static_cast<double>(point.p2g_package_count) /
                                static_cast<double>(point.total_package_count)
                          : 0.0;
        points.push_back(std::move(point));
    }
    return points;
}

namespace {

// Mid-ranks (1-based, ties averaged).
std::vector<double> midranks(std::span<const double> values) {
    std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
        double rank = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
        i = j + 1;
    }
    return ranks;
}

double pearson(std::span<const double> a, std::span<const double> b) {
    std::size_t n = a.size();
    double ma = std::accumulate(a.begin(), a.end(), 0.0) / static_cast<double>(n);
    double mb = std::accumulate(b.begin(), b.end(), 0.0) / static_cast<double>(n);
    double cov = 0.0, va = 0.0, vb = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double da = a[i] - ma, db = b[i] - mb;
        cov += da * db;
        va += da * da;
        vb += db * db;
    }
    if (va == 0.0 || vb == 0.0) return 0.0;
    return cov / std::sqrt(va * vb);
}

}  // namespace

SpearmanResult spearman(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size())
        throw Error(Errc::length_mismatch, "series lengths " + std::to_string(xs.size()) +
                                               " and " + std::to_string(ys.size()));
    std::size_t n = xs.size();
    if (n < 3) throw Error(Errc::too_few_points, "need at least 3 points, got " +
                                                     std::to_string(n));
    auto xr = midranks(xs);
    auto yr = midranks(ys);

    bool x_constant = std::all_of(xr.begin(), xr.end(), [&](double r) { return r == xr[0]; });
    bool y_constant = std::all_of(yr.begin(), yr.end(), [&](double r) { return r == yr[0]; });
    if (x_constant || y_constant) return {0.0, 1.0};

    double rho = std::clamp(pearson(xr, yr), -1.0, 1.0);

    double p_value;
    if (n <= 8) {
        // exact two-sided permutation test over all n! orderings of one side
        std::vector<double> permuted = yr;
        std::sort(permuted.begin(), permuted.end());
        long extreme = 0, total = 0;
        double cutoff = std::fabs(rho) - 1e-12;
        do {
            ++total;
            if (std::fabs(pearson(xr, permuted)) >= cutoff) ++extreme;
        } while (std::next_permutation(permuted.begin(), permuted.end()));
        p_value = static_cast<double>(extreme) / static_cast<double>(total);
    } else {
        double denom = 1.0 - rho * rho;
        if (denom <= 0.0) {
            p_value = 0.0;
        } else {
            double t = rho * std::sqrt(static_cast<double>(n - 2) / denom);
            boost::math::students_t_distribution<double> dist(static_cast<double>(n - 2));
            p_value = 2.0 * boost::math::cdf(boost::math::complement(dist, std::fabs(t)));
        }
    }
    return {rho, std::clamp(p_value, 0.0, 1.0)};
}

std::string trend_to_csv(std::span<const TrendPoint> points) {
    std::ostringstream out;
    out << "version,groups,p2g_packages,total_packages,ratio\n";
    for (const auto& point : points) {
        out << point.version << ',' << point.group_count << ',' << point.p2g_package_count
            << ',' << point.total_package_count << ',' << detail::format_double(point.ratio)
            << '\n';
    }
    return out.str();
}

}  // namespace p2g
