#include "p2g/gvalue.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_map>

#include "num_format.hpp"
#include "p2g/errors.hpp"

namespace p2g {

namespace {

const GroupDef& find_group(const Snapshot& snapshot, const std::string& id) {
    for (const auto& group : snapshot.groups)
        if (group.id == id) return group;
    throw Error(Errc::unknown_group, "group '" + id + "' is not in the snapshot");
}

std::unordered_map<std::string, const PackageMeta*> package_map(const Snapshot& snapshot) {
    std::unordered_map<std::string, const PackageMeta*> map;
    map.reserve(snapshot.packages.size());
    for (const auto& pkg : snapshot.packages) map.emplace(pkg.name, &pkg);
    return map;
}

double weighted_jaccard_distance(const std::vector<PackageEntry>& a,
                                 const std::vector<PackageEntry>& b) {
    if (a.empty() && b.empty()) return 0.0;
    std::unordered_map<std::string, double> wa, wb;
    for (const auto& e : a) wa[e.name] = package_weight(e.requirement);
    for (const auto& e : b) wb[e.name] = package_weight(e.requirement);
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
    return 1.0 - numerator / denominator;
}

}  // namespace

double package_weight(Requirement requirement) {
    switch (requirement) {
        case Requirement::Mandatory: return 0.8;
        case Requirement::Default: return 0.5;
        case Requirement::Optional: return 0.2;
    }
    return 0.2;
}

DistributionStats group_size_stats(const Snapshot& snapshot) {
    DistributionStats stats;
    std::size_t n = snapshot.groups.size();
    if (n == 0) return stats;
    double sum = 0.0;
    for (const auto& group : snapshot.groups) sum += static_cast<double>(group.packages.size());
    stats.mean = sum / static_cast<double>(n);
    if (n >= 2) {
        double sq = 0.0;
        for (const auto& group : snapshot.groups) {
            double d = static_cast<double>(group.packages.size()) - stats.mean;
            sq += d * d;
        }
        stats.stddev = std::sqrt(sq / static_cast<double>(n - 1));
    }
    stats.lower = stats.mean - 2.0 * stats.stddev;
    stats.upper = stats.mean + 2.0 * stats.stddev;
    return stats;
}

int distribution_value(const GroupDef& group, const DistributionStats& stats) {
    double m = static_cast<double>(group.packages.size());
    return (m >= stats.lower && m <= stats.upper) ? 1 : 0;
}

CompactnessResult compactness(const GroupDef& group, const DependencyGraph& graph,
                              const EmbeddingBackend& embedder, const Snapshot& snapshot) {
    find_group(snapshot, group.id);
    std::size_t m = group.packages.size();
    if (m <= 1) return {0.0, true};

    auto pmap = package_map(snapshot);
    std::vector<bool> present(m, false);
    std::vector<SparseVector> vectors(m);
    for (std::size_t j = 0; j < m; ++j) {
        auto it = pmap.find(group.packages[j].name);
        if (it == pmap.end()) continue;  // absent: contributes sim = 0, dep = 0
        present[j] = true;
        vectors[j] = embedder.embed_text(it->second->description);
    }

    double total = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t k = 0; k < m; ++k) {
            if (j == k) continue;
            if (!present[j] || !present[k]) continue;
            double sim = cosine_similarity(vectors[j], vectors[k]);
            double dep =
                dependency_degree(graph, group.packages[j].name, group.packages[k].name);
            total += std::max(sim, dep);
        }
    }
    return {total / (static_cast<double>(m) * static_cast<double>(m - 1)), false};
}

double relevance(const GroupDef& group, const EmbeddingBackend& embedder,
                 const Snapshot& snapshot) {
    find_group(snapshot, group.id);
    std::size_t m = group.packages.size();
    if (m == 0) throw Error(Errc::empty_group, "group '" + group.id + "' has no packages");

    auto pmap = package_map(snapshot);
    SparseVector group_vec = embedder.embed_text(group.description);
    double total = 0.0;
    for (const auto& entry : group.packages) {
        auto it = pmap.find(entry.name);
        if (it == pmap.end()) continue;  // absent package: similarity 0
        total += cosine_similarity(group_vec, embedder.embed_text(it->second->description));
    }
    return total / static_cast<double>(m);
}

namespace {

// Applies fn to every group of `all` other than `group` (matched by id) and
// returns the mean. Throws SingletonCorpus when there is nothing to compare.
template <typename PairFn>
double mean_over_others(const GroupDef& group, std::span<const GroupDef> all, PairFn&& fn) {
    if (all.size() < 2)
        throw Error(Errc::singleton_corpus, "differentiation needs at least two groups");
    double total = 0.0;
    std::size_t others = 0;
    for (const auto& other : all) {
        if (other.id == group.id) continue;
        total += fn(other);
        ++others;
    }
    if (others != all.size() - 1)
        throw Error(Errc::unknown_group, "group '" + group.id + "' is not in the collection");
    return total / static_cast<double>(others);
}

}  // namespace

double name_differentiation(const GroupDef& group, std::span<const GroupDef> all) {
    std::size_t len_i = scalar_count(group.name);
    return mean_over_others(group, all, [&](const GroupDef& other) {
        std::size_t len_j = scalar_count(other.name);
        std::size_t longest = std::max(len_i, len_j);
        if (longest == 0) return 0.0;  // two empty names: no measurable difference
        return static_cast<double>(edit_distance(group.name, other.name)) /
               static_cast<double>(longest);
    });
}

double desc_differentiation(const GroupDef& group, std::span<const GroupDef> all,
                            const EmbeddingBackend& embedder) {
    SparseVector vec_i = embedder.embed_text(group.description);
    return mean_over_others(group, all, [&](const GroupDef& other) {
        double sim = cosine_similarity(vec_i, embedder.embed_text(other.description));
        return 1.0 - (sim + 1.0) / 2.0;
    });
}

double pkglist_differentiation(const GroupDef& group, std::span<const GroupDef> all) {
    return mean_over_others(group, all, [&](const GroupDef& other) {
        return weighted_jaccard_distance(group.packages, other.packages);
    });
}

double differentiation(const GroupDef& group, std::span<const GroupDef> all,
                       const EmbeddingBackend& embedder) {
    return (name_differentiation(group, all) + desc_differentiation(group, all, embedder) +
            pkglist_differentiation(group, all)) /
           3.0;
}

GValueReport score_group(const GroupDef& group, const Snapshot& snapshot,
                         const DependencyGraph& graph, const EmbeddingBackend& embedder,
                         const DistributionStats& stats) {
    GValueReport report;
    report.group_id = group.id;

    CompactnessResult com = compactness(group, graph, embedder, snapshot);
    report.com = com.value;
    if (com.singleton) report.flags.push_back("singleton");

    if (group.packages.empty()) {
        report.rel = 0.0;
        report.flags.push_back("empty_group");
    } else {
        report.rel = relevance(group, embedder, snapshot);
    }

    report.dist = distribution_value(group, stats);

    if (snapshot.groups.size() >= 2) {
        report.ndif = name_differentiation(group, snapshot.groups);
        report.ddif = desc_differentiation(group, snapshot.groups, embedder);
        report.pdif = pkglist_differentiation(group, snapshot.groups);
        report.dif = (*report.ndif + *report.ddif + *report.pdif) / 3.0;
        report.gvalue = (report.com + report.rel + *report.dif + report.dist) / 4.0;
    } else {
        report.flags.push_back("dif_not_computable");
        report.gvalue = (report.com + report.rel + report.dist) / 3.0;
    }
    return report;
}

ScoreResult score_snapshot(const Snapshot& snapshot, double threshold) {
    ScoreResult result;
    if (snapshot.groups.empty()) return result;

    std::vector<TokenList> corpus;
    corpus.reserve(snapshot.groups.size() + snapshot.packages.size());
    for (const auto& group : snapshot.groups) corpus.push_back(tokenize(group.description));
    for (const auto& pkg : snapshot.packages) corpus.push_back(tokenize(pkg.description));
    TfidfBackend embedder(build_index(corpus));

    DependencyGraph graph = build_graph(snapshot);
    DistributionStats stats = group_size_stats(snapshot);

    for (const auto& group : snapshot.groups)
        result.reports.push_back(score_group(group, snapshot, graph, embedder, stats));
    std::sort(result.reports.begin(), result.reports.end(),
              [](const GValueReport& a, const GValueReport& b) { return a.group_id < b.group_id; });

    for (const auto& report : result.reports)
        if (report.gvalue < threshold) result.low_quality.push_back(report);
    std::sort(result.low_quality.begin(), result.low_quality.end(),
              [](const GValueReport& a, const GValueReport& b) {
                  if (a.gvalue != b.gvalue) return a.gvalue < b.gvalue;
                  return a.group_id < b.group_id;
              });
    return result;
}

std::string reports_to_csv(std::span<const GValueReport> reports) {
    std::ostringstream out;
    out << "group_id,com,rel,ndif,ddif,pdif,dif,dist,gvalue,flags\n";
    auto opt = [](const std::optional<double>& v) {
        return v ? detail::format_double(*v) : std::string();
    };
    for (const auto& r : reports) {
        std::string flags;
        for (const auto& flag : r.flags) {
            if (!flags.empty()) flags += ';';
            flags += flag;
        }
        out << r.group_id << ',' << detail::format_double(r.com) << ','
            << detail::format_double(r.rel) << ',' << opt(r.ndif) << ',' << opt(r.ddif) << ','
            << opt(r.pdif) << ',' << opt(r.dif) << ',' << r.dist << ','
            << detail::format_double(r.gvalue) << ',' << flags << '\n';
    }
    return out.str();
}

}  // namespace p2g
