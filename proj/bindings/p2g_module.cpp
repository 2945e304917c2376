#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "p2g/depgraph.hpp"
#include "p2g/errors.hpp"
#include "p2g/evolution.hpp"
#include "p2g/gvalue.hpp"
#include "p2g/ingest.hpp"
#include "p2g/textvec.hpp"
#include "p2g/topics.hpp"
#include "p2g/trends.hpp"
#include "p2g/types.hpp"

namespace py = pybind11;
using namespace p2g;

PYBIND11_MODULE(_p2g, m) {
    m.doc() = "Package-to-group repository analytics: snapshot ingest, GValue "
              "scoring, evolution diffing, trends, topics and keywords";

    py::register_exception<Error>(m, "P2GError");

    py::enum_<Requirement>(m, "Requirement")
        .value("MANDATORY", Requirement::Mandatory)
        .value("DEFAULT", Requirement::Default)
        .value("OPTIONAL", Requirement::Optional);

    py::class_<PackageEntry>(m, "PackageEntry")
        .def(py::init<std::string, Requirement>(), py::arg("name"),
             py::arg("requirement") = Requirement::Optional)
        .def_readwrite("name", &PackageEntry::name)
        .def_readwrite("requirement", &PackageEntry::requirement)
        .def("__repr__", [](const PackageEntry& e) {
            return "PackageEntry(" + e.name + ", " + to_string(e.requirement) + ")";
        });

    py::class_<GroupDef>(m, "GroupDef")
        .def(py::init<>())
        .def_readwrite("id", &GroupDef::id)
        .def_readwrite("name", &GroupDef::name)
        .def_readwrite("description", &GroupDef::description)
        .def_readwrite("packages", &GroupDef::packages);

    py::class_<PackageMeta>(m, "PackageMeta")
        .def(py::init<>())
        .def_readwrite("name", &PackageMeta::name)
        .def_readwrite("description", &PackageMeta::description)
        .def_readwrite("provides", &PackageMeta::provides)
        .def_readwrite("requires", &PackageMeta::requires_);

    py::class_<Snapshot>(m, "Snapshot")
        .def(py::init<>())
        .def_readwrite("distribution", &Snapshot::distribution)
        .def_readwrite("version", &Snapshot::version)
        .def_readwrite("groups", &Snapshot::groups)
        .def_readwrite("packages", &Snapshot::packages);

    m.def("load_snapshot",
          [](const std::string& path) { return load_snapshot(std::filesystem::path(path)); },
          py::arg("path"));
    m.def("save_snapshot", &save_snapshot, py::arg("snapshot"),
          "Canonical snapshot JSON as a string");
    m.def("parse_snapshot_json", [](const std::string& s) { return parse_snapshot_json(s); });
    m.def("parse_comps", [](const std::string& xml) {
        auto result = parse_comps(xml);
        return py::make_tuple(result.groups, result.warnings);
    });
    m.def("parse_primary", [](const std::string& xml) {
        auto result = parse_primary(xml);
        return py::make_tuple(result.packages, result.warnings);
    });
    m.def("validate", &validate, py::arg("snapshot"));

    py::class_<DependencyGraph>(m, "DependencyGraph")
        .def_readonly("nodes", &DependencyGraph::nodes)
        .def_readonly("unresolved", &DependencyGraph::unresolved)
        .def("edge_count", &DependencyGraph::edge_count)
        .def("shortest_hops",
             [](const DependencyGraph& g, const std::string& a, const std::string& b) {
                 return shortest_hops(g, a, b);
             })
        .def("dependency_degree",
             [](const DependencyGraph& g, const std::string& a, const std::string& b) {
                 return dependency_degree(g, a, b);
             });
    m.def("build_graph", &build_graph, py::arg("snapshot"));

    m.def("tokenize", [](const std::string& text) { return tokenize(text); }, py::arg("text"));
    m.def("edit_distance",
          [](const std::string& a, const std::string& b) { return edit_distance(a, b); });

    py::class_<GValueReport>(m, "GValueReport")
        .def_readonly("group_id", &GValueReport::group_id)
        .def_readonly("com", &GValueReport::com)
        .def_readonly("rel", &GValueReport::rel)
        .def_readonly("ndif", &GValueReport::ndif)
        .def_readonly("ddif", &GValueReport::ddif)
        .def_readonly("pdif", &GValueReport::pdif)
        .def_readonly("dif", &GValueReport::dif)
        .def_readonly("dist", &GValueReport::dist)
        .def_readonly("gvalue", &GValueReport::gvalue)
        .def_readonly("flags", &GValueReport::flags)
        .def("__repr__", [](const GValueReport& r) {
            return "GValueReport(" + r.group_id + ", gvalue=" + std::to_string(r.gvalue) + ")";
        });

    m.def("package_weight", &package_weight, py::arg("requirement"));
    m.def(
        "score_snapshot",
        [](const Snapshot& s, double threshold) {
            auto result = score_snapshot(s, threshold);
            return py::make_tuple(result.reports, result.low_quality);
        },
        py::arg("snapshot"), py::arg("threshold") = 0.2,
        "Returns (reports sorted by group id, low-quality subset)");
    m.def("reports_to_csv", [](const std::vector<GValueReport>& reports) {
        return reports_to_csv(reports);
    });

    py::class_<GroupDiff>(m, "GroupDiff")
        .def_readonly("added", &GroupDiff::added)
        .def_readonly("removed", &GroupDiff::removed)
        .def_readonly("retained", &GroupDiff::retained);
    m.def("diff_groups", &diff_groups, py::arg("prev"), py::arg("curr"));

    py::class_<FlowReport>(m, "FlowReport")
        .def_readonly("prev_version", &FlowReport::prev_version)
        .def_readonly("curr_version", &FlowReport::curr_version)
        .def_readonly("ap", &FlowReport::ap)
        .def_readonly("rp", &FlowReport::rp)
        .def_readonly("s1", &FlowReport::s1)
        .def_readonly("s2", &FlowReport::s2)
        .def_readonly("o1", &FlowReport::o1)
        .def_readonly("o2", &FlowReport::o2);
    m.def("classify_flows", &classify_flows, py::arg("prev"), py::arg("curr"));

    py::class_<FlowBreakdown>(m, "FlowBreakdown")
        .def_readonly("s1", &FlowBreakdown::s1)
        .def_readonly("s2", &FlowBreakdown::s2)
        .def_readonly("o1", &FlowBreakdown::o1)
        .def_readonly("o2", &FlowBreakdown::o2)
        .def_readonly("total", &FlowBreakdown::total)
        .def_readonly("s1_pct", &FlowBreakdown::s1_pct)
        .def_readonly("s2_pct", &FlowBreakdown::s2_pct)
        .def_readonly("o1_pct", &FlowBreakdown::o1_pct)
        .def_readonly("o2_pct", &FlowBreakdown::o2_pct)
        .def_readonly("zero_total", &FlowBreakdown::zero_total);
    m.def("aggregate_flows", [](const std::vector<FlowReport>& reports) {
        return aggregate_flows(reports);
    });

    py::enum_<ChangePattern>(m, "ChangePattern")
        .value("SPLIT", ChangePattern::Split)
        .value("MERGE", ChangePattern::Merge)
        .value("RENAME", ChangePattern::Rename)
        .value("ADD_FEATURE", ChangePattern::AddFeature)
        .value("REMOVE_FEATURE", ChangePattern::RemoveFeature)
        .value("REPLACE_FEATURE", ChangePattern::ReplaceFeature);

    py::class_<ChangeRecord>(m, "ChangeRecord")
        .def_readonly("pattern", &ChangeRecord::pattern)
        .def_readonly("involved_old", &ChangeRecord::involved_old)
        .def_readonly("involved_new", &ChangeRecord::involved_new)
        .def_readonly("confidence", &ChangeRecord::confidence)
        .def_readonly("evidence", &ChangeRecord::evidence);

    py::class_<PatternThresholds>(m, "PatternThresholds")
        .def(py::init<>())
        .def_readwrite("rename_overlap", &PatternThresholds::rename_overlap)
        .def_readwrite("coverage", &PatternThresholds::coverage);
    m.def("suggest_patterns", &suggest_patterns, py::arg("prev"), py::arg("curr"),
          py::arg("thresholds") = PatternThresholds{});

    py::class_<TrendPoint>(m, "TrendPoint")
        .def_readonly("version", &TrendPoint::version)
        .def_readonly("group_count", &TrendPoint::group_count)
        .def_readonly("p2g_package_count", &TrendPoint::p2g_package_count)
        .def_readonly("total_package_count", &TrendPoint::total_package_count)
        .def_readonly("ratio", &TrendPoint::ratio);
    m.def("trend_series", [](const std::vector<Snapshot>& snapshots) {
        return trend_series(snapshots);
    });

    m.def(
        "spearman",
        [](const std::vector<double>& xs, const std::vector<double>& ys) {
            auto result = spearman(xs, ys);
            return py::make_tuple(result.rho, result.p_value);
        },
        py::arg("xs"), py::arg("ys"), "Returns (rho, two-sided p-value)");

    py::class_<TopicModel>(m, "TopicModel")
        .def_readonly("topic_count", &TopicModel::topic_count)
        .def_readonly("vocabulary", &TopicModel::vocabulary)
        .def_readonly("topic_word", &TopicModel::topic_word)
        .def_readonly("doc_topic", &TopicModel::doc_topic)
        .def_readonly("assignments", &TopicModel::assignments)
        .def_readonly("seed", &TopicModel::seed)
        .def_readonly("alpha", &TopicModel::alpha)
        .def_readonly("beta", &TopicModel::beta);
    m.def(
        "fit_lda",
        [](const std::vector<TokenList>& docs, int k, std::optional<double> alpha, double beta,
           int iterations, std::uint64_t seed) {
            LdaSettings settings{alpha, beta, iterations, seed};
            return fit_lda(docs, k, settings);
        },
        py::arg("docs"), py::arg("k"), py::arg("alpha") = std::nullopt,
        py::arg("beta") = 0.01, py::arg("iterations") = 1000, py::arg("seed") = 0);
    m.def(
        "coherence",
        [](const TopicModel& model, const std::vector<TokenList>& docs, int top_n) {
            return coherence(model, docs, top_n);
        },
        py::arg("model"), py::arg("docs"), py::arg("top_n") = 10);
    m.def(
        "select_topic_count",
        [](const std::vector<TokenList>& docs, int k_min, int k_max,
           std::optional<double> alpha, double beta, int iterations, std::uint64_t seed,
           int top_n) {
            LdaSettings settings{alpha, beta, iterations, seed};
            auto scan = select_topic_count(docs, k_min, k_max, settings, top_n);
            return py::make_tuple(scan.best_k, scan.scores);
        },
        py::arg("docs"), py::arg("k_min"), py::arg("k_max"), py::arg("alpha") = std::nullopt,
        py::arg("beta") = 0.01, py::arg("iterations") = 1000, py::arg("seed") = 0,
        py::arg("top_n") = 10, "Returns (best_k, [(k, coherence), ...])");
    m.def("top_topic_words", &top_topic_words, py::arg("model"), py::arg("topic"),
          py::arg("top_n") = 10);

    m.def(
        "keyword_contrast",
        [](const std::vector<TokenList>& grouped, const std::vector<TokenList>& ungrouped,
           int k) {
            auto contrast = keyword_contrast(grouped, ungrouped, k);
            py::dict d;
            d["grouped"] = contrast.grouped_top;
            d["ungrouped"] = contrast.ungrouped_top;
            d["grouped_only"] = contrast.grouped_only;
            d["ungrouped_only"] = contrast.ungrouped_only;
            return d;
        },
        py::arg("grouped_docs"), py::arg("ungrouped_docs"), py::arg("k") = 10);

#ifdef VERSION_INFO
    m.attr("__version__") = VERSION_INFO;
#else
    m.attr("__version__") = "dev";
#endif
}
