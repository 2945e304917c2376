#include "p2g/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <nlohmann/json.hpp>
#include <optional>
#include <ostream>
#include <sstream>

#include "p2g/depgraph.hpp"
#include "p2g/errors.hpp"
#include "p2g/evolution.hpp"
#include "p2g/gvalue.hpp"
#include "p2g/ingest.hpp"
#include "p2g/textvec.hpp"
#include "p2g/topics.hpp"
#include "p2g/trends.hpp"
#include "p2g/types.hpp"

namespace p2g::cli {

using ordered_json = nlohmann::ordered_json;

namespace {

enum class LogLevel { Off = 0, Warn = 1, Info = 2 };

LogLevel log_level_from_env() {
    const char* env = std::getenv("P2G_LOG");
    if (!env) return LogLevel::Warn;
    std::string value(env);
    if (value == "off") return LogLevel::Off;
    if (value == "info") return LogLevel::Info;
    return LogLevel::Warn;
}

struct Logger {
    std::ostream& err;
    LogLevel level = log_level_from_env();

    void warn(const std::string& message) const {
        if (level >= LogLevel::Warn) err << "warning: " << message << "\n";
    }
    void info(const std::string& message) const {
        if (level >= LogLevel::Info) err << "info: " << message << "\n";
    }
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::io_error, "cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void emit(const std::string& payload, const std::string& output_path, std::ostream& out) {
    if (output_path.empty()) {
        out << payload;
        return;
    }
    std::ofstream file(output_path, std::ios::binary);
    if (!file) throw Error(Errc::io_error, "cannot write '" + output_path + "'");
    file << payload;
    if (!file) throw Error(Errc::io_error, "write failure on '" + output_path + "'");
}

ordered_json report_json(const GValueReport& report) {
    auto opt = [](const std::optional<double>& v) {
        return v ? ordered_json(*v) : ordered_json(nullptr);
    };
    ordered_json j;
    j["group_id"] = report.group_id;
    j["com"] = report.com;
    j["rel"] = report.rel;
    j["ndif"] = opt(report.ndif);
    j["ddif"] = opt(report.ddif);
    j["pdif"] = opt(report.pdif);
    j["dif"] = opt(report.dif);
    j["dist"] = report.dist;
    j["gvalue"] = report.gvalue;
    j["flags"] = report.flags;
    return j;
}

ordered_json record_json(const ChangeRecord& record) {
    ordered_json j;
    j["pattern"] = to_string(record.pattern);
    j["involved_old"] = record.involved_old;
    j["involved_new"] = record.involved_new;
    j["confidence"] = record.confidence;
    j["evidence"] = record.evidence;
    return j;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

// --- subcommand payloads -------------------------------------------------

struct IngestArgs {
    std::string comps_path, primary_path, dist, version, output;
};

int run_ingest(const IngestArgs& args, const Logger& log) {
    auto comps = parse_comps(read_file(args.comps_path));
    auto primary = parse_primary(read_file(args.primary_path));
    for (const auto& w : comps.warnings) log.warn(w);
    for (const auto& w : primary.warnings) log.warn(w);

    Snapshot snapshot;
    snapshot.distribution = args.dist;
    snapshot.version = args.version;
    snapshot.groups = std::move(comps.groups);
    snapshot.packages = std::move(primary.packages);
    validate(snapshot);
    save_snapshot_file(snapshot, args.output);
    log.info("wrote " + args.output + " (" + std::to_string(snapshot.groups.size()) +
             " groups, " + std::to_string(snapshot.packages.size()) + " packages)");
    return 0;
}

struct ScoreArgs {
    std::string snapshot_path, output, format;  // empty format: json, or csv by -o suffix
    double threshold = 0.2;
};

std::string effective_format(const std::string& format, const std::string& output) {
    if (!format.empty()) return format;
    return output.ends_with(".csv") ? "csv" : "json";
}

int run_score(const ScoreArgs& args, const Logger& log, std::ostream& out) {
    Snapshot snapshot = load_snapshot(args.snapshot_path);
    ScoreResult result = score_snapshot(snapshot, args.threshold);
    for (auto& report : result.reports)
        if (report.gvalue < args.threshold) report.flags.push_back("low_quality");
    log.info(std::to_string(result.low_quality.size()) + " of " +
             std::to_string(result.reports.size()) + " groups below threshold " +
             std::to_string(args.threshold));
    if (effective_format(args.format, args.output) == "csv") {
        emit(reports_to_csv(result.reports), args.output, out);
    } else {
        ordered_json j = ordered_json::array();
        for (const auto& report : result.reports) j.push_back(report_json(report));
        emit(dump(j), args.output, out);
    }
    return 0;
}

struct DiffArgs {
    std::string prev_path, curr_path, output;
    PatternThresholds thresholds;
};

int run_diff(const DiffArgs& args, std::ostream& out) {
    Snapshot prev = load_snapshot(args.prev_path);
    Snapshot curr = load_snapshot(args.curr_path);
    GroupDiff diff = diff_groups(prev, curr);
    auto patterns = suggest_patterns(prev, curr, args.thresholds);

    ordered_json j;
    j["prev_version"] = prev.version;
    j["curr_version"] = curr.version;
    auto ids = [](const std::vector<GroupDef>& groups) {
        std::vector<std::string> out;
        out.reserve(groups.size());
        for (const auto& g : groups) out.push_back(g.id);
        return out;
    };
    j["added"] = ids(diff.added);
    j["removed"] = ids(diff.removed);
    j["retained"] = diff.retained;
    j["patterns"] = ordered_json::array();
    for (const auto& record : patterns) j["patterns"].push_back(record_json(record));
    emit(dump(j), args.output, out);
    return 0;
}

struct FlowsArgs {
    std::vector<std::string> snapshot_paths;
    std::string output, format = "json";
};

int run_flows(const FlowsArgs& args, std::ostream& out) {
    std::vector<Snapshot> snapshots;
    snapshots.reserve(args.snapshot_paths.size());
    for (const auto& path : args.snapshot_paths) snapshots.push_back(load_snapshot(path));
    std::vector<FlowReport> reports;
    for (std::size_t i = 0; i + 1 < snapshots.size(); ++i)
        reports.push_back(classify_flows(snapshots[i], snapshots[i + 1]));
    FlowBreakdown breakdown = aggregate_flows(reports);

    if (args.format == "csv") {
        std::ostringstream csv;
        csv << "prev_version,curr_version,s1,s2,o1,o2\n";
        for (const auto& r : reports)
            csv << r.prev_version << ',' << r.curr_version << ',' << r.s1 << ',' << r.s2 << ','
                << r.o1 << ',' << r.o2 << '\n';
        emit(csv.str(), args.output, out);
        return 0;
    }
    ordered_json j;
    j["pairs"] = ordered_json::array();
    for (const auto& r : reports) {
        ordered_json pair;
        pair["prev_version"] = r.prev_version;
        pair["curr_version"] = r.curr_version;
        pair["s1"] = r.s1;
        pair["s2"] = r.s2;
        pair["o1"] = r.o1;
        pair["o2"] = r.o2;
        pair["ap"] = r.ap;
        pair["rp"] = r.rp;
        j["pairs"].push_back(std::move(pair));
    }
    ordered_json agg;
    agg["s1"] = breakdown.s1;
    agg["s2"] = breakdown.s2;
    agg["o1"] = breakdown.o1;
    agg["o2"] = breakdown.o2;
    agg["total"] = breakdown.total;
    agg["s1_pct"] = breakdown.s1_pct;
    agg["s2_pct"] = breakdown.s2_pct;
    agg["o1_pct"] = breakdown.o1_pct;
    agg["o2_pct"] = breakdown.o2_pct;
    agg["zero_total"] = breakdown.zero_total;
    j["aggregate"] = std::move(agg);
    emit(dump(j), args.output, out);
    return 0;
}

struct TrendsArgs {
    std::vector<std::string> snapshot_paths;
    std::string popularity_path, output, format = "json";
};

std::unordered_map<std::string, double> read_popularity_csv(const std::string& path) {
    std::istringstream in(read_file(path));
    std::unordered_map<std::string, double> stars;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (first && line == "name,stars") {
            first = false;
            continue;
        }
        first = false;
        auto comma = line.find(',');
        if (comma == std::string::npos)
            throw Error(Errc::schema_violation, "popularity CSV line '" + line + "'");
        std::string name = line.substr(0, comma);
        try {
            stars[name] = std::stod(line.substr(comma + 1));
        } catch (const std::exception&) {
            throw Error(Errc::schema_violation, "bad star count in line '" + line + "'");
        }
    }
    return stars;
}

int run_trends(const TrendsArgs& args, std::ostream& out) {
    std::vector<Snapshot> snapshots;
    snapshots.reserve(args.snapshot_paths.size());
    for (const auto& path : args.snapshot_paths) snapshots.push_back(load_snapshot(path));
    auto points = trend_series(snapshots);

    std::optional<SpearmanResult> correlation;
    if (!args.popularity_path.empty()) {
        if (args.format == "csv")
            throw Error(Errc::usage_error, "--popularity output requires json format");
        auto stars = read_popularity_csv(args.popularity_path);
        std::vector<double> ratios, star_counts;
        for (std::size_t i = 0; i < snapshots.size(); ++i) {
            auto it = stars.find(snapshots[i].distribution);
            if (it == stars.end())
                throw Error(Errc::not_found, "no star count for distribution '" +
                                                 snapshots[i].distribution + "'");
            ratios.push_back(points[i].ratio);
            star_counts.push_back(it->second);
        }
        correlation = spearman(ratios, star_counts);
    }

    if (args.format == "csv") {
        emit(trend_to_csv(points), args.output, out);
        return 0;
    }
    ordered_json j;
    j["points"] = ordered_json::array();
    for (const auto& p : points) {
        ordered_json point;
        point["version"] = p.version;
        point["groups"] = p.group_count;
        point["p2g_packages"] = p.p2g_package_count;
        point["total_packages"] = p.total_package_count;
        point["ratio"] = p.ratio;
        j["points"].push_back(std::move(point));
    }
    if (correlation) {
        j["popularity_correlation"] = {{"rho", correlation->rho},
                                       {"p_value", correlation->p_value}};
    }
    emit(dump(j), args.output, out);
    return 0;
}

struct TopicsArgs {
    std::string snapshot_path, output;
    int k_min = 1, k_max = 10, iterations = 1000, top_n = 10;
    std::uint64_t seed = 0;
    double beta = 0.01;
    std::optional<double> alpha;
};

int run_topics(const TopicsArgs& args, const Logger& log, std::ostream& out) {
    Snapshot snapshot = load_snapshot(args.snapshot_path);
    std::vector<TokenList> docs;
    docs.reserve(snapshot.groups.size());
    for (const auto& group : snapshot.groups) docs.push_back(tokenize(group.description));

    LdaSettings settings;
    settings.alpha = args.alpha;
    settings.beta = args.beta;
    settings.iterations = args.iterations;
    settings.seed = args.seed;
    TopicScan scan = select_topic_count(docs, args.k_min, args.k_max, settings, args.top_n);
    log.info("best k = " + std::to_string(scan.best_k));

    LdaSettings best_settings = settings;
    best_settings.seed = settings.seed + static_cast<std::uint64_t>(scan.best_k);
    TopicModel model = fit_lda(docs, scan.best_k, best_settings);

    ordered_json j;
    j["best_k"] = scan.best_k;
    j["scores"] = ordered_json::array();
    for (const auto& [k, score] : scan.scores)
        j["scores"].push_back({{"k", k}, {"coherence", score}});
    j["topics"] = ordered_json::array();
    for (int t = 0; t < model.topic_count; ++t) {
        ordered_json topic;
        topic["topic"] = t;
        topic["top_words"] = ordered_json::array();
        for (const auto& [word, probability] : top_topic_words(model, t, args.top_n))
            topic["top_words"].push_back({{"word", word}, {"probability", probability}});
        j["topics"].push_back(std::move(topic));
    }
    emit(dump(j), args.output, out);
    return 0;
}

struct KeywordsArgs {
    std::string snapshot_path, output;
    int top = 10;
};

int run_keywords(const KeywordsArgs& args, std::ostream& out) {
    Snapshot snapshot = load_snapshot(args.snapshot_path);
    std::set<std::string> grouped_names;
    for (const auto& group : snapshot.groups)
        for (const auto& entry : group.packages) grouped_names.insert(entry.name);

    std::vector<TokenList> grouped, ungrouped;
    for (const auto& pkg : snapshot.packages) {
        auto tokens = tokenize(pkg.description);
        (grouped_names.count(pkg.name) ? grouped : ungrouped).push_back(std::move(tokens));
    }
    KeywordContrast contrast = keyword_contrast(grouped, ungrouped, args.top);

    auto ranked_json = [](const std::vector<std::pair<std::string, double>>& ranked) {
        ordered_json arr = ordered_json::array();
        for (const auto& [word, score] : ranked)
            arr.push_back({{"word", word}, {"score", score}});
        return arr;
    };
    ordered_json j;
    j["grouped"] = ranked_json(contrast.grouped_top);
    j["ungrouped"] = ranked_json(contrast.ungrouped_top);
    j["grouped_only"] = contrast.grouped_only;
    j["ungrouped_only"] = contrast.ungrouped_only;
    emit(dump(j), args.output, out);
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Logger log{err};
    CLI::App app{"Repository group metadata analytics"};
    app.name("p2g");
    app.require_subcommand(1);

    IngestArgs ingest_args;
    auto* ingest = app.add_subcommand("ingest", "Parse comps/primary XML into a snapshot");
    ingest->add_option("--comps", ingest_args.comps_path, "comps XML file")->required();
    ingest->add_option("--primary", ingest_args.primary_path, "primary metadata XML file")
        ->required();
    ingest->add_option("--dist", ingest_args.dist, "distribution name")->required();
    ingest->add_option("--version", ingest_args.version, "distribution version")->required();
    ingest->add_option("-o,--output", ingest_args.output, "snapshot JSON output path")
        ->required();

    ScoreArgs score_args;
    auto* score = app.add_subcommand("score", "Compute per-group quality reports");
    score->add_option("snapshot", score_args.snapshot_path, "snapshot JSON")->required();
    score->add_option("--threshold", score_args.threshold, "low-quality cutoff")
        ->check(CLI::Range(0.0, 1.0));
    score->add_option("--format", score_args.format)->check(CLI::IsMember({"json", "csv"}));
    score->add_option("-o,--output", score_args.output, "write here instead of stdout");

    DiffArgs diff_args;
    auto* diff = app.add_subcommand("diff", "Diff two snapshots and suggest change patterns");
    diff->add_option("prev", diff_args.prev_path)->required();
    diff->add_option("curr", diff_args.curr_path)->required();
    diff->add_option("--rename-threshold", diff_args.thresholds.rename_overlap)
        ->check(CLI::Range(0.0, 1.0));
    diff->add_option("--coverage-threshold", diff_args.thresholds.coverage)
        ->check(CLI::Range(0.0, 1.0));
    diff->add_option("-o,--output", diff_args.output);

    FlowsArgs flows_args;
    auto* flows = app.add_subcommand("flows", "Classify package flows across versions");
    flows->add_option("snapshots", flows_args.snapshot_paths)->expected(2, -1);
    flows->add_option("--format", flows_args.format)->check(CLI::IsMember({"json", "csv"}));
    flows->add_option("-o,--output", flows_args.output);

    TrendsArgs trends_args;
    auto* trends = app.add_subcommand("trends", "Per-version adoption series");
    trends->add_option("snapshots", trends_args.snapshot_paths)->expected(1, -1);
    trends->add_option("--popularity", trends_args.popularity_path, "CSV of name,stars");
    trends->add_option("--format", trends_args.format)->check(CLI::IsMember({"json", "csv"}));
    trends->add_option("-o,--output", trends_args.output);

    TopicsArgs topics_args;
    auto* topics = app.add_subcommand("topics", "LDA topics over group descriptions");
    topics->add_option("snapshot", topics_args.snapshot_path)->required();
    topics->add_option("--kmin", topics_args.k_min)->check(CLI::PositiveNumber);
    topics->add_option("--kmax", topics_args.k_max)->check(CLI::PositiveNumber);
    topics->add_option("--seed", topics_args.seed);
    topics->add_option("--iterations", topics_args.iterations)->check(CLI::PositiveNumber);
    topics->add_option("--alpha", [&topics_args](const CLI::results_t& values) {
        double parsed;
        if (!CLI::detail::lexical_cast(values.at(0), parsed)) return false;
        topics_args.alpha = parsed;
        return true;
    },
    "Dirichlet document prior (default 50/k)");
    topics->add_option("--beta", topics_args.beta);
    topics->add_option("--topn", topics_args.top_n)->check(CLI::PositiveNumber);
    topics->add_option("-o,--output", topics_args.output);

    KeywordsArgs keywords_args;
    auto* keywords =
        app.add_subcommand("keywords", "Grouped vs ungrouped package-description keywords");
    keywords->add_option("snapshot", keywords_args.snapshot_path)->required();
    keywords->add_option("--top", keywords_args.top)->check(CLI::PositiveNumber);
    keywords->add_option("-o,--output", keywords_args.output);

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("p2g");
    for (const auto& arg : args) argv.push_back(arg.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return 1;
    }

    try {
        if (*ingest) return run_ingest(ingest_args, log);
        if (*score) return run_score(score_args, log, out);
        if (*diff) return run_diff(diff_args, out);
        if (*flows) return run_flows(flows_args, out);
        if (*trends) return run_trends(trends_args, out);
        if (*topics) return run_topics(topics_args, log, out);
        if (*keywords) return run_keywords(keywords_args, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return e.code() == Errc::usage_error ? 1 : 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

}  // namespace p2g::cli
