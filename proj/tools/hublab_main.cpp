// Command-line front end for the hub-labeling toolkit. Talks to the core
// only through the C API in hublab.h.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hublab.h"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerifyFail = 2;
constexpr int kExitIo = 3;

struct CliError {
    int code;
    std::string message;
};

[[noreturn]] void die(int code, const std::string& message) { throw CliError{code, message}; }

[[noreturn]] void die_status(hublab_status status) {
    const std::string msg = hublab_last_error();
    switch (status) {
        case HUBLAB_ERR_USAGE:
            die(kExitUsage, msg);
        case HUBLAB_ERR_PARSE:
        case HUBLAB_ERR_DOMAIN:
        case HUBLAB_ERR_IO:
            die(kExitIo, msg);
        default:
            die(kExitUsage, msg);
    }
}

void check(hublab_status status) {
    if (status != HUBLAB_OK) die_status(status);
}

std::string take_string(char* s) {
    std::string out(s);
    hublab_string_free(s);
    return out;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) die(kExitIo, "cannot open " + path + " for writing");
    f << content;
    if (!f) die(kExitIo, "failed writing " + path);
}

std::string hex64(uint64_t v) {
    char buf[19];
    std::snprintf(buf, sizeof(buf), "0x%016llx", static_cast<unsigned long long>(v));
    return buf;
}

// ---- shared graph + ranking options -----------------------------------

struct InputSpec {
    std::string path;
    std::string format = "gr";
    bool directed = false;
    bool unweighted = false;
    bool random_weights = false;
    std::string ranking = "degree";
    uint32_t samples = 16;
    uint64_t seed = 0;
};

void add_input_options(CLI::App* cmd, InputSpec& spec, bool required = true) {
    auto* input = cmd->add_option("--input", spec.path, "graph file");
    if (required) input->required();
    cmd->add_option("--format", spec.format, "graph format: gr | edges")
        ->check(CLI::IsMember({"gr", "edges"}));
    cmd->add_flag("--directed", spec.directed, "treat edge-list input as directed");
    cmd->add_flag("--unweighted", spec.unweighted, "edge-list input has no weight column");
    cmd->add_flag("--random-weights", spec.random_weights,
                  "replace weights with uniform draws from [1, sqrt(n))");
    cmd->add_option("--ranking", spec.ranking, "vertex ranking: degree | betweenness")
        ->check(CLI::IsMember({"degree", "betweenness"}));
    cmd->add_option("--samples", spec.samples, "betweenness sample tree count");
    cmd->add_option("--seed", spec.seed, "master seed for all random substreams");
}

struct GraphHandle {
    hublab_graph* g = nullptr;
    ~GraphHandle() { hublab_graph_free(g); }
};
struct RankingHandle {
    hublab_ranking* r = nullptr;
    ~RankingHandle() { hublab_ranking_free(r); }
};
struct LabelingHandle {
    hublab_labeling* l = nullptr;
    ~LabelingHandle() { hublab_labeling_free(l); }
};
struct ShardsHandle {
    hublab_shards* s = nullptr;
    ~ShardsHandle() { hublab_shards_free(s); }
};
struct BuildHandle {
    hublab_build* b = nullptr;
    ~BuildHandle() { hublab_build_free(b); }
};

void load_graph_and_ranking(const InputSpec& spec, GraphHandle& graph, RankingHandle& ranking) {
    check(hublab_graph_load(spec.path.c_str(), spec.format.c_str(), spec.directed ? 1 : 0,
                            spec.unweighted ? 0 : 1, &graph.g));
    if (spec.random_weights) {
        hublab_graph* weighted = nullptr;
        check(hublab_graph_random_weights(graph.g, spec.seed, &weighted));
        hublab_graph_free(graph.g);
        graph.g = weighted;
    }
    if (spec.ranking == "degree")
        check(hublab_ranking_degree(graph.g, &ranking.r));
    else
        check(hublab_ranking_betweenness(graph.g, spec.samples, spec.seed, &ranking.r));
}

json input_to_json(const InputSpec& spec) {
    return json{{"path", spec.path},       {"format", spec.format},
                {"directed", spec.directed}, {"unweighted", spec.unweighted},
                {"random_weights", spec.random_weights}, {"ranking", spec.ranking},
                {"samples", spec.samples},  {"seed", spec.seed}};
}

InputSpec input_from_json(const json& j) {
    InputSpec spec;
    spec.path = j.at("path").get<std::string>();
    spec.format = j.at("format").get<std::string>();
    spec.directed = j.at("directed").get<bool>();
    spec.unweighted = j.at("unweighted").get<bool>();
    spec.random_weights = j.at("random_weights").get<bool>();
    spec.ranking = j.at("ranking").get<std::string>();
    spec.samples = j.at("samples").get<uint32_t>();
    spec.seed = j.at("seed").get<uint64_t>();
    return spec;
}

json read_json_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) die(kExitIo, "cannot open " + path);
    json j;
    try {
        f >> j;
    } catch (const json::exception& e) {
        die(kExitIo, "bad manifest " + path + ": " + e.what());
    }
    return j;
}

// ---- build -------------------------------------------------------------

struct BuildArgs {
    InputSpec input;
    std::string algorithm = "gll";
    hublab_build_options opts{};
    std::string graph_class = "scale-free";
    bool no_early_term = false;
    bool psi_th_set = false;
    bool workers_set = false;
    std::string output = "labeling";
    std::string from_manifest;
    bool write_text = false;
};

uint32_t env_workers() {
    if (const char* env = std::getenv("HUBLAB_WORKERS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<uint32_t>(v);
    }
    return 0;
}

int run_build(BuildArgs& args) {
    if (!args.from_manifest.empty()) {
        const json m = read_json_file(args.from_manifest);
        args.input = input_from_json(m.at("input"));
        args.algorithm = m.at("algorithm").get<std::string>();
        const json& b = m.at("build");
        args.opts.workers = b.at("workers").get<uint32_t>();
        args.opts.alpha = b.at("alpha").get<double>();
        const json& c = m.at("cluster");
        args.opts.q = c.at("q").get<uint32_t>();
        args.opts.sync_count = c.at("sync_count").get<uint32_t>();
        args.opts.beta = c.at("beta").get<uint32_t>();
        args.opts.psi_threshold = c.at("psi_threshold").get<double>();
        args.opts.eta = c.at("eta").get<uint32_t>();
        args.opts.workers_per_node = c.at("workers_per_node").get<uint32_t>();
        args.opts.early_termination = c.at("early_termination").get<bool>() ? 1 : 0;
        args.opts.seed = args.input.seed;
    } else {
        if (args.input.path.empty()) die(kExitUsage, "need --input or --from-manifest");
        if (!args.workers_set) args.opts.workers = env_workers();
        if (!args.psi_th_set && args.graph_class == "road") args.opts.psi_threshold = 500.0;
        args.opts.early_termination = args.no_early_term ? 0 : 1;
        args.opts.seed = args.input.seed;
    }

    GraphHandle graph;
    RankingHandle ranking;
    load_graph_and_ranking(args.input, graph, ranking);

    BuildHandle build;
    check(hublab_build_run(graph.g, ranking.r, args.algorithm.c_str(), &args.opts, &build.b));
    const hublab_labeling* labeling = hublab_build_labeling(build.b);

    const std::string labels_path = args.output + ".labels";
    check(hublab_labeling_save(labeling, labels_path.c_str()));
    if (args.write_text) check(hublab_labeling_save_text(labeling, (labels_path + ".txt").c_str()));

    json manifest;
    manifest["command"] = "build";
    manifest["input"] = input_to_json(args.input);
    manifest["algorithm"] = args.algorithm;
    manifest["build"] = {{"workers", args.opts.workers}, {"alpha", args.opts.alpha}};
    manifest["cluster"] = {{"q", args.opts.q},
                           {"sync_count", args.opts.sync_count},
                           {"beta", args.opts.beta},
                           {"psi_threshold", args.opts.psi_threshold},
                           {"eta", args.opts.eta},
                           {"workers_per_node", args.opts.workers_per_node},
                           {"early_termination", args.opts.early_termination != 0}};
    manifest["graph_digest"] = hex64(hublab_graph_digest(graph.g));
    manifest["ranking_digest"] = hex64(hublab_ranking_digest(ranking.r));
    manifest["labeling_digest"] = hex64(hublab_labeling_digest(labeling));
    json outputs{{"labels", labels_path}};

    if (hublab_build_shard_count(build.b) > 0) {
        const std::string shard_dir = args.output + ".shards";
        check(hublab_build_save_shards(build.b, shard_dir.c_str()));
        outputs["shards"] = shard_dir;
        char* traffic = nullptr;
        check(hublab_build_traffic_csv(build.b, &traffic));
        write_file(args.output + ".traffic.csv", take_string(traffic));
        outputs["traffic"] = args.output + ".traffic.csv";
        if (args.algorithm == "plant" || args.algorithm == "hybrid") {
            char* psi = nullptr;
            check(hublab_build_psi_csv(build.b, &psi));
            write_file(args.output + ".psi.csv", take_string(psi));
            outputs["psi"] = args.output + ".psi.csv";
        }
    }
    manifest["outputs"] = outputs;
    write_file(args.output + ".manifest.json", manifest.dump(2) + "\n");

    std::printf("algorithm: %s\n", args.algorithm.c_str());
    std::printf("vertices: %u  labels: %llu\n", hublab_labeling_n(labeling),
                static_cast<unsigned long long>(hublab_labeling_total(labeling)));
    std::printf("avg label size (self excluded): %.6f\n", hublab_labeling_als(labeling));
    std::printf("build time: %.3f s\n", hublab_build_seconds(build.b));
    return kExitOk;
}

// ---- query -------------------------------------------------------------

struct QueryArgs {
    std::string mode = "qlsn";
    std::string labels;  // labeling file or shard directory
    uint32_t q = 1;
    bool q_set = false;
    std::string queries_file;
    uint64_t random_count = 0;
    uint64_t seed = 0;
    std::string output = "distances.txt";
    std::string stats_csv;
    std::string from_manifest;
};

bool is_shard_dir(const std::string& path) {
    std::ifstream f(path + "/manifest.json");
    return f.good();
}

std::vector<uint32_t> load_query_pairs(const QueryArgs& args, uint32_t n) {
    std::vector<uint32_t> pairs;
    if (!args.queries_file.empty()) {
        std::ifstream f(args.queries_file);
        if (!f) die(kExitIo, "cannot open " + args.queries_file);
        std::string line;
        size_t line_no = 0;
        while (std::getline(f, line)) {
            ++line_no;
            std::istringstream ss(line);
            long long u, v;
            if (!(ss >> u)) continue;
            if (!(ss >> v) || u < 0 || v < 0)
                die(kExitIo, args.queries_file + ":" + std::to_string(line_no) + ": expected 'u v'");
            pairs.push_back(static_cast<uint32_t>(u));
            pairs.push_back(static_cast<uint32_t>(v));
        }
    } else if (args.random_count > 0) {
        pairs.resize(args.random_count * 2);
        check(hublab_random_queries(n, args.random_count, args.seed, pairs.data()));
    } else {
        die(kExitUsage, "need --queries FILE or --random N");
    }
    return pairs;
}

int run_query(QueryArgs& args) {
    if (!args.from_manifest.empty()) {
        const json m = read_json_file(args.from_manifest);
        args.mode = m.at("mode").get<std::string>();
        args.labels = m.at("labels").get<std::string>();
        args.q = m.at("q").get<uint32_t>();
        args.queries_file = m.value("queries_file", "");
        args.random_count = m.value("random_count", uint64_t(0));
        args.seed = m.at("seed").get<uint64_t>();
    }
    const bool shard_input = is_shard_dir(args.labels);

    LabelingHandle labeling;
    ShardsHandle shards;
    uint32_t n = 0;
    if (args.mode == "qfdl") {
        if (shard_input) {
            check(hublab_shards_load(args.labels.c_str(), &shards.s));
            hublab_labeling* merged = nullptr;
            check(hublab_shards_merge(shards.s, &merged));
            n = hublab_labeling_n(merged);
            hublab_labeling_free(merged);
        } else {
            // A single labeling file acts as a one-shard set.
            die(kExitUsage, "qfdl needs a shard directory (hub-partitioned labels); got a labeling file");
        }
    } else {
        if (shard_input && args.mode == "qdol")
            die(kExitUsage, "qdol needs a replicated labeling file, not hub-disjoint shards");
        if (shard_input) {
            check(hublab_shards_load(args.labels.c_str(), &shards.s));
            check(hublab_shards_merge(shards.s, &labeling.l));
        } else {
            check(hublab_labeling_load(args.labels.c_str(), &labeling.l));
        }
        n = hublab_labeling_n(labeling.l);
    }

    const auto pairs = load_query_pairs(args, n);
    const size_t count = pairs.size() / 2;
    std::vector<uint64_t> dists(count);

    const auto t0 = std::chrono::steady_clock::now();
    if (args.mode == "qlsn") {
        check(hublab_query_qlsn(labeling.l, pairs.data(), count, dists.data()));
    } else if (args.mode == "qfdl") {
        check(hublab_query_qfdl(shards.s, pairs.data(), count, dists.data()));
    } else if (args.mode == "qdol") {
        if (!args.q_set) die(kExitUsage, "qdol needs --q (node count for the pair layout)");
        check(hublab_query_qdol(labeling.l, args.q, pairs.data(), count, dists.data()));
    } else {
        die(kExitUsage, "unknown mode: " + args.mode);
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    std::ostringstream body;
    for (uint64_t d : dists) {
        if (d == HUBLAB_DIST_INF)
            body << "INF\n";
        else
            body << d << '\n';
    }
    write_file(args.output, body.str());

    if (!args.stats_csv.empty()) {
        std::ostringstream csv;
        csv << "mode,queries,seconds,queries_per_s,mean_us\n";
        csv << args.mode << ',' << count << ',' << seconds << ','
            << (seconds > 0 ? double(count) / seconds : 0.0) << ','
            << (count > 0 ? seconds * 1e6 / double(count) : 0.0) << '\n';
        write_file(args.stats_csv, csv.str());
    }

    json manifest;
    manifest["command"] = "query";
    manifest["mode"] = args.mode;
    manifest["labels"] = args.labels;
    manifest["q"] = args.q;
    manifest["queries_file"] = args.queries_file;
    manifest["random_count"] = args.random_count;
    manifest["seed"] = args.seed;
    manifest["outputs"] = {{"distances", args.output}};
    write_file(args.output + ".manifest.json", manifest.dump(2) + "\n");

    std::printf("%zu queries in %.6f s\n", count, seconds);
    return kExitOk;
}

// ---- verify -------------------------------------------------------------

struct VerifyArgs {
    InputSpec input;
    std::string labels;
    uint32_t pair_limit = 256;
};

int run_verify(VerifyArgs& args) {
    GraphHandle graph;
    RankingHandle ranking;
    load_graph_and_ranking(args.input, graph, ranking);
    LabelingHandle labeling;
    if (is_shard_dir(args.labels)) {
        ShardsHandle shards;
        check(hublab_shards_load(args.labels.c_str(), &shards.s));
        check(hublab_shards_merge(shards.s, &labeling.l));
    } else {
        check(hublab_labeling_load(args.labels.c_str(), &labeling.l));
    }
    char* report = nullptr;
    int ok = 0;
    check(hublab_verify(graph.g, ranking.r, labeling.l, args.pair_limit, args.input.seed, &report,
                        &ok));
    std::fputs(take_string(report).c_str(), stdout);
    return ok ? kExitOk : kExitVerifyFail;
}

// ---- stats ---------------------------------------------------------------

struct StatsArgs {
    InputSpec input;
    std::string labels;
    std::string per_tree_csv;
    std::string histogram_csv;
    std::string als_csv;
    std::string psi_csv;
};

int run_stats(StatsArgs& args) {
    LabelingHandle labeling;
    if (!args.labels.empty()) {
        if (is_shard_dir(args.labels)) {
            ShardsHandle shards;
            check(hublab_shards_load(args.labels.c_str(), &shards.s));
            check(hublab_shards_merge(shards.s, &labeling.l));
        } else {
            check(hublab_labeling_load(args.labels.c_str(), &labeling.l));
        }
    }
    GraphHandle graph;
    RankingHandle ranking;
    const bool need_graph = !args.per_tree_csv.empty() || !args.psi_csv.empty();
    if (need_graph) {
        if (args.input.path.empty()) die(kExitUsage, "--per-tree and --psi need --input/--ranking");
        load_graph_and_ranking(args.input, graph, ranking);
    }
    if (!args.als_csv.empty() || !args.histogram_csv.empty() || !args.per_tree_csv.empty()) {
        if (!labeling.l) die(kExitUsage, "--labels required for labeling stats");
    }
    char* csv = nullptr;
    if (!args.als_csv.empty()) {
        check(hublab_stats_als_csv(labeling.l, &csv));
        write_file(args.als_csv, take_string(csv));
    }
    if (!args.histogram_csv.empty()) {
        check(hublab_stats_histogram_csv(labeling.l, &csv));
        write_file(args.histogram_csv, take_string(csv));
    }
    if (!args.per_tree_csv.empty()) {
        check(hublab_stats_per_tree_csv(labeling.l, ranking.r, &csv));
        write_file(args.per_tree_csv, take_string(csv));
    }
    if (!args.psi_csv.empty()) {
        check(hublab_psi_trace_csv(graph.g, ranking.r, &csv));
        write_file(args.psi_csv, take_string(csv));
    }
    if (labeling.l) {
        std::printf("labels: %llu  avg label size (self excluded): %.6f\n",
                    static_cast<unsigned long long>(hublab_labeling_total(labeling.l)),
                    hublab_labeling_als(labeling.l));
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hub labeling toolkit: canonical hub labels and distance queries"};
    app.require_subcommand(1);

    BuildArgs build_args;
    auto* build = app.add_subcommand("build", "construct a hub labeling");
    add_input_options(build, build_args.input, false);
    hublab_build_options_init(&build_args.opts);
    build->add_option("--algo", build_args.algorithm,
                      "seqpll | lcc | gll | plant | dgll | hybrid")
        ->check(CLI::IsMember({"seqpll", "lcc", "gll", "plant", "dgll", "hybrid"}));
    build->add_option("--workers", build_args.opts.workers, "shared-memory workers (0 = hardware)")
        ->each([&](const std::string&) { build_args.workers_set = true; });
    build->add_option("--alpha", build_args.opts.alpha, "gll superstep threshold (> 1)");
    build->add_option("--q", build_args.opts.q, "simulated cluster node count");
    build->add_option("--beta", build_args.opts.beta, "superstep growth factor");
    build->add_option("--syncs", build_args.opts.sync_count, "superstep count (0 = log8 n)");
    build->add_option("--psi-th", build_args.opts.psi_threshold, "hybrid switch threshold")
        ->each([&](const std::string&) { build_args.psi_th_set = true; });
    build->add_option("--graph-class", build_args.graph_class,
                      "scale-free | road (road defaults --psi-th to 500)")
        ->check(CLI::IsMember({"scale-free", "road"}));
    build->add_option("--eta", build_args.opts.eta, "common label table prefix size");
    build->add_option("--workers-per-node", build_args.opts.workers_per_node,
                      "tree builders per simulated node");
    build->add_flag("--no-early-term", build_args.no_early_term, "disable plant early termination");
    build->add_option("-o,--output", build_args.output, "output prefix");
    build->add_flag("--text", build_args.write_text, "also write the text label format");
    build->add_option("--from-manifest", build_args.from_manifest,
                      "re-run a previous build from its manifest");

    QueryArgs query_args;
    auto* query = app.add_subcommand("query", "answer point-to-point distance queries");
    query->add_option("--mode", query_args.mode, "qlsn | qfdl | qdol")
        ->check(CLI::IsMember({"qlsn", "qfdl", "qdol"}));
    query->add_option("--labels", query_args.labels, "labeling file or shard directory");
    query->add_option("--q", query_args.q, "qdol: node count for the pair layout")
        ->each([&](const std::string&) { query_args.q_set = true; });
    query->add_option("--queries", query_args.queries_file, "query file: one 'u v' per line");
    query->add_option("--random", query_args.random_count, "generate N random queries");
    query->add_option("--seed", query_args.seed, "seed for random queries");
    query->add_option("-o,--output", query_args.output, "distances output file");
    query->add_option("--stats", query_args.stats_csv, "write throughput/latency CSV");
    query->add_option("--from-manifest", query_args.from_manifest,
                      "re-run a previous query from its manifest");

    VerifyArgs verify_args;
    auto* verify = app.add_subcommand("verify", "check a labeling against the graph oracle");
    add_input_options(verify, verify_args.input);
    verify->add_option("--labels", verify_args.labels, "labeling file or shard directory")->required();
    verify->add_option("--pair-limit", verify_args.pair_limit,
                       "all pairs up to this many vertices, sampled above");

    StatsArgs stats_args;
    auto* stats = app.add_subcommand("stats", "emit label statistics as CSV");
    add_input_options(stats, stats_args.input, false);
    stats->add_option("--labels", stats_args.labels, "labeling file or shard directory");
    stats->add_option("--per-tree", stats_args.per_tree_csv, "per-tree label counts CSV");
    stats->add_option("--histogram", stats_args.histogram_csv, "label size histogram CSV");
    stats->add_option("--als", stats_args.als_csv, "average label size CSV");
    stats->add_option("--psi", stats_args.psi_csv, "plant exploration trace CSV");

    try {
        app.parse(argc, argv);
        if (build->parsed()) return run_build(build_args);
        if (query->parsed()) return run_query(query_args);
        if (verify->parsed()) return run_verify(verify_args);
        if (stats->parsed()) return run_stats(stats_args);
        return kExitUsage;
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    } catch (const CliError& e) {
        std::fprintf(stderr, "error: %s\n", e.message.c_str());
        return e.code;
    }
}
