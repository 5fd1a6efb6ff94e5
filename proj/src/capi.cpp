#include "hublab.h"

#include <chrono>
#include <cstring>
#include <fstream>
#include <string>

#include "hublab/builders.hpp"
#include "hublab/cluster.hpp"
#include "hublab/graph.hpp"
#include "hublab/labeling.hpp"
#include "hublab/oracle.hpp"
#include "hublab/plant.hpp"
#include "hublab/query.hpp"
#include "hublab/ranking.hpp"
#include "hublab/stats.hpp"
#include "hublab/verify.hpp"

using namespace hublab;

namespace {

thread_local std::string g_last_error;

hublab_status fail(hublab_status code, const std::string& what) {
    g_last_error = what;
    return code;
}

// Maps library exceptions onto status codes.
template <typename F>
hublab_status guarded(F&& fn) {
    try {
        return fn();
    } catch (const ParseError& e) {
        return fail(HUBLAB_ERR_PARSE, e.what());
    } catch (const DomainError& e) {
        return fail(HUBLAB_ERR_DOMAIN, e.what());
    } catch (const IoError& e) {
        return fail(HUBLAB_ERR_IO, e.what());
    } catch (const ContractViolation& e) {
        return fail(HUBLAB_ERR_USAGE, e.what());
    } catch (const std::exception& e) {
        return fail(HUBLAB_ERR_INTERNAL, e.what());
    }
}

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

}  // namespace

struct hublab_graph {
    Graph g;
};
struct hublab_ranking {
    Ranking r;
};
struct hublab_labeling {
    Labeling l;
};
struct hublab_shards {
    ShardSet set;
};
struct hublab_build {
    std::string algorithm;
    std::uint64_t ranking_digest = 0;
    hublab_labeling view;  // owns the merged labeling
    bool is_cluster = false;
    ClusterRun run;        // shards/traffic/psi for cluster builds
    std::vector<PsiSample> psi;
    double seconds = 0;
};

extern "C" {

const char* hublab_last_error(void) { return g_last_error.c_str(); }

void hublab_string_free(char* s) { delete[] s; }

hublab_status hublab_graph_load(const char* path, const char* format, int directed, int weighted,
                                hublab_graph** out) {
    return guarded([&] {
        if (!path || !format || !out) return fail(HUBLAB_ERR_USAGE, "null argument");
        Graph g;
        const std::string fmt = format;
        if (fmt == "gr")
            g = load_dimacs_gr_file(path);
        else if (fmt == "edges")
            g = load_edge_list_file(path, directed != 0, weighted != 0);
        else
            return fail(HUBLAB_ERR_USAGE, "unknown graph format: " + fmt);
        *out = new hublab_graph{std::move(g)};
        return HUBLAB_OK;
    });
}

hublab_status hublab_graph_random_weights(const hublab_graph* g, uint64_t seed, hublab_graph** out) {
    return guarded([&] {
        if (!g || !out) return fail(HUBLAB_ERR_USAGE, "null argument");
        *out = new hublab_graph{assign_random_weights(g->g, seed)};
        return HUBLAB_OK;
    });
}

uint32_t hublab_graph_n(const hublab_graph* g) { return g->g.num_vertices(); }
uint64_t hublab_graph_m(const hublab_graph* g) { return g->g.num_edges(); }
int hublab_graph_directed(const hublab_graph* g) { return g->g.directed() ? 1 : 0; }
uint64_t hublab_graph_digest(const hublab_graph* g) { return g->g.digest(); }
void hublab_graph_free(hublab_graph* g) { delete g; }

hublab_status hublab_ranking_degree(const hublab_graph* g, hublab_ranking** out) {
    return guarded([&] {
        if (!g || !out) return fail(HUBLAB_ERR_USAGE, "null argument");
        *out = new hublab_ranking{rank_by_degree(g->g)};
        return HUBLAB_OK;
    });
}

hublab_status hublab_ranking_betweenness(const hublab_graph* g, uint32_t samples, uint64_t seed,
                                         hublab_ranking** out) {
    return guarded([&] {
        if (!g || !out) return fail(HUBLAB_ERR_USAGE, "null argument");
        if (samples < 1) return fail(HUBLAB_ERR_USAGE, "samples must be >= 1");
        *out = new hublab_ranking{rank_by_approx_betweenness(g->g, samples, seed)};
        return HUBLAB_OK;
    });
}

uint64_t hublab_ranking_digest(const hublab_ranking* r) { return r->r.digest(); }
void hublab_ranking_free(hublab_ranking* r) { delete r; }

void hublab_build_options_init(hublab_build_options* opts) {
    opts->workers = 0;
    opts->alpha = 4.0;
    opts->q = 1;
    opts->sync_count = 0;
    opts->beta = 8;
    opts->psi_threshold = 100.0;
    opts->eta = 16;
    opts->workers_per_node = 1;
    opts->early_termination = 1;
    opts->seed = 0;
}

hublab_status hublab_build_run(const hublab_graph* g, const hublab_ranking* r,
                               const char* algorithm, const hublab_build_options* opts,
                               hublab_build** out) {
    return guarded([&] {
        if (!g || !r || !algorithm || !out) return fail(HUBLAB_ERR_USAGE, "null argument");
        hublab_build_options defaults;
        hublab_build_options_init(&defaults);
        if (!opts) opts = &defaults;
        if (r->r.num_vertices() != g->g.num_vertices())
            return fail(HUBLAB_ERR_USAGE, "ranking size does not match graph");

        const std::string algo = algorithm;
        auto build = std::make_unique<hublab_build>();
        build->algorithm = algo;
        build->ranking_digest = r->r.digest();
        const auto t0 = std::chrono::steady_clock::now();
        if (algo == "seqpll" || algo == "lcc" || algo == "gll") {
            BuildConfig cfg;
            cfg.workers = opts->workers;
            cfg.alpha = opts->alpha;
            cfg.seed = opts->seed;
            if (algo == "seqpll")
                build->view.l = seq_pll(g->g, r->r);
            else if (algo == "lcc")
                build->view.l = lcc(g->g, r->r, cfg);
            else
                build->view.l = gll(g->g, r->r, cfg);
            build->psi.clear();
        } else if (algo == "plant" || algo == "dgll" || algo == "hybrid") {
            ClusterConfig cfg;
            cfg.q = opts->q;
            cfg.sync_count = opts->sync_count;
            cfg.beta = opts->beta;
            cfg.psi_threshold = opts->psi_threshold;
            cfg.eta = opts->eta;
            cfg.workers_per_node = opts->workers_per_node;
            cfg.early_termination = opts->early_termination != 0;
            cfg.seed = opts->seed;
            if (algo == "plant")
                build->run = plant_run(g->g, r->r, cfg);
            else if (algo == "dgll")
                build->run = dgll_run(g->g, r->r, cfg);
            else
                build->run = hybrid_run(g->g, r->r, cfg);
            build->is_cluster = true;
            build->view.l = build->run.merged(r->r);
            build->psi = build->run.psi;
        } else {
            return fail(HUBLAB_ERR_USAGE, "unknown algorithm: " + algo);
        }
        build->seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        *out = build.release();
        return HUBLAB_OK;
    });
}

const hublab_labeling* hublab_build_labeling(const hublab_build* b) { return &b->view; }

uint32_t hublab_build_shard_count(const hublab_build* b) {
    return b->is_cluster ? static_cast<uint32_t>(b->run.shards.size()) : 0;
}

double hublab_build_seconds(const hublab_build* b) { return b->seconds; }

hublab_status hublab_build_save_shards(const hublab_build* b, const char* dir) {
    return guarded([&] {
        if (!b || !dir) return fail(HUBLAB_ERR_USAGE, "null argument");
        if (!b->is_cluster) return fail(HUBLAB_ERR_USAGE, "build has no shards: " + b->algorithm);
        save_shards(b->run, b->ranking_digest, dir);
        return HUBLAB_OK;
    });
}

hublab_status hublab_build_traffic_csv(const hublab_build* b, char** csv) {
    return guarded([&] {
        if (!b || !csv) return fail(HUBLAB_ERR_USAGE, "null argument");
        *csv = dup_string(traffic_csv(b->is_cluster ? b->run.traffic : std::vector<TrafficEvent>{}));
        return HUBLAB_OK;
    });
}

hublab_status hublab_build_psi_csv(const hublab_build* b, char** csv) {
    return guarded([&] {
        if (!b || !csv) return fail(HUBLAB_ERR_USAGE, "null argument");
        *csv = dup_string(psi_trace_csv(b->psi));
        return HUBLAB_OK;
    });
}

void hublab_build_free(hublab_build* b) { delete b; }

hublab_status hublab_labeling_save(const hublab_labeling* l, const char* path) {
    return guarded([&] {
        if (!l || !path) return fail(HUBLAB_ERR_USAGE, "null argument");
        save_labeling_file(l->l, path);
        return HUBLAB_OK;
    });
}

hublab_status hublab_labeling_save_text(const hublab_labeling* l, const char* path) {
    return guarded([&] {
        if (!l || !path) return fail(HUBLAB_ERR_USAGE, "null argument");
        std::ofstream f(path);
        if (!f) return fail(HUBLAB_ERR_IO, std::string("cannot open ") + path);
        write_labeling_text(l->l, f);
        return HUBLAB_OK;
    });
}

hublab_status hublab_labeling_load(const char* path, hublab_labeling** out) {
    return guarded([&] {
        if (!path || !out) return fail(HUBLAB_ERR_USAGE, "null argument");
        *out = new hublab_labeling{load_labeling_file(path)};
        return HUBLAB_OK;
    });
}

uint32_t hublab_labeling_n(const hublab_labeling* l) { return l->l.num_vertices(); }
int hublab_labeling_directed(const hublab_labeling* l) { return l->l.directed() ? 1 : 0; }
uint64_t hublab_labeling_total(const hublab_labeling* l) { return l->l.total_labels(); }
double hublab_labeling_als(const hublab_labeling* l) { return l->l.avg_label_size(); }
uint64_t hublab_labeling_digest(const hublab_labeling* l) { return labeling_digest(l->l); }
void hublab_labeling_free(hublab_labeling* l) { delete l; }

hublab_status hublab_shards_load(const char* dir, hublab_shards** out) {
    return guarded([&] {
        if (!dir || !out) return fail(HUBLAB_ERR_USAGE, "null argument");
        *out = new hublab_shards{load_shards(dir)};
        return HUBLAB_OK;
    });
}

uint32_t hublab_shards_q(const hublab_shards* s) { return s->set.q; }
uint64_t hublab_shards_ranking_digest(const hublab_shards* s) { return s->set.ranking_digest; }

hublab_status hublab_shards_merge(const hublab_shards* s, hublab_labeling** out) {
    return guarded([&] {
        if (!s || !out) return fail(HUBLAB_ERR_USAGE, "null argument");
        // Hub-disjoint shards merge by concatenation; stored order inside
        // each shard already follows the shared rank order, so a stable
        // merge by shard position would need the ranking. Queries are
        // order-free, so concatenating per vertex is sufficient.
        if (s->set.shards.empty()) return fail(HUBLAB_ERR_USAGE, "empty shard set");
        const Vertex n = s->set.shards[0].num_vertices();
        const bool directed = s->set.shards[0].directed();
        Labeling merged(n, directed);
        for (const auto& shard : s->set.shards)
            for (Vertex v = 0; v < n; ++v) {
                const auto& so = shard.outbound(v);
                merged.outbound(v).insert(merged.outbound(v).end(), so.begin(), so.end());
                if (directed) {
                    const auto& si = shard.inbound(v);
                    merged.inbound(v).insert(merged.inbound(v).end(), si.begin(), si.end());
                }
            }
        *out = new hublab_labeling{std::move(merged)};
        return HUBLAB_OK;
    });
}

void hublab_shards_free(hublab_shards* s) { delete s; }

namespace {

QueryBatch to_batch(const uint32_t* pairs, size_t count) {
    QueryBatch batch;
    batch.pairs.reserve(count);
    for (size_t i = 0; i < count; ++i) batch.pairs.emplace_back(pairs[2 * i], pairs[2 * i + 1]);
    return batch;
}

}  // namespace

hublab_status hublab_query_qlsn(const hublab_labeling* l, const uint32_t* pairs, size_t count,
                                uint64_t* dists) {
    return guarded([&] {
        if (!l || !pairs || !dists) return fail(HUBLAB_ERR_USAGE, "null argument");
        const auto out = qlsn(to_batch(pairs, count), l->l);
        std::copy(out.begin(), out.end(), dists);
        return HUBLAB_OK;
    });
}

hublab_status hublab_query_qfdl(const hublab_shards* s, const uint32_t* pairs, size_t count,
                                uint64_t* dists) {
    return guarded([&] {
        if (!s || !pairs || !dists) return fail(HUBLAB_ERR_USAGE, "null argument");
        const auto out = qfdl(to_batch(pairs, count), s->set.shards);
        std::copy(out.dists.begin(), out.dists.end(), dists);
        return HUBLAB_OK;
    });
}

hublab_status hublab_query_qdol(const hublab_labeling* l, uint32_t q, const uint32_t* pairs,
                                size_t count, uint64_t* dists) {
    return guarded([&] {
        if (!l || !pairs || !dists) return fail(HUBLAB_ERR_USAGE, "null argument");
        const auto out = qdol(to_batch(pairs, count), l->l, q);
        std::copy(out.dists.begin(), out.dists.end(), dists);
        return HUBLAB_OK;
    });
}

uint32_t hublab_compute_zeta(uint32_t q) { return compute_zeta(q); }

hublab_status hublab_random_queries(uint32_t n, size_t count, uint64_t seed, uint32_t* pairs) {
    return guarded([&] {
        if (!pairs) return fail(HUBLAB_ERR_USAGE, "null argument");
        if (n == 0) return fail(HUBLAB_ERR_USAGE, "empty vertex range");
        const QueryBatch batch = random_queries(n, count, seed);
        for (size_t i = 0; i < batch.pairs.size(); ++i) {
            pairs[2 * i] = batch.pairs[i].first;
            pairs[2 * i + 1] = batch.pairs[i].second;
        }
        return HUBLAB_OK;
    });
}

hublab_status hublab_verify(const hublab_graph* g, const hublab_ranking* r,
                            const hublab_labeling* l, uint32_t pair_limit, uint64_t seed,
                            char** report, int* ok) {
    return guarded([&] {
        if (!g || !r || !l || !report || !ok) return fail(HUBLAB_ERR_USAGE, "null argument");
        const VerifyReport rep = verify_labeling(g->g, r->r, l->l, pair_limit, seed);
        *report = dup_string(rep.text);
        *ok = rep.ok() ? 1 : 0;
        return HUBLAB_OK;
    });
}

hublab_status hublab_stats_per_tree_csv(const hublab_labeling* l, const hublab_ranking* r,
                                        char** csv) {
    return guarded([&] {
        if (!l || !r || !csv) return fail(HUBLAB_ERR_USAGE, "null argument");
        *csv = dup_string(per_tree_csv(l->l, r->r));
        return HUBLAB_OK;
    });
}

hublab_status hublab_stats_histogram_csv(const hublab_labeling* l, char** csv) {
    return guarded([&] {
        if (!l || !csv) return fail(HUBLAB_ERR_USAGE, "null argument");
        *csv = dup_string(label_histogram_csv(l->l));
        return HUBLAB_OK;
    });
}

hublab_status hublab_stats_als_csv(const hublab_labeling* l, char** csv) {
    return guarded([&] {
        if (!l || !csv) return fail(HUBLAB_ERR_USAGE, "null argument");
        *csv = dup_string(als_csv(l->l));
        return HUBLAB_OK;
    });
}

hublab_status hublab_psi_trace_csv(const hublab_graph* g, const hublab_ranking* r, char** csv) {
    return guarded([&] {
        if (!g || !r || !csv) return fail(HUBLAB_ERR_USAGE, "null argument");
        *csv = dup_string(psi_trace_csv(psi_trace(g->g, r->r)));
        return HUBLAB_OK;
    });
}

}  // extern "C"
