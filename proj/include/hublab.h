/* C API for the hub-labeling toolkit: canonical hub labeling construction
 * (sequential, shared-memory parallel, simulated multi-node), shortest
 * distance queries over three storage modes, verification and stats.
 *
 * All functions returning hublab_status set a thread-local error message
 * readable through hublab_last_error() on failure. Handles are opaque and
 * freed with their matching _free function. Strings returned through
 * char** out parameters are heap allocated; release them with
 * hublab_string_free().
 */
#ifndef HUBLAB_H
#define HUBLAB_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct hublab_graph hublab_graph;
typedef struct hublab_ranking hublab_ranking;
typedef struct hublab_labeling hublab_labeling;
typedef struct hublab_build hublab_build;
typedef struct hublab_shards hublab_shards;

typedef enum {
    HUBLAB_OK = 0,
    HUBLAB_ERR_USAGE = 1,    /* bad argument or contract violation */
    HUBLAB_ERR_PARSE = 2,    /* malformed input text or file */
    HUBLAB_ERR_DOMAIN = 3,   /* out-of-domain value (weight <= 0, ...) */
    HUBLAB_ERR_IO = 4,       /* file system failure */
    HUBLAB_ERR_INTERNAL = 5
} hublab_status;

#define HUBLAB_DIST_INF UINT64_MAX

const char* hublab_last_error(void);
void hublab_string_free(char* s);

/* ---- graphs ---------------------------------------------------------- */

/* format: "gr" (DIMACS, direction auto-detected) or "edges" (0-based
 * "u v [w]" lines; directed/weighted describe the file). */
hublab_status hublab_graph_load(const char* path, const char* format, int directed, int weighted,
                                hublab_graph** out);
/* Re-weights every edge uniformly from [1, max(2, ceil(sqrt(n)))). */
hublab_status hublab_graph_random_weights(const hublab_graph* g, uint64_t seed, hublab_graph** out);
uint32_t hublab_graph_n(const hublab_graph* g);
uint64_t hublab_graph_m(const hublab_graph* g);
int hublab_graph_directed(const hublab_graph* g);
uint64_t hublab_graph_digest(const hublab_graph* g);
void hublab_graph_free(hublab_graph* g);

/* ---- rankings -------------------------------------------------------- */

hublab_status hublab_ranking_degree(const hublab_graph* g, hublab_ranking** out);
hublab_status hublab_ranking_betweenness(const hublab_graph* g, uint32_t samples, uint64_t seed,
                                         hublab_ranking** out);
uint64_t hublab_ranking_digest(const hublab_ranking* r);
void hublab_ranking_free(hublab_ranking* r);

/* ---- label construction ---------------------------------------------- */

typedef struct {
    uint32_t workers;          /* shared-memory workers; 0 = hardware */
    double alpha;              /* gll superstep threshold (> 1) */
    uint32_t q;                /* simulated node count */
    uint32_t sync_count;       /* supersteps; 0 = ceil(log8 n) */
    uint32_t beta;             /* superstep growth factor */
    double psi_threshold;      /* hybrid switch threshold */
    uint32_t eta;              /* common-table prefix size */
    uint32_t workers_per_node;
    int early_termination;     /* plant trees stop when no label can follow */
    uint64_t seed;
} hublab_build_options;

void hublab_build_options_init(hublab_build_options* opts);

/* algorithm: seqpll | lcc | gll | plant | dgll | hybrid. The last three
 * run on the simulated cluster and carry per-node shards. */
hublab_status hublab_build_run(const hublab_graph* g, const hublab_ranking* r,
                               const char* algorithm, const hublab_build_options* opts,
                               hublab_build** out);

/* Borrowed view of the (merged) labeling; valid while the build lives. */
const hublab_labeling* hublab_build_labeling(const hublab_build* b);
uint32_t hublab_build_shard_count(const hublab_build* b);      /* 0 for smp builds */
double hublab_build_seconds(const hublab_build* b);
hublab_status hublab_build_save_shards(const hublab_build* b, const char* dir);
hublab_status hublab_build_traffic_csv(const hublab_build* b, char** csv);
hublab_status hublab_build_psi_csv(const hublab_build* b, char** csv);
void hublab_build_free(hublab_build* b);

/* ---- labelings -------------------------------------------------------- */

hublab_status hublab_labeling_save(const hublab_labeling* l, const char* path);
hublab_status hublab_labeling_save_text(const hublab_labeling* l, const char* path);
hublab_status hublab_labeling_load(const char* path, hublab_labeling** out);
uint32_t hublab_labeling_n(const hublab_labeling* l);
int hublab_labeling_directed(const hublab_labeling* l);
uint64_t hublab_labeling_total(const hublab_labeling* l);      /* self labels excluded */
double hublab_labeling_als(const hublab_labeling* l);
uint64_t hublab_labeling_digest(const hublab_labeling* l);
void hublab_labeling_free(hublab_labeling* l);

/* ---- shard sets ------------------------------------------------------- */

hublab_status hublab_shards_load(const char* dir, hublab_shards** out);
uint32_t hublab_shards_q(const hublab_shards* s);
uint64_t hublab_shards_ranking_digest(const hublab_shards* s);
/* Merge of all shards into one replicated labeling. */
hublab_status hublab_shards_merge(const hublab_shards* s, hublab_labeling** out);
void hublab_shards_free(hublab_shards* s);

/* ---- queries ----------------------------------------------------------- */

/* pairs: count * 2 vertex ids (u0, v0, u1, v1, ...). dists receives count
 * values, HUBLAB_DIST_INF when unreachable. */
hublab_status hublab_query_qlsn(const hublab_labeling* l, const uint32_t* pairs, size_t count,
                                uint64_t* dists);
hublab_status hublab_query_qfdl(const hublab_shards* s, const uint32_t* pairs, size_t count,
                                uint64_t* dists);
hublab_status hublab_query_qdol(const hublab_labeling* l, uint32_t q, const uint32_t* pairs,
                                size_t count, uint64_t* dists);
uint32_t hublab_compute_zeta(uint32_t q);

/* Seeded uniform query pairs; pairs receives count * 2 vertex ids. Drawn
 * from the named "queries" substream of seed. */
hublab_status hublab_random_queries(uint32_t n, size_t count, uint64_t seed, uint32_t* pairs);

/* ---- verification and stats ------------------------------------------- */

/* report gets one PASS/FAIL line per check; ok is 1 when all pass. */
hublab_status hublab_verify(const hublab_graph* g, const hublab_ranking* r,
                            const hublab_labeling* l, uint32_t pair_limit, uint64_t seed,
                            char** report, int* ok);

hublab_status hublab_stats_per_tree_csv(const hublab_labeling* l, const hublab_ranking* r,
                                        char** csv);
hublab_status hublab_stats_histogram_csv(const hublab_labeling* l, char** csv);
hublab_status hublab_stats_als_csv(const hublab_labeling* l, char** csv);
hublab_status hublab_psi_trace_csv(const hublab_graph* g, const hublab_ranking* r, char** csv);

#ifdef __cplusplus
}
#endif

#endif /* HUBLAB_H */
