#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "hublab.h"

namespace {

namespace fs = std::filesystem;

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / "hublab_capi_test";
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const char* name) const { return (path / name).string(); }
};

void write_p3(const std::string& path) {
    std::ofstream f(path);
    f << "c path a-b-c\np sp 3 4\na 1 2 1\na 2 1 1\na 2 3 1\na 3 2 1\n";
}

std::string take(char* s) {
    std::string out(s);
    hublab_string_free(s);
    return out;
}

}  // namespace

TEST_CASE("c api: graph round trip and error reporting") {
    TempDir tmp;
    const std::string gr = tmp.file("p3.gr");
    write_p3(gr);

    hublab_graph* g = nullptr;
    REQUIRE(hublab_graph_load(gr.c_str(), "gr", 0, 1, &g) == HUBLAB_OK);
    CHECK(hublab_graph_n(g) == 3);
    CHECK(hublab_graph_m(g) == 2);
    CHECK(hublab_graph_directed(g) == 0);
    CHECK(hublab_graph_digest(g) != 0);

    hublab_graph* missing = nullptr;
    CHECK(hublab_graph_load(tmp.file("nope.gr").c_str(), "gr", 0, 1, &missing) == HUBLAB_ERR_IO);
    CHECK(std::string(hublab_last_error()).size() > 0);
    CHECK(hublab_graph_load(gr.c_str(), "pdf", 0, 1, &missing) == HUBLAB_ERR_USAGE);

    const std::string bad = tmp.file("bad.gr");
    {
        std::ofstream f(bad);
        f << "p sp 2 1\na 1 2 0\n";
    }
    CHECK(hublab_graph_load(bad.c_str(), "gr", 0, 1, &missing) == HUBLAB_ERR_DOMAIN);

    hublab_graph_free(g);
}

TEST_CASE("c api: build, save, load, query, verify") {
    TempDir tmp;
    const std::string gr = tmp.file("p3.gr");
    write_p3(gr);

    hublab_graph* g = nullptr;
    REQUIRE(hublab_graph_load(gr.c_str(), "gr", 0, 1, &g) == HUBLAB_OK);
    hublab_ranking* r = nullptr;
    REQUIRE(hublab_ranking_degree(g, &r) == HUBLAB_OK);

    hublab_build_options opts;
    hublab_build_options_init(&opts);
    opts.workers = 2;

    uint64_t reference_digest = 0;
    for (const char* algo : {"seqpll", "lcc", "gll", "plant", "dgll", "hybrid"}) {
        hublab_build* b = nullptr;
        REQUIRE(hublab_build_run(g, r, algo, &opts, &b) == HUBLAB_OK);
        const hublab_labeling* l = hublab_build_labeling(b);
        CHECK(hublab_labeling_total(l) == 2);
        if (reference_digest == 0)
            reference_digest = hublab_labeling_digest(l);
        else
            CHECK(hublab_labeling_digest(l) == reference_digest);
        hublab_build_free(b);
    }

    hublab_build* b = nullptr;
    REQUIRE(hublab_build_run(g, r, "dgll", &opts, &b) == HUBLAB_OK);
    CHECK(hublab_build_shard_count(b) == 1);
    const std::string shard_dir = tmp.file("shards");
    REQUIRE(hublab_build_save_shards(b, shard_dir.c_str()) == HUBLAB_OK);

    const std::string labels = tmp.file("p3.labels");
    REQUIRE(hublab_labeling_save(hublab_build_labeling(b), labels.c_str()) == HUBLAB_OK);
    hublab_labeling* loaded = nullptr;
    REQUIRE(hublab_labeling_load(labels.c_str(), &loaded) == HUBLAB_OK);
    CHECK(hublab_labeling_als(loaded) == doctest::Approx(2.0 / 3.0));

    hublab_shards* shards = nullptr;
    REQUIRE(hublab_shards_load(shard_dir.c_str(), &shards) == HUBLAB_OK);
    CHECK(hublab_shards_q(shards) == 1);
    CHECK(hublab_shards_ranking_digest(shards) == hublab_ranking_digest(r));

    const uint32_t pairs[] = {0, 2, 1, 2, 0, 0};
    uint64_t lsn[3], fdl[3], dol[3];
    REQUIRE(hublab_query_qlsn(loaded, pairs, 3, lsn) == HUBLAB_OK);
    REQUIRE(hublab_query_qfdl(shards, pairs, 3, fdl) == HUBLAB_OK);
    REQUIRE(hublab_query_qdol(loaded, 3, pairs, 3, dol) == HUBLAB_OK);
    for (int i = 0; i < 3; ++i) {
        CHECK(lsn[i] == fdl[i]);
        CHECK(lsn[i] == dol[i]);
    }
    CHECK(lsn[0] == 2);
    CHECK(lsn[2] == 0);

    char* report = nullptr;
    int ok = 0;
    REQUIRE(hublab_verify(g, r, loaded, 256, 0, &report, &ok) == HUBLAB_OK);
    const std::string text = take(report);
    CHECK(ok == 1);
    CHECK(text.find("cover: PASS") != std::string::npos);

    char* csv = nullptr;
    REQUIRE(hublab_stats_per_tree_csv(loaded, r, &csv) == HUBLAB_OK);
    CHECK(take(csv).find("tree_index,root,rank,labels") == 0);
    REQUIRE(hublab_psi_trace_csv(g, r, &csv) == HUBLAB_OK);
    CHECK(take(csv).find("tree_index,root,rank,explored,labels,psi") == 0);

    hublab_shards_free(shards);
    hublab_labeling_free(loaded);
    hublab_build_free(b);
    hublab_ranking_free(r);
    hublab_graph_free(g);
}

TEST_CASE("c api: random weights and betweenness ranking are deterministic") {
    TempDir tmp;
    const std::string edges = tmp.file("g.edges");
    {
        std::ofstream f(edges);
        for (int v = 1; v < 40; ++v) f << (v / 2) << ' ' << v << '\n';
    }
    hublab_graph* g = nullptr;
    REQUIRE(hublab_graph_load(edges.c_str(), "edges", 0, 0, &g) == HUBLAB_OK);
    hublab_graph* w1 = nullptr;
    hublab_graph* w2 = nullptr;
    REQUIRE(hublab_graph_random_weights(g, 7, &w1) == HUBLAB_OK);
    REQUIRE(hublab_graph_random_weights(g, 7, &w2) == HUBLAB_OK);
    CHECK(hublab_graph_digest(w1) == hublab_graph_digest(w2));

    hublab_ranking* r1 = nullptr;
    hublab_ranking* r2 = nullptr;
    REQUIRE(hublab_ranking_betweenness(w1, 16, 3, &r1) == HUBLAB_OK);
    REQUIRE(hublab_ranking_betweenness(w2, 16, 3, &r2) == HUBLAB_OK);
    CHECK(hublab_ranking_digest(r1) == hublab_ranking_digest(r2));

    uint32_t pairs[20];
    REQUIRE(hublab_random_queries(40, 10, 5, pairs) == HUBLAB_OK);
    uint32_t again[20];
    REQUIRE(hublab_random_queries(40, 10, 5, again) == HUBLAB_OK);
    for (int i = 0; i < 20; ++i) CHECK(pairs[i] == again[i]);

    CHECK(hublab_compute_zeta(6) == 4);

    hublab_ranking_free(r1);
    hublab_ranking_free(r2);
    hublab_graph_free(w1);
    hublab_graph_free(w2);
    hublab_graph_free(g);
}
