#pragma once

#include <string>

#include "hublab/graph.hpp"
#include "hublab/labeling.hpp"
#include "hublab/ranking.hpp"

namespace hublab {

struct VerifyReport {
    bool cover_ok = false;
    bool respects_ok = false;
    bool minimal_ok = false;
    std::string text;  // one PASS/FAIL line per check plus witnesses

    bool ok() const { return cover_ok && respects_ok && minimal_ok; }
};

// Checks (1) query distances against the Dijkstra oracle, (2) that the
// maximum-rank vertex of every checked pair is a common hub at exact
// distances, (3) that the cleaning query keeps every stored label.
// All pairs when n <= pair_limit, otherwise a seeded sample of sources
// and targets.
VerifyReport verify_labeling(const Graph& g, const Ranking& r, const Labeling& l,
                             Vertex pair_limit = 256, std::uint64_t seed = 0);

}  // namespace hublab
