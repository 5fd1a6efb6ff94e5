#pragma once

#include <string>

#include "hublab/labeling.hpp"
#include "hublab/ranking.hpp"

namespace hublab {

// Labels emitted per tree (= per hub), in rank order:
// "tree_index,root,rank,labels".
std::string per_tree_csv(const Labeling& l, const Ranking& r);

// "label_count,vertices" histogram of per-vertex stored label counts
// (outbound + inbound for directed graphs).
std::string label_histogram_csv(const Labeling& l);

// Average label size under both self-label conventions.
std::string als_csv(const Labeling& l);

}  // namespace hublab
