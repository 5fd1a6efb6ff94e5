#include "hublab/stats.hpp"

#include <map>
#include <sstream>
#include <vector>

namespace hublab {

std::string per_tree_csv(const Labeling& l, const Ranking& r) {
    const Vertex n = l.num_vertices();
    std::vector<std::uint64_t> count(n, 0);
    for (Vertex v = 0; v < n; ++v) {
        for (const HubLabel& lab : l.outbound(v)) ++count[lab.hub];
        if (l.directed())
            for (const HubLabel& lab : l.inbound(v)) ++count[lab.hub];
    }
    std::ostringstream os;
    os << "tree_index,root,rank,labels\n";
    for (Vertex i = 0; i < n; ++i) {
        const Vertex root = r.order()[i];
        os << i << ',' << root << ',' << r.rank(root) << ',' << count[root] << '\n';
    }
    return os.str();
}

std::string label_histogram_csv(const Labeling& l) {
    std::map<std::size_t, std::uint64_t> hist;
    for (Vertex v = 0; v < l.num_vertices(); ++v) {
        std::size_t size = l.outbound(v).size();
        if (l.directed()) size += l.inbound(v).size();
        ++hist[size];
    }
    std::ostringstream os;
    os << "label_count,vertices\n";
    for (const auto& [size, vertices] : hist) os << size << ',' << vertices << '\n';
    return os.str();
}

std::string als_csv(const Labeling& l) {
    // The implicit self label adds one per stored set.
    const double excl = l.avg_label_size();
    const double incl = excl + (l.directed() ? 2.0 : 1.0);
    std::ostringstream os;
    os << "convention,avg_label_size\n";
    os << "excluding_self," << excl << '\n';
    os << "including_self," << incl << '\n';
    return os.str();
}

}  // namespace hublab
