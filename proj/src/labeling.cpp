#include "hublab/labeling.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "hublab/rng.hpp"

namespace hublab {

std::uint64_t Labeling::total_labels() const {
    std::uint64_t total = 0;
    for (const auto& s : out_) total += s.size();
    for (const auto& s : in_) total += s.size();
    return total;
}

QueryResult ppsd_query(const LabelSet& lu_out, const LabelSet& lv_in, Vertex u, Vertex v) {
    if (u == v) return {0, u};
    QueryResult best;
    std::unordered_map<Vertex, Dist> index;
    index.reserve(lu_out.size() + 1);
    index.emplace(u, 0);  // implicit self of u
    for (const HubLabel& l : lu_out) index.emplace(l.hub, l.dist);
    // Scanning v's set in stored (descending rank) order makes the first
    // minimum the highest ranked witness.
    for (const HubLabel& l : lv_in) {
        auto it = index.find(l.hub);
        if (it == index.end()) continue;
        const Dist d = it->second + l.dist;
        if (d < best.dist) best = {d, l.hub};
    }
    // Implicit self of v: stored candidates win ties since every stored hub
    // of L_v outranks v.
    auto it = index.find(v);
    if (it != index.end() && it->second < best.dist) best = {it->second, v};
    return best;
}

QueryResult ppsd_query(const Labeling& l, Vertex u, Vertex v) {
    return ppsd_query(l.outbound(u), l.inbound(v), u, v);
}

bool distance_query(Dist delta, const RootIndex& root_labels, std::span<const HubLabel> labels) {
    for (const HubLabel& l : labels) {
        const Dist* d = root_labels.find(l.hub);
        if (d && l.dist + *d <= delta) return true;
    }
    return false;
}

bool LabelView::next(HubLabel& out) {
    const Vertex ra = ia_ < a_.size() ? r_->rank(a_[ia_].hub) : 0;
    const Vertex rb = ib_ < b_.size() ? r_->rank(b_[ib_].hub) : 0;
    const Vertex rs = r_->rank(owner_);
    const bool ha = ia_ < a_.size();
    const bool hb = ib_ < b_.size();
    const bool hs = !self_done_;
    if (!ha && !hb && !hs) return false;
    // Pick the highest rank among the three cursors.
    if (ha && (!hb || ra > rb) && (!hs || ra > rs)) {
        out = a_[ia_++];
    } else if (hb && (!hs || rb > rs)) {
        out = b_[ib_++];
    } else {
        out = {owner_, 0};
        self_done_ = true;
    }
    return true;
}

bool cleaning_query(Vertex, Vertex h, Dist delta, LabelView lh, LabelView lv, const Ranking& r) {
    const Vertex floor_rank = r.rank(h);
    HubLabel x, y;
    bool have_x = lh.next(x);
    bool have_y = lv.next(y);
    while (have_x && have_y) {
        const Vertex rx = r.rank(x.hub);
        const Vertex ry = r.rank(y.hub);
        // No common hub above h's rank remains: h keeps its label.
        if (rx <= floor_rank || ry <= floor_rank) return false;
        if (rx == ry) {
            if (x.dist + y.dist <= delta) return rx > floor_rank;
            have_x = lh.next(x);
            have_y = lv.next(y);
        } else if (rx > ry) {
            have_x = lh.next(x);
        } else {
            have_y = lv.next(y);
        }
    }
    return false;
}

bool cleaning_query(Vertex v, Vertex h, Dist delta, const LabelSet& lh, const LabelSet& lv,
                    const Ranking& r) {
    return cleaning_query(v, h, delta, LabelView(lh, h, r), LabelView(lv, v, r), r);
}

namespace {

void put_u32(std::ostream& os, std::uint32_t x) {
    char buf[4];
    for (int i = 0; i < 4; ++i) buf[i] = static_cast<char>(x >> (8 * i));
    os.write(buf, 4);
}

void put_u64(std::ostream& os, std::uint64_t x) {
    char buf[8];
    for (int i = 0; i < 8; ++i) buf[i] = static_cast<char>(x >> (8 * i));
    os.write(buf, 8);
}

std::uint32_t get_u32(std::istream& is) {
    unsigned char buf[4];
    if (!is.read(reinterpret_cast<char*>(buf), 4)) throw ParseError("truncated labeling stream");
    std::uint32_t x = 0;
    for (int i = 3; i >= 0; --i) x = (x << 8) | buf[i];
    return x;
}

std::uint64_t get_u64(std::istream& is) {
    unsigned char buf[8];
    if (!is.read(reinterpret_cast<char*>(buf), 8)) throw ParseError("truncated labeling stream");
    std::uint64_t x = 0;
    for (int i = 7; i >= 0; --i) x = (x << 8) | buf[i];
    return x;
}

constexpr char kMagic[4] = {'C', 'H', 'L', 'B'};
constexpr std::uint32_t kVersion = 1;

void write_set(std::ostream& os, const LabelSet& s) {
    put_u32(os, static_cast<std::uint32_t>(s.size()));
    for (const HubLabel& l : s) {
        put_u32(os, l.hub);
        put_u64(os, l.dist);
    }
}

LabelSet read_set(std::istream& is, Vertex n) {
    const std::uint32_t count = get_u32(is);
    if (count > n) throw ParseError("label count exceeds vertex count");
    LabelSet s;
    s.reserve(count);
    for (std::uint32_t i = 0; i < count; ++i) {
        const Vertex hub = get_u32(is);
        const Dist d = get_u64(is);
        if (hub >= n) throw ParseError("hub id out of range");
        s.push_back({hub, d});
    }
    return s;
}

}  // namespace

void save_labeling(const Labeling& l, std::ostream& os) {
    os.write(kMagic, 4);
    put_u32(os, kVersion);
    put_u32(os, l.num_vertices());
    os.put(l.directed() ? 1 : 0);
    for (Vertex v = 0; v < l.num_vertices(); ++v) {
        write_set(os, l.outbound(v));
        if (l.directed()) write_set(os, l.inbound(v));
    }
}

Labeling load_labeling(std::istream& is) {
    char magic[4];
    if (!is.read(magic, 4) || std::string_view(magic, 4) != std::string_view(kMagic, 4))
        throw ParseError("bad labeling magic");
    const std::uint32_t version = get_u32(is);
    if (version != kVersion) throw ParseError("unsupported labeling version " + std::to_string(version));
    const Vertex n = get_u32(is);
    const int dir = is.get();
    if (dir != 0 && dir != 1) throw ParseError("bad directed flag");
    Labeling l(n, dir == 1);
    for (Vertex v = 0; v < n; ++v) {
        l.outbound(v) = read_set(is, n);
        if (l.directed()) l.inbound(v) = read_set(is, n);
    }
    return l;
}

void save_labeling_file(const Labeling& l, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open " + path + " for writing");
    save_labeling(l, f);
    if (!f) throw IoError("failed writing " + path);
}

Labeling load_labeling_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open " + path);
    return load_labeling(f);
}

void write_labeling_text(const Labeling& l, std::ostream& os) {
    for (Vertex v = 0; v < l.num_vertices(); ++v) {
        for (const HubLabel& lab : l.outbound(v)) {
            os << v << ' ' << lab.hub << ' ' << lab.dist;
            if (l.directed()) os << " out";
            os << '\n';
        }
        if (l.directed())
            for (const HubLabel& lab : l.inbound(v))
                os << v << ' ' << lab.hub << ' ' << lab.dist << " in\n";
    }
}

Labeling read_labeling_text(std::istream& is, Vertex n, bool directed) {
    Labeling l(n, directed);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        std::istringstream ss(line);
        long long v, hub;
        unsigned long long dist;
        if (!(ss >> v)) continue;
        if (!(ss >> hub >> dist) || v < 0 || hub < 0 || Vertex(v) >= n || Vertex(hub) >= n)
            throw ParseError("line " + std::to_string(line_no) + ": expected 'v h d'");
        std::string dir;
        ss >> dir;
        if (directed ? (dir != "out" && dir != "in") : !dir.empty())
            throw ParseError("line " + std::to_string(line_no) + ": bad direction column");
        LabelSet& set = (!directed || dir == "out") ? l.outbound(Vertex(v)) : l.inbound(Vertex(v));
        set.push_back({Vertex(hub), dist});
    }
    return l;
}

std::uint64_t labeling_digest(const Labeling& l) {
    std::uint64_t h = fnv1a64("hublab-labeling");
    h = fnv1a64_mix(h, l.num_vertices());
    h = fnv1a64_mix(h, l.directed() ? 1 : 0);
    for (Vertex v = 0; v < l.num_vertices(); ++v) {
        for (const HubLabel& lab : l.outbound(v)) {
            h = fnv1a64_mix(h, lab.hub);
            h = fnv1a64_mix(h, lab.dist);
        }
        if (l.directed())
            for (const HubLabel& lab : l.inbound(v)) {
                h = fnv1a64_mix(h, lab.hub);
                h = fnv1a64_mix(h, lab.dist);
            }
    }
    return h;
}

}  // namespace hublab
