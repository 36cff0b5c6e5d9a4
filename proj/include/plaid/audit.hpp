#ifndef PLAID_AUDIT_HPP
#define PLAID_AUDIT_HPP

#include "graph_pet.hpp"
#include "intertwiner.hpp"
#include "plaid_pet.hpp"

namespace plaid {

struct PartitionAudit {
    std::string name;
    long cells = 0;
    long unclean = 0;
    long pairs_checked = 0;
    long overlapping = 0;         // pairs whose interiors meet (exact)
    long unseparated = 0;         // disjoint pairs with no separating functional in the search box
    Rat volume = 0;
    Rat scaled_units = 0;
    Int det_sum = 0;
    long max_extent = 0;          // largest bounding-box side, to justify the translate window
    std::vector<std::string> notes;
};

namespace detail {

inline long extent(const Polytope& P) {
    auto [lo, hi] = P.bbox();
    long e = 0;
    for (int i = 0; i < 3; ++i) e = std::max(e, ceil_rat(hi[i] - lo[i]).get_si());
    return e;
}

/// Exact and functional-based disjointness for one pair.
inline void audit_pair(PartitionAudit& a, const Polytope& P, const IntegerPolytope& Pi, const Polytope& Q, int N, const std::string& what) {
    if (!boxes_overlap(P, Q)) return;
    ++a.pairs_checked;
    bool exact = intersect(P, Q).empty();
    if (!exact) {
        ++a.overlapping;
        a.notes.push_back("interiors meet: " + what);
        return;
    }
    if (!disjoint_interiors(Pi, to_integer(Q, "", "-", Pi.scale), N)) ++a.unseparated;
}

}  // namespace detail

/// The 26 cells: cleanliness, disjointness modulo the lattice window, total volume.
inline PartitionAudit audit_plaid_partition(int clean_N = 3, int sep_N = 5, long window = 3, unsigned jobs = 0) {
    PartitionAudit a;
    a.name = "plaid";
    const auto& cells = plaid_partition().cells();
    a.cells = static_cast<long>(cells.size());
    for (auto& c : cells) {
        if (!clean_check(c.geom, clean_N)) ++a.unclean, a.notes.push_back("not clean: " + c.geom.id);
        auto v = scaled_volume(c.geom);
        a.volume += v.volume;
        a.scaled_units += v.scaled_units;
        a.det_sum += v.det_sum;
        a.max_extent = std::max(a.max_extent, detail::extent(c.hv));
    }
    std::vector<PartitionAudit> part(cells.size());
    parallel_for(cells.size(), jobs, [&](std::size_t i) {
        for (std::size_t j = i; j < cells.size(); ++j)
            for (long x = -window; x <= window; ++x)
                for (long y = -window; y <= window; ++y)
                    for (long z = -window; z <= window; ++z) {
                        if (i == j && x == 0 && y == 0 && z == 0) continue;
                        // count each unordered translate pair once
                        if (i == j && std::make_tuple(x, y, z) < std::make_tuple(0L, 0L, 0L)) continue;
                        Polytope Q = transform(cells[j].hv, lambda1_word(x, y, z));
                        detail::audit_pair(part[i], cells[i].hv, cells[i].geom, Q, sep_N,
                                           cells[i].geom.id + " vs " + cells[j].geom.id + " word " + std::to_string(x) + "," +
                                               std::to_string(y) + "," + std::to_string(z));
                    }
    });
    for (auto& p : part) {
        a.pairs_checked += p.pairs_checked;
        a.overlapping += p.overlapping;
        a.unseparated += p.unseparated;
        a.notes.insert(a.notes.end(), p.notes.begin(), p.notes.end());
    }
    return a;
}

struct GraphAudit {
    PartitionAudit plus, minus;
    bool minus_are_images = true;
    bool no_plus_one_minus_one = true;
};

inline PartitionAudit audit_graph_family(const GraphPartition& G, long window = 2) {
    PartitionAudit a;
    a.name = G.plus() ? "graph+" : "graph-";
    const auto& cells = G.cells();
    a.cells = static_cast<long>(cells.size());
    for (auto& c : cells) {
        a.volume += volume(c.hv);
        a.max_extent = std::max(a.max_extent, detail::extent(c.hv));
    }
    for (std::size_t i = 0; i < cells.size(); ++i)
        for (std::size_t j = i; j < cells.size(); ++j)
            for (long x = -window; x <= window; ++x)
                for (long y = -window; y <= window; ++y)
                    for (long z = -window; z <= window; ++z) {
                        if (i == j && std::make_tuple(x, y, z) <= std::make_tuple(0L, 0L, 0L)) continue;
                        Polytope Q = transform(cells[j].hv, graph_lattice_word(x, y, z));
                        detail::audit_pair(a, cells[i].hv, cells[i].geom, Q, 5, cells[i].geom.id + " vs " + cells[j].geom.id);
                    }
    return a;
}

inline GraphAudit audit_graph_partition() {
    GraphAudit g;
    g.plus = audit_graph_family(graph_plus());
    g.minus = audit_graph_family(graph_minus());
    Affine I = graph_involution();
    const auto& P = graph_plus().cells();
    const auto& M = graph_minus().cells();
    for (std::size_t i = 0; i < P.size(); ++i) {
        if (P[i].label == Edge2{1, -1}) g.no_plus_one_minus_one = false;
        if (transform(P[i].hv, I).verts != M[i].hv.verts) g.minus_are_images = false;
        if (M[i].label != Edge2{-P[i].label[0], -P[i].label[1]}) g.minus_are_images = false;
    }
    return g;
}

struct RtpAudit {
    long cells = 0;
    long non_integral = 0;
    long not_in_parents = 0;
    long overlapping = 0;
    long pairs_checked = 0;
    Rat volume = 0;
    std::vector<std::string> notes;
};

/// Regenerates the reduced triple partition and audits it.
inline RtpAudit audit_rtp(unsigned jobs = 0) {
    RtpAudit a;
    auto raw = triple_partition_raw();
    a.cells = static_cast<long>(raw.size());
    std::vector<IntegerPolytope> geo(raw.size());
    std::vector<int> flags(raw.size());
    parallel_for(raw.size(), jobs, [&](std::size_t i) {
        const auto& t = raw[i];
        geo[i] = to_integer(t.hv, "R" + std::to_string(i), t.code, 60);
        if (geo[i].scale != 60) flags[i] |= 1;
        if (t.null()) return;
        Affine back = exit_affine(t.parents[1].label.a), fwd = exit_affine(t.parents[1].label.b);
        const std::array<Polytope, 3> imgs = {transform(t.hv, back), t.hv, transform(t.hv, fwd)};
        for (int k = 0; k < 3; ++k) {
            const Polytope& outer = t.parents[k].hv;
            for (auto& v : imgs[k].verts)
                if (!outer.contains(v)) flags[i] |= 2;
        }
    });
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (flags[i] & 1) ++a.non_integral, a.notes.push_back("not on the 1/60 grid: R" + std::to_string(i));
        if (flags[i] & 2) ++a.not_in_parents, a.notes.push_back("escapes a parent: R" + std::to_string(i));
        a.volume += volume(raw[i].hv);
    }
    std::vector<long> over(raw.size()), checked(raw.size());
    parallel_for(raw.size(), jobs, [&](std::size_t i) {
        for (std::size_t j = i + 1; j < raw.size(); ++j) {
            if (!boxes_overlap(raw[i].hv, raw[j].hv)) continue;
            ++checked[i];
            if (!intersect(raw[i].hv, raw[j].hv).empty()) ++over[i];
        }
    });
    for (std::size_t i = 0; i < raw.size(); ++i) a.overlapping += over[i], a.pairs_checked += checked[i];
    return a;
}

}  // namespace plaid

#endif  // PLAID_AUDIT_HPP
