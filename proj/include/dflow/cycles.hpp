#pragma once

#include <set>

#include "embedded_graph.hpp"

namespace dflow {

// Closed walk as a dart sequence: darts[i] leaves vertex v_i along edge e_i
// toward v_{i+1}, indices mod k.  A face orbit is already in this shape.
struct CycleRef {
    std::vector<int> darts;
};

// Checks the walk closes up; with require_simple also that vertices and
// edges are pairwise distinct (a single loop edge counts as simple).
inline void validate_cycle(const EmbeddedGraph& g, const CycleRef& c, bool require_simple = true) {
    size_t k = c.darts.size();
    if (k == 0) fail(errc::structure, g.name + ": empty cycle");
    std::set<int> vs, es;
    for (size_t i = 0; i < k; ++i) {
        int d = c.darts[i];
        if (d < 0 || d >= g.num_darts()) fail(errc::structure, g.name + ": cycle dart out of range");
        int nxt = c.darts[(i + 1) % k];
        if (g.vertex_of[EmbeddedGraph::alpha(d)] != g.vertex_of[nxt])
            fail(errc::structure, g.name + ": cycle darts do not form a closed walk");
        vs.insert(g.vertex_of[d]);
        es.insert(EmbeddedGraph::edge_of(d));
    }
    if (require_simple && (vs.size() != k || es.size() != k))
        fail(errc::structure, g.name + ": cycle is not simple");
}

inline std::vector<int> cycle_vertices(const EmbeddedGraph& g, const CycleRef& c) {
    std::vector<int> out;
    for (int d : c.darts) out.push_back(g.vertex_of[d]);
    return out;
}

inline std::vector<int> cycle_edges(const CycleRef& c) {
    std::vector<int> out;
    for (int d : c.darts) out.push_back(EmbeddedGraph::edge_of(d));
    return out;
}

// Orients a closed walk given as a dense-edge sequence.  The start vertex is
// the endpoint shared by the first and last edge (smaller dense index if
// both qualify, as with a two-edge cycle of parallels).
inline CycleRef cycle_from_edges(const EmbeddedGraph& g, const std::vector<int>& edges) {
    if (edges.empty()) fail(errc::structure, g.name + ": empty edge list");
    for (int e : edges)
        if (e < 0 || e >= g.num_edges()) fail(errc::parse, g.name + ": no such edge");
    if (edges.size() == 1) {
        if (!g.is_loop(edges[0]))
            fail(errc::structure, g.name + ": single-edge cycle must be a loop");
        return CycleRef{{2 * edges[0]}};
    }
    auto [a, b] = g.endpoints(edges.front());
    auto [c, d] = g.endpoints(edges.back());
    int v0 = -1;
    for (int cand : {std::min(a, b), std::max(a, b)})
        if (cand == c || cand == d) {
            v0 = cand;
            break;
        }
    if (v0 < 0) fail(errc::structure, g.name + ": edge sequence does not close up");
    CycleRef out;
    int v = v0;
    for (int e : edges) {
        int dart;
        if (g.vertex_of[2 * e] == v)
            dart = 2 * e;
        else if (g.vertex_of[2 * e + 1] == v)
            dart = 2 * e + 1;
        else
            fail(errc::structure, g.name + ": edge sequence is not a walk");
        out.darts.push_back(dart);
        v = g.vertex_of[EmbeddedGraph::alpha(dart)];
    }
    if (v != v0) fail(errc::structure, g.name + ": edge sequence does not close up");
    return out;
}

// Result of slicing the surface along a simple cycle and capping the two
// boundary circles with disks.  Side A is the side to the right of the
// walk direction (the sigma-successor side of each departing dart).
struct CutResult {
    std::vector<EmbeddedGraph> pieces; // 1 (non-separating) or 2
    std::vector<int> piece_genus;
    bool separating = false;
    int side_a = 0, side_b = 0; // piece index holding each boundary copy
};

inline CutResult cut_along_cycle(const EmbeddedGraph& g, const CycleRef& c) {
    validate_cycle(g, c, true);
    int k = int(c.darts.size());
    int ne = g.num_edges();
    int nv = g.num_vertices();
    long long emax = g.edge_ids.back();
    long long vmax = g.vertex_ids.back();

    detail::RawMap rm;
    rm.name = g.name;
    rm.vertex_ids = g.vertex_ids;
    rm.edge_ids = g.edge_ids;
    for (int i = 0; i < k; ++i) {
        rm.vertex_ids.push_back(vmax + 1 + i); // copy of v_i for side B
        rm.edge_ids.push_back(emax + 1 + i);   // copy of e_i for side B
    }
    rm.sigma.resize(2 * (ne + k));
    rm.vertex_of.resize(2 * (ne + k));
    std::copy(g.sigma.begin(), g.sigma.end(), rm.sigma.begin());
    std::copy(g.vertex_of.begin(), g.vertex_of.end(), rm.vertex_of.begin());

    for (int i = 0; i < k; ++i) {
        int j = (i + k - 1) % k;
        int cin = EmbeddedGraph::alpha(c.darts[j]); // arriving dart at v_i
        int cout = c.darts[i];                      // departing dart at v_i
        int cin_b = 2 * (ne + j) + (cin & 1);
        int cout_b = 2 * (ne + i) + (cout & 1);
        // split the rotation at v: darts after cin up to cout stay on side A,
        // darts after cout up to cin move to the B copy of v
        std::vector<int> a_run, b_run;
        for (int d = g.sigma[cin]; d != cout; d = g.sigma[d]) a_run.push_back(d);
        for (int d = g.sigma[cout]; d != cin; d = g.sigma[d]) b_run.push_back(d);
        int prev = cin;
        for (int d : a_run) {
            rm.sigma[prev] = d;
            prev = d;
        }
        rm.sigma[prev] = cout;
        rm.sigma[cout] = cin; // closes the A rotation; the A cap face appears here
        int vb = nv + i;
        rm.vertex_of[cin_b] = vb;
        rm.vertex_of[cout_b] = vb;
        prev = cout_b;
        for (int d : b_run) {
            rm.sigma[prev] = d;
            rm.vertex_of[d] = vb;
            prev = d;
        }
        rm.sigma[prev] = cin_b;
        rm.sigma[cin_b] = cout_b; // closes the B rotation and its cap face
    }

    CutResult res;
    res.pieces = detail::split_components(rm);
    int base_genus = trace_faces(g).genus;
    int total = 0;
    for (auto& p : res.pieces) {
        res.piece_genus.push_back(trace_faces(p).genus);
        total += res.piece_genus.back();
    }
    res.separating = res.pieces.size() == 2;
    auto piece_with_edge = [&](long long ext) {
        for (size_t i = 0; i < res.pieces.size(); ++i) {
            auto& ids = res.pieces[i].edge_ids;
            if (std::binary_search(ids.begin(), ids.end(), ext)) return int(i);
        }
        fail(errc::structure, g.name + ": lost a boundary copy while cutting");
    };
    res.side_a = piece_with_edge(g.edge_ids[EmbeddedGraph::edge_of(c.darts[0])]);
    res.side_b = piece_with_edge(emax + 1);
    // surgery bookkeeping: capping restores exactly the genus split
    if (res.separating) {
        if (total != base_genus || res.side_a == res.side_b)
            fail(errc::structure, g.name + ": cut accounting failed");
        if (res.pieces.size() != 2) fail(errc::structure, g.name + ": cut accounting failed");
    } else {
        if (res.pieces.size() != 1 || total != base_genus - 1 || res.side_a != res.side_b)
            fail(errc::structure, g.name + ": cut accounting failed");
    }
    return res;
}

// A simple cycle bounds a disk exactly when it separates and at least one
// side caps off to the sphere.
inline bool is_contractible(const EmbeddedGraph& g, const CycleRef& c) {
    auto cut = cut_along_cycle(g, c);
    if (!cut.separating) return false;
    return cut.piece_genus[cut.side_a] == 0 || cut.piece_genus[cut.side_b] == 0;
}

struct DiskSide {
    char side = 'A';        // 'A': disk right of the walk, 'B': left
    std::vector<int> edges; // dense edges of g strictly inside the disk
};

// Picks the disk bounded by a contractible cycle.  When both sides are
// disks the one with fewer interior edges wins (then lexicographic order,
// then side A).
inline DiskSide disk_interior(const EmbeddedGraph& g, const CycleRef& c) {
    auto cut = cut_along_cycle(g, c);
    if (!cut.separating) fail(errc::non_contractible, g.name + ": cycle does not separate");
    long long emax = g.edge_ids.back();
    std::set<long long> boundary;
    for (int d : c.darts) boundary.insert(g.edge_ids[EmbeddedGraph::edge_of(d)]);
    auto interior = [&](int piece) {
        std::vector<int> out;
        for (long long ext : cut.pieces[piece].edge_ids)
            if (ext <= emax && !boundary.count(ext)) out.push_back(g.dense_edge(ext));
        return out;
    };
    bool a_disk = cut.piece_genus[cut.side_a] == 0;
    bool b_disk = cut.piece_genus[cut.side_b] == 0;
    if (!a_disk && !b_disk) fail(errc::non_contractible, g.name + ": neither side is a disk");
    DiskSide res;
    if (a_disk && !b_disk) {
        res.side = 'A';
        res.edges = interior(cut.side_a);
    } else if (b_disk && !a_disk) {
        res.side = 'B';
        res.edges = interior(cut.side_b);
    } else {
        auto ia = interior(cut.side_a), ib = interior(cut.side_b);
        bool pick_a = ia.size() != ib.size() ? ia.size() < ib.size() : ia <= ib;
        res.side = pick_a ? 'A' : 'B';
        res.edges = pick_a ? std::move(ia) : std::move(ib);
    }
    return res;
}

} // namespace dflow
