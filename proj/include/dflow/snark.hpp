#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <set>
#include <vector>

#include "coloring.hpp"
#include "cycles.hpp"
#include "transform.hpp"

namespace dflow {

// Hamiltonian cycle of g minus the vertex `avoid` (-1 keeps every vertex),
// as dense edges in walk order.  Deterministic backtracking: the walk
// starts at the smallest kept vertex and extends along ascending darts, so
// the witness is reproducible.  Single vertices need a loop, two vertices a
// pair of parallels.
inline std::optional<std::vector<int>> hamiltonian_cycle(const EmbeddedGraph& g, int avoid = -1) {
    int nv = g.num_vertices();
    if (avoid >= nv) fail(errc::parse, g.name + ": no such vertex");
    int want = nv - (avoid >= 0 ? 1 : 0);
    if (want == 0) return std::nullopt;
    int start = avoid == 0 ? 1 : 0;
    if (start >= nv) return std::nullopt;
    std::vector<std::vector<int>> darts(nv);
    for (int v = 0; v < nv; ++v) {
        darts[v] = g.vertex_darts[v];
        std::sort(darts[v].begin(), darts[v].end());
    }
    std::vector<char> seen(nv, 0);
    std::vector<int> path;
    seen[start] = 1;
    std::function<bool(int, int)> rec = [&](int v, int len) -> bool {
        for (int d : darts[v]) {
            int w = g.vertex_of[EmbeddedGraph::alpha(d)];
            if (w == avoid) continue;
            if (len == want) {
                if (w != start) continue;
                if (want == 1 && !g.is_loop(EmbeddedGraph::edge_of(d))) continue;
                if (want == 2 && EmbeddedGraph::edge_of(d) == path.back()) continue;
                path.push_back(EmbeddedGraph::edge_of(d));
                return true;
            }
            if (seen[w]) continue;
            seen[w] = 1;
            path.push_back(EmbeddedGraph::edge_of(d));
            if (rec(w, len + 1)) return true;
            path.pop_back();
            seen[w] = 0;
        }
        return false;
    };
    if (!rec(start, 1)) return std::nullopt;
    return path;
}

// Searches for a simple contractible cycle through edge e.  Simple facial
// walks through e qualify outright (a face bounds a disk); otherwise simple
// cycles through e are enumerated by backtracking over ascending darts and
// tested by cutting.  The budget counts search steps.
inline std::optional<CycleRef> simple_contractible_cycle_through(const EmbeddedGraph& g, int e,
                                                                 long long budget = -1) {
    if (e < 0 || e >= g.num_edges()) fail(errc::parse, g.name + ": no such edge");
    auto fs = trace_faces(g);
    for (const auto& face : fs.faces) {
        bool has = false;
        std::set<int> vs, es;
        for (int d : face) {
            if (EmbeddedGraph::edge_of(d) == e) has = true;
            vs.insert(g.vertex_of[d]);
            es.insert(EmbeddedGraph::edge_of(d));
        }
        if (has && vs.size() == face.size() && es.size() == face.size())
            return CycleRef{face};
    }
    auto [u, w] = g.endpoints(e);
    if (u == w) {
        CycleRef c{{2 * e}};
        if (is_contractible(g, c)) return c;
        return std::nullopt;
    }
    if (budget < 0) budget = default_budget();
    long long steps = 0;
    std::vector<char> seen(g.num_vertices(), 0);
    seen[u] = 1;
    seen[w] = 1;
    std::vector<int> path{g.vertex_of[2 * e] == u ? 2 * e : 2 * e + 1}; // leave u along e
    std::optional<CycleRef> found;
    std::function<bool(int)> rec = [&](int v) -> bool {
        if (++steps > budget)
            fail(errc::complexity, g.name + ": cycle search exceeded the budget");
        std::vector<int> ds = g.vertex_darts[v];
        std::sort(ds.begin(), ds.end());
        for (int d : ds) {
            int x = g.vertex_of[EmbeddedGraph::alpha(d)];
            if (EmbeddedGraph::edge_of(d) == e) continue;
            if (x == u) {
                path.push_back(d);
                CycleRef c{path};
                if (is_contractible(g, c)) {
                    found = std::move(c);
                    return true;
                }
                path.pop_back();
                continue;
            }
            if (seen[x]) continue;
            seen[x] = 1;
            path.push_back(d);
            if (rec(x)) return true;
            path.pop_back();
            seen[x] = 0;
        }
        return false;
    };
    rec(w);
    return found;
}

// The four witness sets for the existence results on snark-like graphs.
// Dense ids, ascending.  v_ah: removing the vertex leaves a Hamiltonian
// graph.  e_avc: removing both endpoints leaves a 3-edge colorable graph.
// e_simple: the edge lies on a simple contractible cycle; v_simple: some
// incident edge does.
struct StructureSets {
    std::vector<int> v_ah;
    std::vector<int> v_simple;
    std::vector<int> e_avc;
    std::vector<int> e_simple;
};

inline StructureSets structure_sets(const EmbeddedGraph& g, int vertex_guard = 30) {
    detail::require_cubic(g, "structure sets are defined for cubic graphs");
    if (g.num_vertices() > vertex_guard)
        fail(errc::complexity, g.name + ": too many vertices for the structure-set search");
    StructureSets out;
    for (int v = 0; v < g.num_vertices(); ++v)
        if (hamiltonian_cycle(g, v)) out.v_ah.push_back(v);
    std::set<int> vsimple;
    for (int e = 0; e < g.num_edges(); ++e)
        if (simple_contractible_cycle_through(g, e)) {
            out.e_simple.push_back(e);
            auto [u, w] = g.endpoints(e);
            vsimple.insert(u);
            vsimple.insert(w);
        }
    out.v_simple.assign(vsimple.begin(), vsimple.end());
    for (int e = 0; e < g.num_edges(); ++e) {
        auto [u, w] = g.endpoints(e);
        if (u == w) continue;
        std::set<int> dead;
        for (int v : {u, w})
            for (int d : g.vertex_darts[v]) dead.insert(EmbeddedGraph::edge_of(d));
        auto comps = delete_edges(g, {dead.begin(), dead.end()});
        bool ok = true;
        for (auto& comp : comps)
            if (comp.num_edges() > 0 && !find_3_edge_coloring(comp)) ok = false;
        if (ok) out.e_avc.push_back(e);
    }
    return out;
}

// Everything except the two endpoints of edge e: the unique edge-bearing
// component left after removing all five incident edges (the endpoints
// survive only as isolated vertices and are dropped).
inline EmbeddedGraph vertex_pair_remainder(const EmbeddedGraph& g, int e) {
    if (e < 0 || e >= g.num_edges()) fail(errc::parse, g.name + ": no such edge");
    auto [u, w] = g.endpoints(e);
    if (u == w) fail(errc::structure, g.name + ": a loop has no vertex pair");
    std::set<int> dead;
    for (int v : {u, w})
        for (int d : g.vertex_darts[v]) dead.insert(EmbeddedGraph::edge_of(d));
    auto comps = delete_edges(g, {dead.begin(), dead.end()});
    EmbeddedGraph* keep = nullptr;
    int heavy = 0;
    for (auto& comp : comps)
        if (comp.num_edges() > 0) {
            ++heavy;
            keep = &comp;
        }
    if (heavy != 1) fail(errc::structure, g.name + ": removing the endpoints disconnects the rest");
    return std::move(*keep);
}

namespace detail {

// Nowhere-zero mod-4 cyclic flow from an edge map whose classes {1,3} and
// {2,3} are both even subgraphs: each class splits into cycles, the {1,3}
// cycles carry 2 and the {2,3} cycles carry 1, accumulated toward the
// reference heads.  Colors 1 and 2 end up odd or even but never zero, and
// color 3 is always odd.
inline FlowAssignment z4_from_classes(const EmbeddedGraph& g, const std::vector<int>& colors) {
    std::vector<long long> shift(g.num_edges(), 0);
    auto run = [&](int lo, int hi, long long c) {
        std::vector<char> used(g.num_edges(), 0);
        auto in_class = [&](int d) {
            int col = colors[EmbeddedGraph::edge_of(d)];
            return col == lo || col == hi;
        };
        for (int e0 = 0; e0 < g.num_edges(); ++e0) {
            if (used[e0] || !in_class(2 * e0)) continue;
            int d = 2 * e0;
            do {
                used[EmbeddedGraph::edge_of(d)] = 1;
                shift[EmbeddedGraph::edge_of(d)] += (d & 1) ? c : -c;
                int a = EmbeddedGraph::alpha(d);
                int nxt = -1;
                for (int dd : g.vertex_darts[g.vertex_of[a]]) {
                    if (dd == a || !in_class(dd)) continue;
                    if (nxt >= 0)
                        fail(errc::structure, g.name + ": color class is not an even subgraph");
                    nxt = dd;
                }
                if (nxt < 0)
                    fail(errc::structure, g.name + ": color class is not an even subgraph");
                d = nxt;
            } while (d != 2 * e0);
        }
    };
    run(1, 3, 2);
    run(2, 3, 1);
    FlowAssignment f = make_flow(g, GroupCtx::cyclic_mod(4));
    for (int e = 0; e < g.num_edges(); ++e) f.value[e] = canonical(f.ctx, Elem{1, shift[e]});
    return f;
}

} // namespace detail

// Flow for an embedded cubic graph with a vertex v whose removal leaves the
// Hamiltonian cycle h_edges (dense edges of g, walk order), provided some
// edge at v lies on a simple contractible cycle.  The cycle minus v is
// colored 1/2 alternating with both edges at that neighbor colored 1, the
// rest colored 3; the induced mod-4 flow on g minus the witness edge feeds
// the removal construction.  Intended for snarks but does not check for
// one: on a 3-edge-colorable graph it simply succeeds the same way.
inline FlowAssignment almost_hamiltonian_flow(const EmbeddedGraph& g, int v,
                                              const std::vector<int>& h_edges) {
    detail::require_cubic(g, "the construction needs a cubic graph");
    if (v < 0 || v >= g.num_vertices()) fail(errc::parse, g.name + ": no such vertex");
    CycleRef h = cycle_from_edges(g, h_edges);
    auto hverts = cycle_vertices(g, h);
    std::set<int> distinct(hverts.begin(), hverts.end());
    if (int(hverts.size()) != g.num_vertices() - 1 || distinct.size() != hverts.size() ||
        distinct.count(v))
        fail(errc::not_hamiltonian,
             g.name + ": walk does not visit exactly the other vertices once each");
    std::vector<int> at_v;
    for (int d : g.vertex_darts[v]) at_v.push_back(EmbeddedGraph::edge_of(d));
    std::sort(at_v.begin(), at_v.end());
    int e1 = -1;
    std::optional<CycleRef> witness;
    for (int e : at_v)
        if ((witness = simple_contractible_cycle_through(g, e))) {
            e1 = e;
            break;
        }
    if (e1 < 0)
        fail(errc::not_simple, g.name + ": no edge at the vertex lies on a simple contractible cycle");
    int v1 = g.vertex_of[2 * e1] == v ? g.vertex_of[2 * e1 + 1] : g.vertex_of[2 * e1];

    auto parts = delete_edge(g, e1);
    if (parts.size() != 1) fail(errc::structure, g.name + ": the witness edge is a bridge");
    EmbeddedGraph del = std::move(parts.front());

    // both edges at v1 get color 1, the rest of the odd cycle alternates
    int k = int(h.darts.size());
    int i0 = -1;
    for (int i = 0; i < k; ++i)
        if (g.vertex_of[h.darts[i]] == v1) i0 = i;
    std::vector<int> colors(del.num_edges(), 3);
    for (int j = 0; j < k; ++j) {
        int ge = EmbeddedGraph::edge_of(h.darts[(i0 + j) % k]);
        int col = (j == 0 || j == k - 1) ? 1 : (j % 2 == 1 ? 2 : 1);
        colors[del.dense_edge(g.edge_ids[ge])] = col;
    }
    auto hflow = detail::z4_from_classes(del, colors);
    auto rep = verify(del, hflow);
    if (!rep.valid() || !rep.nowhere_identity)
        throw std::logic_error(g.name + ": cycle coloring produced a bad flow: " + rep.detail);
    return removal_construction(g, e1, *witness, hflow);
}

// Flow for an embedded cubic graph with an edge e = uv whose endpoint
// removal leaves a 3-edge colorable graph, provided e lies on a simple
// contractible cycle.  c3 colors vertex_pair_remainder(g, e).  The far
// neighbors of u must miss a common color (likewise for v) — reinserting
// their edges with the missed colors extends c3 across g minus e, and the
// induced mod-4 flow feeds the removal construction.
inline FlowAssignment avc_flow(const EmbeddedGraph& g, int e, const EdgeColoring& c3) {
    detail::require_cubic(g, "the construction needs a cubic graph");
    EmbeddedGraph rem = vertex_pair_remainder(g, e);
    if (c3.kind != ColoringKind::proper3 || !is_proper3(rem, c3))
        fail(errc::structure, g.name + ": not a proper 3-coloring of the remainder");
    auto missed = [&](int gv) {
        int rv = rem.dense_vertex(g.vertex_ids[gv]);
        if (rem.degree(rv) != 2)
            fail(errc::structure, g.name + ": far neighbor does not have degree two");
        int sum = 0;
        for (int d : rem.vertex_darts[rv]) sum += c3.color[EmbeddedGraph::edge_of(d)];
        return 6 - sum;
    };
    auto [u, w] = g.endpoints(e);
    int fill[2];
    int idx = 0;
    for (int end : {u, w}) {
        int m = -1;
        for (int d : g.vertex_darts[end]) {
            if (EmbeddedGraph::edge_of(d) == e) continue;
            int far = g.vertex_of[EmbeddedGraph::alpha(d)];
            int mm = missed(far);
            if (m >= 0 && mm != m)
                fail(errc::missed_color_clash,
                     g.name + ": neighbors of vertex " + std::to_string(g.vertex_ids[end]) +
                         " miss different colors");
            m = mm;
        }
        fill[idx++] = m;
    }
    auto parts = delete_edge(g, e);
    if (parts.size() != 1) fail(errc::structure, g.name + ": the edge is a bridge");
    EmbeddedGraph del = std::move(parts.front());
    std::vector<int> colors(del.num_edges(), 0);
    for (int re = 0; re < rem.num_edges(); ++re)
        colors[del.dense_edge(rem.edge_ids[re])] = c3.color[re];
    idx = 0;
    for (int end : {u, w}) {
        for (int d : g.vertex_darts[end])
            if (EmbeddedGraph::edge_of(d) != e)
                colors[del.dense_edge(g.edge_ids[EmbeddedGraph::edge_of(d)])] = fill[idx];
        ++idx;
    }
    auto hflow = detail::z4_from_classes(del, colors);
    auto rep = verify(del, hflow);
    if (!rep.valid() || !rep.nowhere_identity)
        throw std::logic_error(g.name + ": extended coloring produced a bad flow: " + rep.detail);
    auto witness = simple_contractible_cycle_through(g, e);
    if (!witness)
        fail(errc::not_simple, g.name + ": the edge lies on no simple contractible cycle");
    return removal_construction(g, e, *witness, hflow);
}

} // namespace dflow
