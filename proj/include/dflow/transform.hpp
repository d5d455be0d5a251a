#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>

#include "cycles.hpp"
#include "flow.hpp"
#include "solve.hpp"

namespace dflow {

// ---------------------------------------------------------------------------
// Reflection cycles.

// On a cubic graph the reflection-valued edges of a conserving
// nowhere-identity flow form disjoint cycles, and reflections with the same
// shift class never meet; both facts are checked here.  Each cycle starts at
// the reference dart of its smallest edge, cycles are ordered by that edge.
inline std::vector<CycleRef> reflection_cycles(const EmbeddedGraph& g, const FlowAssignment& f) {
    if (int(f.value.size()) != g.num_edges())
        fail(errc::structure, f.name + ": flow does not fit the graph");
    for (int v = 0; v < g.num_vertices(); ++v)
        if (g.degree(v) != 3)
            fail(errc::not_cubic, g.name + ": reflection cycles live on cubic graphs");
    std::vector<char> refl(g.num_edges(), 0);
    for (int e = 0; e < g.num_edges(); ++e) refl[e] = is_reflection(f.value[e]);
    std::vector<int> deg(g.num_vertices(), 0);
    for (int d = 0; d < g.num_darts(); ++d)
        if (refl[EmbeddedGraph::edge_of(d)]) ++deg[g.vertex_of[d]];
    for (int v = 0; v < g.num_vertices(); ++v)
        if (deg[v] != 0 && deg[v] != 2)
            fail(errc::structure, f.name + ": reflection edges do not form disjoint cycles");
    if (f.ctx.n > 0) {
        std::map<long long, std::set<int>> met; // shift class -> vertices met
        for (int e = 0; e < g.num_edges(); ++e) {
            if (!refl[e]) continue;
            auto& verts = met[mod_floor(f.value[e].shift, f.ctx.n)];
            auto [u, w] = g.endpoints(e);
            if (!verts.insert(u).second || !verts.insert(w).second)
                fail(errc::structure, f.name + ": equal reflections share a vertex");
        }
    }
    std::vector<CycleRef> out;
    std::vector<char> used(g.num_edges(), 0);
    for (int e0 = 0; e0 < g.num_edges(); ++e0) {
        if (!refl[e0] || used[e0]) continue;
        CycleRef c;
        int d = 2 * e0;
        do {
            c.darts.push_back(d);
            used[EmbeddedGraph::edge_of(d)] = 1;
            int arrived = EmbeddedGraph::alpha(d);
            d = -1;
            for (int dd : g.vertex_darts[g.vertex_of[arrived]])
                if (dd != arrived && refl[EmbeddedGraph::edge_of(dd)]) {
                    d = dd;
                    break;
                }
            if (d < 0) fail(errc::structure, f.name + ": reflection cycle does not close");
        } while (d != 2 * e0);
        validate_cycle(g, c, true);
        out.push_back(std::move(c));
    }
    return out;
}

// Multiplies every value on a reflection cycle by the rotation of shift -a
// on the right, moving each reflection shift b to b + a.  Conservation
// survives because the two cycle edges at a vertex change by the same a,
// which cancels through the sign flip between them.  Modular contexts only;
// an exact shift could leave the bounded range.
inline FlowAssignment shift_reflection_cycle(const EmbeddedGraph& g, const FlowAssignment& f,
                                             const CycleRef& c, long long a) {
    if (f.ctx.kind != GroupKind::dihedral_mod)
        fail(errc::unsupported, f.name + ": reflection shifts need a modular dihedral context");
    validate_cycle(g, c, true);
    FlowAssignment out = f;
    for (int e : cycle_edges(c)) {
        if (!is_reflection(out.value[e]))
            fail(errc::not_a_reflection_cycle,
                 f.name + ": edge " + std::to_string(g.edge_ids[e]) + " is not a reflection");
        out.value[e] = canonical(out.ctx, Elem{-1, out.value[e].shift + a});
    }
    return out;
}

// Smallest a that makes every reflection shift on the cycle non-zero mod n,
// or nothing when the cycle already carries all n shift classes.
inline std::optional<long long> nonzero_normalizer(const EmbeddedGraph& g,
                                                   const FlowAssignment& f, const CycleRef& c) {
    if (f.ctx.kind != GroupKind::dihedral_mod)
        fail(errc::unsupported, f.name + ": normalization needs a modular dihedral context");
    std::set<long long> seen;
    for (int e : cycle_edges(c)) {
        if (!is_reflection(f.value[e]))
            fail(errc::not_a_reflection_cycle,
                 f.name + ": edge " + std::to_string(g.edge_ids[e]) + " is not a reflection");
        seen.insert(mod_floor(f.value[e].shift, f.ctx.n));
    }
    for (long long a = 0; a < f.ctx.n; ++a)
        if (!seen.count(mod_floor(-a, f.ctx.n))) return a; // b + a = 0 only at b = -a
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Multiplying a flow along a contractible cycle.

namespace detail {

struct DiskChoice {
    char side;              // 'A': right of the walk, 'B': left
    std::vector<int> edges; // dense edges strictly inside
};

// The genus-zero sides of a simple cycle, with their strict interiors.
// Empty when the cycle does not separate.
inline std::vector<DiskChoice> disk_sides(const EmbeddedGraph& g, const CycleRef& c) {
    auto cut = cut_along_cycle(g, c);
    std::vector<DiskChoice> out;
    if (!cut.separating) return out;
    long long emax = g.edge_ids.back();
    std::set<long long> boundary;
    for (int d : c.darts) boundary.insert(g.edge_ids[EmbeddedGraph::edge_of(d)]);
    for (char side : {'A', 'B'}) {
        int piece = side == 'A' ? cut.side_a : cut.side_b;
        if (cut.piece_genus[piece] != 0) continue;
        DiskChoice dc{side, {}};
        for (long long ext : cut.pieces[piece].edge_ids)
            if (ext <= emax && !boundary.count(ext)) dc.edges.push_back(g.dense_edge(ext));
        out.push_back(std::move(dc));
    }
    return out;
}

} // namespace detail

// Multiplies the flow by the reflection (-1,0) on the right along a simple
// contractible cycle: rotations on the cycle become reflections and vice
// versa, keeping the shifts.  Needs a disk side free of reflections; the
// arrows of its interior edges are reversed, which restores conservation
// there.  Cycle edges end up directed along the walk that keeps the disk on
// its right.  The result is re-verified; a failure there is a bug, not bad
// input.
inline FlowAssignment multiply_cycle(const EmbeddedGraph& g, const FlowAssignment& f,
                                     const CycleRef& c) {
    if (f.ctx.kind == GroupKind::cyclic_mod)
        fail(errc::unsupported, f.name + ": cycle multiplication needs a dihedral context");
    for (int v = 0; v < g.num_vertices(); ++v)
        if (g.degree(v) != 3)
            fail(errc::not_cubic, g.name + ": cycle multiplication lives on cubic graphs");
    validate_cycle(g, c, true);
    auto sides = detail::disk_sides(g, c);
    if (sides.empty()) fail(errc::non_contractible, g.name + ": cycle does not bound a disk");
    const detail::DiskChoice* disk = nullptr;
    for (const auto& dc : sides) {
        bool clean = std::none_of(dc.edges.begin(), dc.edges.end(),
                                  [&](int e) { return is_reflection(f.value[e]); });
        if (clean && (!disk || dc.edges.size() < disk->edges.size())) disk = &dc;
    }
    if (!disk) fail(errc::reflection_in_interior, f.name + ": every disk side carries a reflection");
    CycleRef walk = c;
    if (disk->side == 'B') { // re-aim the walk so the disk sits on its right
        walk.darts.clear();
        for (auto it = c.darts.rbegin(); it != c.darts.rend(); ++it)
            walk.darts.push_back(EmbeddedGraph::alpha(*it));
    }
    FlowAssignment out = f;
    for (int d : walk.darts) {
        int e = EmbeddedGraph::edge_of(d);
        int along = EmbeddedGraph::alpha(d); // head dart of an arrow following the walk
        if (is_rotation(out.value[e])) {
            if (out.head[e] != along) flip_edge(out, e);
        } else {
            out.head[e] = along; // reflections read the same both ways
        }
        out.value[e] = mul_exact(out.value[e], Elem{-1, 0});
    }
    for (int e : disk->edges) out.head[e] ^= 1; // reverse the arrow, keep the value
    auto rep = verify(g, out);
    if (!rep.valid())
        throw std::logic_error(f.name + ": cycle multiplication broke the flow: " + rep.detail);
    return out;
}

// ---------------------------------------------------------------------------
// Reduction to a rotation-only flow.

enum class ReduceReason { ok, non_contractible, contains_all_reflections };

struct ReduceOutcome {
    FlowAssignment flow; // reduced, or as far as reduction got
    ReduceReason reason = ReduceReason::ok;
    std::optional<CycleRef> blocked_cycle;
    bool ok() const { return reason == ReduceReason::ok; }
};

// Repeatedly multiplies reflection cycles away.  Each round every cycle
// carrying a zero shift is first moved off zero (smallest usable a); a cycle
// whose shifts cover all classes stops the reduction, as does a
// non-contractible one.  Among the remaining candidates an innermost one --
// fewest edges inside a reflection-free disk side, then smallest edge --
// is multiplied, which turns its reflections into non-zero rotations.
inline ReduceOutcome reduce_to_rotation_flow(const EmbeddedGraph& g, FlowAssignment f) {
    if (f.ctx.kind != GroupKind::dihedral_mod)
        fail(errc::unsupported, f.name + ": reduction needs a modular dihedral context");
    auto rep = verify(g, f);
    if (!rep.valid() || !rep.nowhere_identity)
        fail(errc::invalid_flow, f.name + ": reduction needs a nowhere-identity flow: " + rep.detail);
    while (true) {
        auto cycles = reflection_cycles(g, f);
        if (cycles.empty()) return {std::move(f), ReduceReason::ok, std::nullopt};
        for (const auto& c : cycles) {
            bool zero = false;
            for (int e : cycle_edges(c)) zero |= f.value[e].shift == 0;
            if (!zero) continue;
            auto a = nonzero_normalizer(g, f, c);
            if (!a) return {std::move(f), ReduceReason::contains_all_reflections, c};
            f = shift_reflection_cycle(g, f, c, *a);
        }
        const CycleRef* chosen = nullptr;
        size_t best = 0;
        bool any_contractible = false;
        for (const auto& c : cycles) {
            auto sides = detail::disk_sides(g, c);
            if (sides.empty()) continue;
            any_contractible = true;
            for (const auto& dc : sides) {
                if (std::any_of(dc.edges.begin(), dc.edges.end(),
                                [&](int e) { return is_reflection(f.value[e]); }))
                    continue;
                if (!chosen || dc.edges.size() < best) {
                    chosen = &c;
                    best = dc.edges.size();
                }
            }
        }
        if (!chosen) {
            if (!any_contractible)
                return {std::move(f), ReduceReason::non_contractible, cycles.front()};
            // an innermost contractible cycle always has a clean side
            fail(errc::structure, f.name + ": nested reflection cycles resisted reduction");
        }
        f = multiply_cycle(g, f, *chosen);
    }
}

// ---------------------------------------------------------------------------
// Building a dihedral flow from a cyclic flow that misses one edge.

// Turns a nowhere-zero mod-n cyclic flow h on the graph minus one cycle edge
// into a nowhere-identity flow on the whole graph with shifts below n: h is
// lifted to exact integer rotations, carried over by shared edge ids, the
// missing edge gets the identity, and multiplication along the cycle hides
// it among reflections.
inline FlowAssignment removal_construction(const EmbeddedGraph& g, int e_prime, const CycleRef& c,
                                           const FlowAssignment& h) {
    if (h.ctx.kind != GroupKind::cyclic_mod)
        fail(errc::unsupported, h.name + ": removal construction expects a modular cyclic flow");
    validate_cycle(g, c, true);
    auto ce = cycle_edges(c);
    if (std::find(ce.begin(), ce.end(), e_prime) == ce.end())
        fail(errc::structure, g.name + ": removed edge is not on the cycle");
    auto parts = delete_edge(g, e_prime);
    if (parts.size() != 1) fail(errc::structure, g.name + ": removal disconnected the graph");
    const EmbeddedGraph& del = parts.front();
    auto hrep = verify(del, h);
    if (!hrep.valid() || !hrep.nowhere_identity)
        fail(errc::invalid_flow,
             h.name + ": not a nowhere-zero flow on the reduced graph: " + hrep.detail);
    FlowAssignment hd = h;
    hd.ctx = GroupCtx::dihedral_mod(h.ctx.n);
    auto lifted = lift(del, hd);
    if (!lifted) fail(errc::invalid_flow, h.name + ": no exact integral lift");
    FlowAssignment f = make_flow(g, GroupCtx::dihedral_bounded(h.ctx.n));
    for (int e = 0; e < del.num_edges(); ++e) {
        int eg = g.dense_edge(del.edge_ids[e]);
        f.value[eg] = lifted->value[e];
        f.head[eg] = 2 * eg + (lifted->head[e] & 1);
    }
    f.value[e_prime] = identity(); // becomes the reflection (-1,0) on the cycle
    FlowAssignment out = multiply_cycle(g, f, c);
    auto rep = verify(g, out);
    if (!rep.valid() || !rep.nowhere_identity)
        throw std::logic_error(g.name + ": removal construction broke the flow: " + rep.detail);
    return out;
}

// ---------------------------------------------------------------------------
// Extending a flow over a triangle expansion.

struct TriangleExtension {
    EmbeddedGraph graph;
    FlowAssignment flow;
};

// Expands cubic vertex v into a triangle and extends the flow over the three
// new edges.  A vertex balancing three rotations gets three reflections
// whose shifts telescope around the triangle; a vertex with one rotation
// gets a reflection between its two reflection corners and two rotations
// meeting at the rotation corner, scanning the free reflection shift z for
// values that keep both rotations inside the group.  Dihedral contexts only.
inline TriangleExtension extend_over_triangle(const EmbeddedGraph& g, int v,
                                              const FlowAssignment& f) {
    if (f.ctx.kind == GroupKind::cyclic_mod)
        fail(errc::unsupported, f.name + ": triangle extension needs a dihedral context");
    auto rep = verify(g, f);
    if (!rep.valid() || !rep.nowhere_identity)
        fail(errc::invalid_flow, f.name + ": extension needs a nowhere-identity flow: " + rep.detail);
    EmbeddedGraph g2 = y_delta(g, v); // also rejects non-cubic vertices and loops
    int ne = g.num_edges();
    const auto& ds = g.vertex_darts[v];
    Elem in[3]; // contributions aimed into v, canonical
    int nrefl = 0;
    for (int i = 0; i < 3; ++i) {
        in[i] = canonical(f.ctx, vertex_contribution(f, ds[i]));
        nrefl += is_reflection(in[i]);
    }
    FlowAssignment f2 = make_flow(g2, f.ctx);
    for (int e = 0; e < ne; ++e) {
        f2.value[e] = f.value[e];
        f2.head[e] = f.head[e];
    }
    // triangle edge ne+i runs corner i -> corner i+1; its even dart sits at
    // corner i, its odd dart at corner i+1
    if (nrefl == 0) {
        f2.value[ne + 0] = canonical(f.ctx, Elem{-1, 0});
        f2.value[ne + 1] = canonical(f.ctx, Elem{-1, -in[1].shift});
        f2.value[ne + 2] = canonical(f.ctx, Elem{-1, in[0].shift});
    } else if (nrefl == 2) {
        int rho = 0;
        while (is_reflection(in[rho])) ++rho;
        long long a1 = in[(rho + 1) % 3].shift;
        long long a2 = in[(rho + 2) % 3].shift;
        auto feasible = [&](long long z) {
            if (f.ctx.modular())
                return mod_floor(a1 - z, f.ctx.n) != 0 && mod_floor(z - a2, f.ctx.n) != 0;
            bool bounded = f.ctx.kind == GroupKind::dihedral_bounded;
            auto fits = [&](long long s) { return s != 0 && (!bounded || std::llabs(s) < f.ctx.n); };
            return fits(a1 - z) && fits(z - a2);
        };
        long long limit = f.ctx.n > 0 ? f.ctx.n : std::max(std::llabs(a1), std::llabs(a2)) + 1;
        std::optional<long long> z;
        for (long long m = 0; m < limit && !z; ++m) {
            if (f.ctx.modular()) {
                if (feasible(m)) z = m;
            } else {
                for (long long cand : {m, -m})
                    if (std::llabs(cand) < limit && feasible(cand)) {
                        z = cand;
                        break;
                    }
            }
        }
        if (!z)
            fail(errc::no_feasible_extension,
                 f.name + ": no triangle assignment stays inside the group");
        f2.value[ne + rho] = canonical(f.ctx, Elem{1, a1 - *z});
        f2.head[ne + rho] = 2 * (ne + rho); // into the rotation corner
        f2.value[ne + (rho + 1) % 3] = canonical(f.ctx, Elem{-1, *z});
        f2.value[ne + (rho + 2) % 3] = canonical(f.ctx, Elem{1, *z - a2});
        f2.head[ne + (rho + 2) % 3] = 2 * (ne + (rho + 2) % 3) + 1; // also into it
    } else {
        // a conserving product has even sign, so 1 or 3 reflections cannot
        // balance against the verify above
        fail(errc::invalid_flow, f.name + ": vertex carries an odd number of reflections");
    }
    auto rep2 = verify(g2, f2);
    if (!rep2.valid() || !rep2.nowhere_identity)
        throw std::logic_error(f.name + ": triangle extension broke the flow: " + rep2.detail);
    return {std::move(g2), std::move(f2)};
}

// ---------------------------------------------------------------------------
// Cut-set products.

// Product of the flow over the cut between x and its complement, in
// ascending edge order, every contribution read as leaving x.  For a
// conserving flow the result lies in the commutator subgroup: abelianized,
// the cut sums to the vertex sums over x, which vanish.
inline Elem cutset_product(const EmbeddedGraph& g, const FlowAssignment& f,
                           const std::set<int>& x) {
    for (int v : x)
        if (v < 0 || v >= g.num_vertices()) fail(errc::parse, g.name + ": no such vertex");
    Elem p = identity();
    for (int e = 0; e < g.num_edges(); ++e) {
        auto [u, w] = g.endpoints(e);
        if (x.count(u) == x.count(w)) continue;
        bool head_inside = x.count(g.vertex_of[f.head[e]]) > 0;
        p = mul_exact(p, head_inside ? inv_exact(f.value[e]) : f.value[e]);
    }
    return p;
}

} // namespace dflow
