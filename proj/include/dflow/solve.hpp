#pragma once

#include <cstdlib>
#include <future>
#include <optional>
#include <thread>

#include "flow.hpp"

namespace dflow {

inline long long default_budget() {
    if (const char* s = std::getenv("DFLOW_BUDGET")) {
        char* end = nullptr;
        long long v = std::strtoll(s, &end, 10);
        if (end != s && *end == '\0' && v > 0) return v;
    }
    return 1'000'000'000;
}

struct SolveOptions {
    bool nowhere_identity = true;
    long long budget = -1;                    // -1: read DFLOW_BUDGET / default
    bool parallel = true;                     // counting may fan out
    long long parallel_threshold = 1'000'000; // minimum search-space size
};

namespace detail {

// Spanning-tree scheme: co-tree edges are free variables; tree edges are
// recovered by eliminating leaves, so each step's vertex equation has
// exactly one unknown.
struct SolveScheme {
    std::vector<int> cotree; // ascending dense edges
    std::vector<char> is_tree;
    struct Step {
        int vertex;
        int tree_edge;
        int unknown_dart; // the tree edge's dart at this vertex
    };
    std::vector<Step> steps;
    static constexpr int root = 0;
};

inline SolveScheme build_scheme(const EmbeddedGraph& g) {
    SolveScheme s;
    int nv = g.num_vertices(), ne = g.num_edges();
    s.is_tree.assign(ne, 0);
    std::vector<std::vector<int>> darts_sorted(nv);
    for (int d = 0; d < g.num_darts(); ++d) darts_sorted[g.vertex_of[d]].push_back(d);
    // breadth-first from the root, scanning darts in numeric order
    std::vector<char> seen(nv, 0);
    std::vector<int> order{SolveScheme::root};
    seen[SolveScheme::root] = 1;
    for (size_t qi = 0; qi < order.size(); ++qi)
        for (int d : darts_sorted[order[qi]]) {
            int w = g.vertex_of[EmbeddedGraph::alpha(d)];
            if (!seen[w]) {
                seen[w] = 1;
                s.is_tree[EmbeddedGraph::edge_of(d)] = 1;
                order.push_back(w);
            }
        }
    for (int e = 0; e < ne; ++e)
        if (!s.is_tree[e]) s.cotree.push_back(e);
    std::vector<int> tdeg(nv, 0);
    for (int e = 0; e < ne; ++e)
        if (s.is_tree[e]) {
            ++tdeg[g.vertex_of[2 * e]];
            ++tdeg[g.vertex_of[2 * e + 1]];
        }
    std::vector<char> removed_e(ne, 0), removed_v(nv, 0);
    for (int round = 0; round + 1 < nv; ++round) {
        int leaf = -1;
        for (int v = 0; v < nv; ++v)
            if (v != SolveScheme::root && !removed_v[v] && tdeg[v] == 1) {
                leaf = v;
                break;
            }
        if (leaf < 0) fail(errc::structure, g.name + ": leaf elimination stalled");
        int te = -1, ud = -1;
        for (int d : darts_sorted[leaf]) {
            int e = EmbeddedGraph::edge_of(d);
            if (s.is_tree[e] && !removed_e[e]) {
                te = e;
                ud = d;
                break;
            }
        }
        s.steps.push_back({leaf, te, ud});
        removed_v[leaf] = 1;
        removed_e[te] = 1;
        --tdeg[leaf];
        --tdeg[g.vertex_of[EmbeddedGraph::alpha(ud)]];
    }
    return s;
}

// Fills in tree-edge values (reference heads) for the given co-tree
// assignment; false when the context or the nowhere-identity demand rejects
// the completion.  Arithmetic is exact; modular contexts reduce per edge.
inline bool complete_assignment(const EmbeddedGraph& g, const SolveScheme& s, const GroupCtx& ctx,
                                bool nowhere_identity, std::vector<Elem>& val) {
    auto contribution = [&](int d) {
        const Elem& v = val[d >> 1];
        return (d & 1) == 0 ? v : inv_exact(v);
    };
    for (const auto& st : s.steps) {
        Elem a = identity(), b = identity();
        bool before = true;
        for (int d : g.vertex_darts[st.vertex]) {
            if (d == st.unknown_dart) {
                before = false;
                continue;
            }
            (before ? a : b) = mul_exact(before ? a : b, contribution(d));
        }
        // a * x^eps * b = 1 at this vertex; eps is +1 when the unknown dart
        // is the edge's head (arrow into the leaf)
        Elem x;
        if ((st.unknown_dart & 1) == 0)
            x = mul_exact(inv_exact(a), inv_exact(b));
        else
            x = mul_exact(b, a);
        if (ctx.modular())
            x = canonical(ctx, x);
        else if (ctx.kind == GroupKind::dihedral_bounded && !valid_in(ctx, x))
            return false;
        if (nowhere_identity && is_identity(x)) return false;
        val[st.tree_edge] = x;
    }
    Elem root_product = identity();
    for (int d : g.vertex_darts[SolveScheme::root]) root_product = mul_exact(root_product, contribution(d));
    return is_identity_in(ctx, root_product);
}

inline long long checked_pow(long long base, size_t exp, long long cap) {
    long long r = 1;
    for (size_t i = 0; i < exp; ++i) {
        if (r > cap / std::max(1LL, base)) return cap + 1;
        r *= base;
    }
    return r;
}

} // namespace detail

// Enumerates flows in deterministic order: co-tree edges ascending, each
// running through the context's elements (rotations by shift, then
// reflections).  The callback may return false to stop early.
inline void enumerate_flows(const EmbeddedGraph& g, const GroupCtx& ctx, const SolveOptions& opt,
                            const std::function<bool(FlowAssignment&&)>& cb) {
    long long budget = opt.budget >= 0 ? opt.budget : default_budget();
    auto scheme = detail::build_scheme(g);
    auto candidates = elements(ctx, !opt.nowhere_identity);
    long long space =
        detail::checked_pow((long long)candidates.size(), scheme.cotree.size(), budget);
    if (space > budget)
        fail(errc::complexity, g.name + ": search space exceeds the budget of " +
                                   std::to_string(budget));
    std::vector<Elem> val(g.num_edges());
    std::function<bool(size_t)> rec = [&](size_t i) -> bool {
        if (i == scheme.cotree.size()) {
            if (!detail::complete_assignment(g, scheme, ctx, opt.nowhere_identity, val))
                return true;
            FlowAssignment f = make_flow(g, ctx);
            f.value = val;
            return cb(std::move(f));
        }
        for (const Elem& c : candidates) {
            val[scheme.cotree[i]] = c;
            if (!rec(i + 1)) return false;
        }
        return true;
    };
    rec(0);
}

inline std::optional<FlowAssignment> find_flow(const EmbeddedGraph& g, const GroupCtx& ctx,
                                               const SolveOptions& opt = {}) {
    std::optional<FlowAssignment> out;
    enumerate_flows(g, ctx, opt, [&](FlowAssignment&& f) {
        out = std::move(f);
        return false;
    });
    return out;
}

inline long long count_flows(const EmbeddedGraph& g, const GroupCtx& ctx,
                             const SolveOptions& opt = {}) {
    long long budget = opt.budget >= 0 ? opt.budget : default_budget();
    auto scheme = detail::build_scheme(g);
    auto candidates = elements(ctx, !opt.nowhere_identity);
    long long space =
        detail::checked_pow((long long)candidates.size(), scheme.cotree.size(), budget);
    if (space > budget)
        fail(errc::complexity, g.name + ": search space exceeds the budget of " +
                                   std::to_string(budget));

    auto count_with_first = [&](size_t lo, size_t hi) {
        std::vector<Elem> val(g.num_edges());
        long long count = 0;
        std::function<void(size_t)> rec = [&](size_t i) {
            if (i == scheme.cotree.size()) {
                if (detail::complete_assignment(g, scheme, ctx, opt.nowhere_identity, val))
                    ++count;
                return;
            }
            for (const Elem& c : candidates) {
                val[scheme.cotree[i]] = c;
                rec(i + 1);
            }
        };
        if (scheme.cotree.empty()) {
            if (lo == 0) rec(0); // nothing free: evaluate once
            return count;
        }
        for (size_t k = lo; k < hi; ++k) {
            val[scheme.cotree[0]] = candidates[k];
            rec(1);
        }
        return count;
    };

    unsigned workers = std::thread::hardware_concurrency();
    if (!opt.parallel || space < opt.parallel_threshold || scheme.cotree.empty() ||
        workers < 2 || candidates.size() < 2)
        return count_with_first(0, candidates.size());

    size_t slices = std::min<size_t>(candidates.size(), workers);
    std::vector<std::future<long long>> futs;
    for (size_t s = 0; s < slices; ++s) {
        size_t lo = candidates.size() * s / slices;
        size_t hi = candidates.size() * (s + 1) / slices;
        futs.push_back(std::async(std::launch::async, count_with_first, lo, hi));
    }
    long long total = 0;
    for (auto& f : futs) total += f.get();
    return total;
}

// Replaces each modular value by an exact representative with shift magnitude
// below n, keeping conservation exact in the infinite group.  Preimages per
// edge: shift a in (0,n) lifts to a-n or a; shift 0 needs a reflection.
// Returns the first lift in that order, or nothing.
inline std::optional<FlowAssignment> lift(const EmbeddedGraph& g, const FlowAssignment& f) {
    if (!f.ctx.modular()) fail(errc::unsupported, f.name + ": lift needs a modular context");
    long long n = f.ctx.n;
    int ne = g.num_edges();
    std::vector<std::vector<Elem>> pre(ne);
    for (int e = 0; e < ne; ++e) {
        Elem v = f.value[e];
        if (v.shift == 0) {
            if (v.sign > 0) return std::nullopt; // identity never lifts
            pre[e] = {Elem{-1, 0}};
        } else {
            pre[e] = {Elem{v.sign, v.shift - n}, Elem{v.sign, v.shift}};
        }
    }
    // vertices whose incident edges are all decided after assigning edge e
    std::vector<int> last_edge(g.num_vertices(), -1);
    for (int d = 0; d < g.num_darts(); ++d)
        last_edge[g.vertex_of[d]] = std::max(last_edge[g.vertex_of[d]], d >> 1);
    std::vector<std::vector<int>> check_at(ne);
    for (int v = 0; v < g.num_vertices(); ++v)
        if (last_edge[v] >= 0) check_at[last_edge[v]].push_back(v);

    FlowAssignment out = f;
    out.ctx = GroupCtx::dihedral_bounded(n);
    std::function<bool(int)> rec = [&](int e) -> bool {
        if (e == ne) return true;
        for (const Elem& c : pre[e]) {
            out.value[e] = c;
            bool ok = true;
            for (int v : check_at[e])
                if (!is_identity(kirchhoff_product(g, out, v))) {
                    ok = false;
                    break;
                }
            if (ok && rec(e + 1)) return true;
        }
        return false;
    };
    if (g.num_edges() == 0 || rec(0)) return out;
    return std::nullopt;
}

} // namespace dflow
