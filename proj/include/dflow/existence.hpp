#pragma once

#include <optional>
#include <string>
#include <vector>

#include "embedded_graph.hpp"
#include "solve.hpp"

namespace dflow {

// A bridge is plane-sided when deleting it leaves at least one component of
// genus zero.  Such a bridge rules out nowhere-identity flows for every
// group: the genus-zero side can be contracted into non-crossing loops at
// one endpoint, after which conservation forces the identity onto the
// bridge.  Dense ids, ascending.
inline std::vector<int> plane_sided_bridges(const EmbeddedGraph& g) {
    std::vector<int> out;
    for (int e : bridges(g)) {
        auto comps = delete_edge(g, e);
        for (const auto& comp : comps)
            if (genus_of(comp) == 0) {
                out.push_back(e);
                break;
            }
    }
    return out;
}

// Smallest odd set B of bridges such that each e in B is a plane-sided
// bridge of g minus (B \ e).  Bridges of g stay bridges after deleting
// other edges, and (g minus (B \ e)) minus e is just g minus B for every e,
// so the condition reduces to: some component of g minus B has genus zero.
// Subsets are tried in ascending bitmask order over the ascending bridge
// list; more than max_bridges bridges aborts instead of enumerating 2^k
// subsets.
inline std::optional<std::vector<int>> odd_bridge_set(const EmbeddedGraph& g,
                                                      int max_bridges = 20) {
    std::vector<int> br = bridges(g);
    int k = int(br.size());
    if (k > max_bridges)
        fail(errc::complexity, g.name + ": " + std::to_string(k) +
                                   " bridges is beyond the subset search cap");
    for (unsigned long long mask = 1; mask < (1ull << k); ++mask) {
        if (__builtin_popcountll(mask) % 2 == 0) continue;
        std::vector<int> b;
        for (int i = 0; i < k; ++i)
            if (mask >> i & 1) b.push_back(br[i]);
        for (const auto& comp : delete_edges(g, b))
            if (genus_of(comp) == 0) return b;
    }
    return std::nullopt;
}

// True when the graph has no plane-sided bridge but does have an odd bridge
// set as above.  Such a graph carries a nowhere-identity flow over the full
// dihedral group on 6 elements yet none over rotation-bounded dihedral
// values below 3 (or 4): the odd cut meets the commutator subgroup only in
// shift ±2 rotations, which cannot cancel an odd number of times.
inline bool obstrd6_check(const EmbeddedGraph& g, int max_bridges = 20) {
    if (!plane_sided_bridges(g).empty()) return false;
    return odd_bridge_set(g, max_bridges).has_value();
}

enum class ExistenceReason {
    no_plane_sided_bridge, // decisive for groups with commutator order > 2
    plane_sided_bridge,    // decisive against, for every group
    odd_bridge_set,        // decisive against, commutator order exactly 2
    no_odd_bridge_set,     // decisive for, commutator order exactly 2
    bridgeless,            // decisive for the order-8 dihedral group
    search_result,         // settled (or abandoned) by exhaustive search
};

inline const char* format_reason(ExistenceReason r) {
    switch (r) {
        case ExistenceReason::no_plane_sided_bridge: return "no-plane-sided-bridge";
        case ExistenceReason::plane_sided_bridge: return "plane-sided-bridge";
        case ExistenceReason::odd_bridge_set: return "odd-bridge-set";
        case ExistenceReason::no_odd_bridge_set: return "no-odd-bridge-set";
        case ExistenceReason::bridgeless: return "bridgeless";
        case ExistenceReason::search_result: return "search";
    }
    return "?";
}

struct ExistenceVerdict {
    std::optional<bool> exists; // nullopt: search exceeded its budget
    ExistenceReason reason = ExistenceReason::search_result;
    int witness_edge = -1;         // plane_sided_bridge
    std::vector<int> witness_set;  // odd_bridge_set
    long long count = -1;          // search_result
};

inline std::string format_verdict(const ExistenceVerdict& v) {
    std::string out = "exists=";
    out += !v.exists ? "unknown" : (*v.exists ? "yes" : "no");
    out += " reason=";
    out += format_reason(v.reason);
    if (v.witness_edge >= 0) out += " edge=" + std::to_string(v.witness_edge);
    if (!v.witness_set.empty()) {
        out += " set=";
        for (size_t i = 0; i < v.witness_set.size(); ++i)
            out += (i ? "," : "") + std::to_string(v.witness_set[i]);
    }
    if (v.count >= 0) out += " count=" + std::to_string(v.count);
    return out;
}

// Structural existence criterion for nowhere-identity flows over the full
// dihedral group of order 2n.  The commutator subgroup has order n (odd n)
// or n/2 (even n); when that exceeds 2 a plane-sided bridge is the only
// obstruction.  Order 8 (n = 4) is decidable only without bridges; with
// bridges, and for the abelian n = 2, the verdict falls back to exhaustive
// counting, reporting unknown if the search space exceeds the budget.
inline ExistenceVerdict devos_verdict(const EmbeddedGraph& g, const GroupCtx& ctx,
                                      SolveOptions opt = {}) {
    if (ctx.kind != GroupKind::dihedral_mod)
        fail(errc::unsupported, "the structural criterion covers full dihedral groups only");
    ExistenceVerdict v;
    long long commutator = ctx.n % 2 == 0 ? ctx.n / 2 : ctx.n;
    if (commutator > 2) {
        auto psb = plane_sided_bridges(g);
        if (psb.empty()) {
            v.exists = true;
            v.reason = ExistenceReason::no_plane_sided_bridge;
        } else {
            v.exists = false;
            v.reason = ExistenceReason::plane_sided_bridge;
            v.witness_edge = psb.front();
        }
        return v;
    }
    if (ctx.n == 4 && bridges(g).empty()) {
        v.exists = true;
        v.reason = ExistenceReason::bridgeless;
        return v;
    }
    opt.nowhere_identity = true;
    v.reason = ExistenceReason::search_result;
    try {
        v.count = count_flows(g, ctx, opt);
        v.exists = v.count > 0;
    } catch (const error& e) {
        if (e.code != errc::complexity) throw;
        v.exists = std::nullopt;
        v.count = -1;
    }
    return v;
}

} // namespace dflow
