#include <catch2/catch_amalgamated.hpp>

#include "dflow/solve.hpp"
#include "helpers.hpp"

using namespace dflow;

namespace {

const char* theta_torus_txt =
    "graph theta_t\n"
    "vertex 0: 0 2 4\n"
    "vertex 1: 1 3 5\n"
    "edge 0: 0 1\nedge 1: 2 3\nedge 2: 4 5\n";

const char* bouquet_txt = "graph l2i\nvertex 0: 0 2 1 3\nedge 0: 0 1\nedge 1: 2 3\n";

const char* k4_plane_txt =
    "graph k4\n"
    "vertex 0: 0 4 2\n"
    "vertex 1: 6 8 1\n"
    "vertex 2: 3 10 7\n"
    "vertex 3: 11 5 9\n"
    "edge 0: 0 1\nedge 1: 2 3\nedge 2: 4 5\n"
    "edge 3: 6 7\nedge 4: 8 9\nedge 5: 10 11\n";

EmbeddedGraph parse(const char* t) { return parse_graph(std::string(t)); }

// oracle: run the odometer over every assignment and verify directly,
// bypassing the spanning-tree solver entirely
long long brute_count(const EmbeddedGraph& g, GroupCtx ctx, bool nowhere_identity = true) {
    auto cands = elements(ctx, !nowhere_identity);
    auto f = make_flow(g, ctx);
    std::vector<size_t> idx(g.num_edges(), 0);
    long long count = 0;
    while (true) {
        for (int e = 0; e < g.num_edges(); ++e) f.value[e] = cands[idx[e]];
        auto r = verify(g, f);
        if (r.valid() && (!nowhere_identity || r.nowhere_identity)) ++count;
        int e = 0;
        while (e < g.num_edges() && ++idx[e] == cands.size()) idx[e++] = 0;
        if (e == g.num_edges()) break;
    }
    return count;
}

} // namespace

TEST_CASE("solver counts agree with exhaustive verification") {
    auto theta = parse(theta_torus_txt);
    auto bouquet = parse(bouquet_txt);
    auto k4 = parse(k4_plane_txt);
    for (auto ctx : {GroupCtx::dihedral_mod(2), GroupCtx::dihedral_mod(3),
                     GroupCtx::dihedral_bounded(2), GroupCtx::dihedral_bounded(3),
                     GroupCtx::cyclic_mod(2), GroupCtx::cyclic_mod(3), GroupCtx::cyclic_mod(4)}) {
        CAPTURE(format_ctx(ctx));
        REQUIRE(count_flows(theta, ctx) == brute_count(theta, ctx));
        REQUIRE(count_flows(bouquet, ctx) == brute_count(bouquet, ctx));
        REQUIRE(count_flows(theta, ctx, {.nowhere_identity = false}) ==
                brute_count(theta, ctx, false));
    }
    for (auto ctx : {GroupCtx::dihedral_mod(2), GroupCtx::dihedral_bounded(2),
                     GroupCtx::cyclic_mod(3), GroupCtx::cyclic_mod(5)}) {
        CAPTURE(format_ctx(ctx));
        REQUIRE(count_flows(k4, ctx) == brute_count(k4, ctx));
    }
}

TEST_CASE("hand-counted spaces pin the solver down") {
    auto theta = parse(theta_torus_txt);
    // mod 2 the group is abelian: f2 = (f0 f1)^-1, nonzero unless f1 = f0
    REQUIRE(count_flows(theta, GroupCtx::dihedral_mod(2)) == 6);
    // mod 3 both vertex orders force f1, f2 to commute: only r,r,r and its square
    REQUIRE(count_flows(theta, GroupCtx::dihedral_mod(3)) == 2);
    // exact values: both vertex orders must balance, which kills every
    // sign pattern at n = 2
    REQUIRE(count_flows(theta, GroupCtx::dihedral_bounded(2)) == 0);
    // exact rotations carrying shifts from {-2,...,2} summing to zero
    REQUIRE(count_flows(theta, GroupCtx::dihedral_bounded(3)) == 6);
    int rotation_only = 0;
    enumerate_flows(theta, GroupCtx::dihedral_bounded(3), {}, [&](FlowAssignment&& f) {
        REQUIRE(verify(theta, f).valid());
        for (auto& v : f.value) REQUIRE(is_rotation(v));
        ++rotation_only;
        return true;
    });
    REQUIRE(rotation_only == 6);

    // interleaved bouquet needs an exactly commuting pair: 2x2 rotation
    // pairs plus 3 equal-reflection pairs
    auto bouquet = parse(bouquet_txt);
    REQUIRE(count_flows(bouquet, GroupCtx::dihedral_bounded(2)) == 7);
    REQUIRE(count_flows(bouquet, GroupCtx::dihedral_mod(2)) == 9);

    // abelian counts only see the group order (K4 flow polynomial at 4)
    auto k4 = parse(k4_plane_txt);
    REQUIRE(count_flows(k4, GroupCtx::dihedral_mod(2)) == count_flows(k4, GroupCtx::cyclic_mod(4)));
    REQUIRE(count_flows(k4, GroupCtx::cyclic_mod(2)) == 0); // odd degrees
}

TEST_CASE("abelian counts ignore the embedding") {
    auto m = abstract_of(parse(k4_plane_txt));
    long long want = -1;
    enumerate_rotation_systems(m, [&](EmbeddedGraph&& g, long long) {
        long long c = count_flows(g, GroupCtx::dihedral_mod(2));
        if (want < 0) want = c;
        REQUIRE(c == want);
        return true;
    });
    REQUIRE(want == 6);
}

TEST_CASE("the first flow found is deterministic") {
    auto theta = parse(theta_torus_txt);
    auto f = find_flow(theta, GroupCtx::dihedral_mod(3));
    REQUIRE(f.has_value());
    // co-tree edges 1,2 take the first candidate r; edge 0 completes to r
    REQUIRE(f->value == std::vector<Elem>{{1, 1}, {1, 1}, {1, 1}});
    REQUIRE(verify(theta, *f).valid());
    REQUIRE_FALSE(find_flow(theta, GroupCtx::dihedral_bounded(2)).has_value());

    int seen = 0;
    enumerate_flows(theta, GroupCtx::dihedral_mod(2), {}, [&](FlowAssignment&&) {
        return ++seen < 3;
    });
    REQUIRE(seen == 3);
}

TEST_CASE("counting in parallel changes nothing") {
    auto k4 = parse(k4_plane_txt);
    SolveOptions seq{.parallel = false};
    SolveOptions par{.parallel = true, .parallel_threshold = 1};
    for (auto ctx : {GroupCtx::dihedral_mod(3), GroupCtx::dihedral_bounded(3)}) {
        CAPTURE(format_ctx(ctx));
        REQUIRE(count_flows(k4, ctx, par) == count_flows(k4, ctx, seq));
    }
}

TEST_CASE("the budget guards the search space") {
    auto k4 = parse(k4_plane_txt);
    SolveOptions tiny{.budget = 10};
    REQUIRE_THROWS_MATCHES(count_flows(k4, GroupCtx::dihedral_mod(3), tiny), error,
                           ErrcIs(errc::complexity));
    REQUIRE_THROWS_MATCHES(find_flow(k4, GroupCtx::dihedral_mod(3), tiny), error,
                           ErrcIs(errc::complexity));
    // environment override applies when no explicit budget is set
    setenv("DFLOW_BUDGET", "10", 1);
    REQUIRE(default_budget() == 10);
    REQUIRE_THROWS_MATCHES(count_flows(k4, GroupCtx::dihedral_mod(3)), error,
                           ErrcIs(errc::complexity));
    unsetenv("DFLOW_BUDGET");
    REQUIRE(default_budget() == 1'000'000'000);
}

TEST_CASE("lifting modular flows to exact values") {
    auto theta = parse(theta_torus_txt);
    // rotations 1,1,2 mod 4: the exact lift -3,1,2 sums to zero
    auto base = make_flow(theta, GroupCtx::dihedral_mod(4));
    base.value = {{1, 1}, {1, 1}, {1, 2}};
    REQUIRE(verify(theta, base).valid());
    auto lifted = lift(theta, base);
    REQUIRE(lifted.has_value());
    REQUIRE(lifted->ctx == GroupCtx::dihedral_bounded(4));
    REQUIRE(lifted->value == std::vector<Elem>{{1, -3}, {1, 1}, {1, 2}});
    auto r = verify(theta, *lifted);
    REQUIRE(r.valid());
    REQUIRE(r.nowhere_identity);

    // same shifts read as a cyclic flow lift identically
    auto cyc = make_flow(theta, GroupCtx::cyclic_mod(4));
    cyc.value = {{1, 1}, {1, 1}, {1, 2}};
    auto lc = lift(theta, cyc);
    REQUIRE(lc.has_value());
    REQUIRE(lc->value == lifted->value);

    // the mixed-sign flow that balances mod 2 has no exact representative
    auto foot2 = make_flow(theta, GroupCtx::dihedral_mod(2));
    foot2.head = {1, 3, 5}; // arrows into vertex 1
    foot2.value = {{1, 1}, {-1, 1}, {-1, 0}};
    REQUIRE(verify(theta, foot2).valid());
    REQUIRE_FALSE(lift(theta, foot2).has_value());

    // identity values never lift
    auto with_id = make_flow(theta, GroupCtx::dihedral_mod(4));
    with_id.value = {{1, 0}, {1, 1}, {1, 3}};
    REQUIRE(verify(theta, with_id).valid());
    REQUIRE_FALSE(lift(theta, with_id).has_value());

    auto exact = make_flow(theta, GroupCtx::dihedral_bounded(4));
    REQUIRE_THROWS_MATCHES(lift(theta, exact), error, ErrcIs(errc::unsupported));

    // lifts preserve the stored orientation
    auto flipped = base;
    flip_edge(flipped, 0);
    auto lf = lift(theta, flipped);
    REQUIRE(lf.has_value());
    REQUIRE(lf->head == flipped.head);
    REQUIRE(verify(theta, *lf).valid());
}
