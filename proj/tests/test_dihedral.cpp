#include <catch2/catch_amalgamated.hpp>

#include "dflow/dihedral.hpp"

using namespace dflow;

namespace {

// Independent oracle: 2x2 integer matrices (s a; 0 1).
struct Mat {
    long long m00, m01, m10, m11;
};
Mat to_mat(Elem e) { return {e.sign, e.shift, 0, 1}; }
Mat mat_mul(Mat a, Mat b) {
    return {a.m00 * b.m00 + a.m01 * b.m10, a.m00 * b.m01 + a.m01 * b.m11,
            a.m10 * b.m00 + a.m11 * b.m10, a.m10 * b.m01 + a.m11 * b.m11};
}
bool mat_eq(Mat a, Elem e) {
    Mat b = to_mat(e);
    return a.m00 == b.m00 && a.m01 == b.m01 && a.m10 == b.m10 && a.m11 == b.m11;
}

std::vector<Elem> range_elems(long long lo, long long hi) {
    std::vector<Elem> v;
    for (int s : {1, -1})
        for (long long a = lo; a <= hi; ++a) v.push_back({s, a});
    return v;
}

} // namespace

TEST_CASE("exact product matches the matrix oracle") {
    for (Elem a : range_elems(-10, 10))
        for (Elem b : range_elems(-10, 10)) {
            Elem p = mul_exact(a, b);
            REQUIRE(mat_eq(mat_mul(to_mat(a), to_mat(b)), p));
        }
}

TEST_CASE("identity, inverses, involutions") {
    Elem id = identity();
    CHECK(mul_exact(id, Elem{-1, 3}) == Elem{-1, 3});
    CHECK(inv_exact(Elem{1, 2}) == Elem{1, -2});
    for (Elem a : range_elems(-10, 10)) {
        CHECK(is_identity(mul_exact(a, inv_exact(a))));
        CHECK(is_identity(mul_exact(inv_exact(a), a)));
        if (is_reflection(a)) {
            CHECK(inv_exact(a) == a); // reflections are their own inverses
            CHECK(is_identity(mul_exact(a, a)));
        }
    }
}

TEST_CASE("associativity, exhaustive over small shifts") {
    auto elems = range_elems(-4, 4);
    for (Elem a : elems)
        for (Elem b : elems)
            for (Elem c : elems)
                CHECK(mul_exact(mul_exact(a, b), c) == mul_exact(a, mul_exact(b, c)));
}

TEST_CASE("modular context reduces like the modular oracle") {
    // s*r in the order-6 group: (-1,0)*(+1,1) = (-1,-1) = (-1,2) mod 3
    auto d6 = GroupCtx::dihedral_mod(3);
    Elem s{-1, 0}, r{1, 1};
    CHECK(mul(d6, r, s).value() == Elem{-1, 1});
    CHECK(mul(d6, s, r).value() == Elem{-1, 2});

    for (long long n = 2; n <= 8; ++n) {
        auto ctx = GroupCtx::dihedral_mod(n);
        for (Elem a : range_elems(-10, 10))
            for (Elem b : range_elems(-10, 10)) {
                Elem got = mul(ctx, a, b).value();
                Elem exact = mul_exact(a, b);
                CHECK(got.sign == exact.sign);
                CHECK(got.shift == ((exact.shift % n) + n) % n);
            }
    }
}

TEST_CASE("modular laws: associativity and identity, n in 2..8") {
    for (long long n = 2; n <= 8; ++n) {
        auto ctx = GroupCtx::dihedral_mod(n);
        auto elems = elements(ctx);
        for (Elem a : elems) {
            CHECK(mul(ctx, a, identity()).value() == a);
            CHECK(mul(ctx, identity(), a).value() == a);
            CHECK(is_identity(mul(ctx, a, inverse(ctx, a)).value()));
            for (Elem b : elems)
                for (Elem c : elems)
                    CHECK(mul(ctx, mul(ctx, a, b).value(), c).value() ==
                          mul(ctx, a, mul(ctx, b, c).value()).value());
        }
    }
}

TEST_CASE("projection is a homomorphism") {
    for (long long n = 2; n <= 8; ++n)
        for (Elem a : range_elems(-10, 10))
            for (Elem b : range_elems(-10, 10))
                CHECK(project(mul_exact(a, b), n) ==
                      mul(GroupCtx::dihedral_mod(n), project(a, n), project(b, n)).value());
    CHECK(project(Elem{1, -2}, 3) == Elem{1, 1});
    CHECK(project(identity(), 5) == identity());
    CHECK(project(Elem{-1, -3}, 4) == Elem{-1, 1});
}

TEST_CASE("bounded context rejects out-of-range products, never silently reduces") {
    auto ctx = GroupCtx::dihedral_bounded(4);
    CHECK(!mul(ctx, Elem{1, 3}, Elem{1, 3}).has_value());
    CHECK(mul(ctx, Elem{1, 3}, Elem{1, -3}).value() == identity());
    CHECK_THROWS_AS(mul_or_fail(ctx, Elem{1, 2}, Elem{1, 2}), error);
    // inverses stay in range
    for (Elem a : range_elems(-3, 3)) CHECK(valid_in(ctx, inverse(ctx, a)));
}

TEST_CASE("element classification and enumeration sizes") {
    for (long long n = 2; n <= 6; ++n) {
        auto bounded = GroupCtx::dihedral_bounded(n);
        CHECK(elements(bounded).size() == size_t(2 * (2 * n - 1)));
        CHECK(elements(bounded, false).size() == size_t(4 * n - 3));
        CHECK(elements(GroupCtx::dihedral_mod(n)).size() == size_t(2 * n));
        CHECK(elements(GroupCtx::cyclic_mod(n)).size() == size_t(n));
    }
    CHECK(elements(GroupCtx::dihedral_bounded(4), false).size() == 13);
    // rotations form a subgroup; the product of two reflections is a rotation
    for (Elem a : range_elems(-5, 5))
        for (Elem b : range_elems(-5, 5)) {
            if (is_rotation(a) && is_rotation(b)) CHECK(is_rotation(mul_exact(a, b)));
            if (is_reflection(a) && is_reflection(b)) CHECK(is_rotation(mul_exact(a, b)));
        }
}

TEST_CASE("commutator subgroup membership") {
    auto inf = GroupCtx::dihedral_infinite();
    CHECK(in_commutator_subgroup(inf, Elem{1, 2}));
    CHECK(!in_commutator_subgroup(inf, Elem{1, 1}));
    CHECK(in_commutator_subgroup(inf, Elem{1, -2}));
    CHECK(!in_commutator_subgroup(inf, Elem{-1, 0}));
    // order-6 group: commutator subgroup has order 3 (= n odd), so r is in it
    CHECK(in_commutator_subgroup(GroupCtx::dihedral_mod(3), Elem{1, 1}));
    CHECK(!in_commutator_subgroup(GroupCtx::dihedral_mod(4), Elem{1, 1}));
    CHECK(in_commutator_subgroup(GroupCtx::dihedral_mod(4), Elem{1, 2}));
    for (long long n = 2; n <= 8; ++n) CHECK(commutator_order(n) == (n % 2 ? n : n / 2));
    // brute-force oracle: [G,G] generated by all commutators
    for (long long n = 2; n <= 8; ++n) {
        auto ctx = GroupCtx::dihedral_mod(n);
        auto all = elements(ctx);
        std::vector<Elem> gens;
        for (Elem g : all)
            for (Elem h : all) {
                Elem c = mul(ctx, mul(ctx, mul(ctx, g, h).value(), inverse(ctx, g)).value(),
                             inverse(ctx, h))
                             .value();
                gens.push_back(c);
            }
        // close under multiplication
        std::vector<Elem> sub{identity()};
        bool grew = true;
        auto contains = [&](Elem e) {
            for (Elem x : sub)
                if (x == e) return true;
            return false;
        };
        for (Elem g : gens)
            if (!contains(g)) sub.push_back(g);
        while (grew) {
            grew = false;
            for (size_t i = 0; i < sub.size(); ++i)
                for (size_t j = 0; j < sub.size(); ++j) {
                    Elem p = mul(ctx, sub[i], sub[j]).value();
                    if (!contains(p)) {
                        sub.push_back(p);
                        grew = true;
                    }
                }
        }
        CHECK(sub.size() == size_t(commutator_order(n)));
        for (Elem e : all)
            CHECK(in_commutator_subgroup(ctx, e) == contains(e));
    }
}

TEST_CASE("bounded intersection with the commutator subgroup") {
    // the even-shift rotations with |shift| < 3: exactly {(1,0),(1,2),(1,-2)}
    auto ctx = GroupCtx::dihedral_bounded(3);
    std::vector<Elem> members;
    for (Elem e : elements(ctx))
        if (in_commutator_subgroup(ctx, e)) members.push_back(e);
    REQUIRE(members.size() == 3);
    CHECK(members[0] == Elem{1, -2});
    CHECK(members[1] == Elem{1, 0});
    CHECK(members[2] == Elem{1, 2});
}

TEST_CASE("element text round-trip") {
    CHECK(format_elem(identity()) == "+0");
    CHECK(format_elem(Elem{-1, 2}) == "-2");
    CHECK(format_elem(Elem{1, -2}) == "+-2");
    CHECK(parse_elem("--3") == Elem{-1, -3});
    for (Elem e : range_elems(-12, 12)) CHECK(parse_elem(format_elem(e)) == e);
    CHECK_THROWS_AS(parse_elem("3"), error);
    CHECK_THROWS_AS(parse_elem("+"), error);
    CHECK_THROWS_AS(parse_elem("+x"), error);
    CHECK_THROWS_AS(parse_elem("+3x"), error);
}

TEST_CASE("context text round-trip") {
    for (const char* s : {"D2n:4", "Dlt:3", "Zn:5", "Dinf"}) CHECK(format_ctx(parse_ctx(s)) == s);
    CHECK(parse_ctx("D2n:4") == GroupCtx::dihedral_mod(4));
    CHECK_THROWS_AS(parse_ctx("D2n:1"), error);
    CHECK_THROWS_AS(parse_ctx("D2n:x"), error);
    CHECK_THROWS_AS(parse_ctx("Q8:2"), error);
}
