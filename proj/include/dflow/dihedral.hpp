#pragma once

#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"

namespace dflow {

// Element (sign, shift) of the infinite dihedral matrix group: the matrix
//   ( sign  shift )
//   (  0      1   )
// with sign in {+1,-1}.  Identity is (+1,0); reflections are the sign -1
// elements and square to the identity.
struct Elem {
    int sign = 1;
    long long shift = 0;
    friend bool operator==(const Elem&, const Elem&) = default;
};

inline Elem identity() { return {}; }
inline bool is_identity(Elem e) { return e.sign == 1 && e.shift == 0; }
inline bool is_reflection(Elem e) { return e.sign < 0; }
inline bool is_rotation(Elem e) { return e.sign > 0; }

// Exact arithmetic: no reduction, cannot fail.
inline Elem mul_exact(Elem a, Elem b) { return {a.sign * b.sign, a.shift + a.sign * b.shift}; }
inline Elem inv_exact(Elem a) { return {a.sign, -a.sign * a.shift}; }

inline long long mod_floor(long long a, long long n) {
    long long r = a % n;
    return r < 0 ? r + n : r;
}

enum class GroupKind {
    dihedral_mod,      // finite dihedral group of order 2n, shifts reduced to [0,n)
    dihedral_bounded,  // elements of the infinite group with |shift| <= n-1 (not a group)
    dihedral_infinite, // the full infinite group, exact shifts
    cyclic_mod,        // rotation subgroup mod n (sign always +1)
};

struct GroupCtx {
    GroupKind kind = GroupKind::dihedral_infinite;
    long long n = 0;

    static GroupCtx dihedral_mod(long long n) { return make(GroupKind::dihedral_mod, n); }
    static GroupCtx dihedral_bounded(long long n) { return make(GroupKind::dihedral_bounded, n); }
    static GroupCtx dihedral_infinite() { return {GroupKind::dihedral_infinite, 0}; }
    static GroupCtx cyclic_mod(long long n) { return make(GroupKind::cyclic_mod, n); }

    bool finite() const { return kind != GroupKind::dihedral_infinite; }
    bool modular() const { return kind == GroupKind::dihedral_mod || kind == GroupKind::cyclic_mod; }

  private:
    static GroupCtx make(GroupKind k, long long n) {
        if (n < 2 || n > (1LL << 31))
            fail(errc::parse, "group parameter n out of range: " + std::to_string(n));
        return {k, n};
    }

  public:
    friend bool operator==(const GroupCtx&, const GroupCtx&) = default;
};

inline bool valid_in(const GroupCtx& ctx, Elem e) {
    if (e.sign != 1 && e.sign != -1) return false;
    switch (ctx.kind) {
    case GroupKind::dihedral_mod: return e.shift >= 0 && e.shift < ctx.n;
    case GroupKind::dihedral_bounded: return std::llabs(e.shift) <= ctx.n - 1;
    case GroupKind::dihedral_infinite: return true;
    case GroupKind::cyclic_mod: return e.sign == 1 && e.shift >= 0 && e.shift < ctx.n;
    }
    return false;
}

// Reduce the shift mod n, keeping the sign: the projection onto the finite
// dihedral group of order 2n.  A group homomorphism.
inline Elem project(Elem e, long long n) { return {e.sign, mod_floor(e.shift, n)}; }

inline Elem canonical(const GroupCtx& ctx, Elem e) {
    return ctx.modular() ? project(e, ctx.n) : e;
}

// Multiply within the context.  Returns nullopt exactly when the bounded
// context cannot represent the product; modular contexts reduce, the
// infinite context is exact.
inline std::optional<Elem> mul(const GroupCtx& ctx, Elem a, Elem b) {
    if (ctx.kind == GroupKind::cyclic_mod && (a.sign != 1 || b.sign != 1))
        fail(errc::structure, "cyclic context holds rotations only");
    Elem p = mul_exact(a, b);
    if (ctx.kind == GroupKind::dihedral_bounded && std::llabs(p.shift) > ctx.n - 1)
        return std::nullopt;
    return canonical(ctx, p);
}

// Multiply, treating a bounded overflow as an error.
inline Elem mul_or_fail(const GroupCtx& ctx, Elem a, Elem b) {
    auto p = mul(ctx, a, b);
    if (!p) fail(errc::out_of_range, "product leaves the bounded value range");
    return *p;
}

// Inverses never leave the bounded range: |-sign*shift| = |shift|.
inline Elem inverse(const GroupCtx& ctx, Elem e) { return canonical(ctx, inv_exact(e)); }

// Membership in the commutator subgroup.
//  - infinite/bounded: rotations with even shift;
//  - mod n: rotations with shift in <2 mod n> (everything if n odd);
//  - cyclic: the group is abelian, so only the identity.
inline bool in_commutator_subgroup(const GroupCtx& ctx, Elem e) {
    switch (ctx.kind) {
    case GroupKind::dihedral_infinite:
    case GroupKind::dihedral_bounded:
        return e.sign == 1 && e.shift % 2 == 0;
    case GroupKind::dihedral_mod: {
        Elem c = project(e, ctx.n);
        if (c.sign != 1) return false;
        return ctx.n % 2 == 1 || c.shift % 2 == 0;
    }
    case GroupKind::cyclic_mod:
        return is_identity(project(e, ctx.n));
    }
    return false;
}

// Order of the commutator subgroup of the finite dihedral group of order 2n.
inline long long commutator_order(long long n) { return n % 2 == 1 ? n : n / 2; }

// All elements of a finite context, rotations by ascending shift first, then
// reflections by ascending shift.  This fixes the deterministic search order
// used by the flow solver.
inline std::vector<Elem> elements(const GroupCtx& ctx, bool include_identity = true) {
    std::vector<Elem> out;
    auto push = [&](int sign, long long lo, long long hi) {
        for (long long a = lo; a <= hi; ++a) {
            Elem e{sign, a};
            if (!include_identity && is_identity(e)) continue;
            out.push_back(e);
        }
    };
    switch (ctx.kind) {
    case GroupKind::dihedral_mod:
        push(1, 0, ctx.n - 1);
        push(-1, 0, ctx.n - 1);
        break;
    case GroupKind::dihedral_bounded:
        push(1, -(ctx.n - 1), ctx.n - 1);
        push(-1, -(ctx.n - 1), ctx.n - 1);
        break;
    case GroupKind::cyclic_mod:
        push(1, 0, ctx.n - 1);
        break;
    case GroupKind::dihedral_infinite:
        fail(errc::unsupported, "cannot enumerate the infinite group");
    }
    return out;
}

// Textual element syntax: sign character followed by the decimal shift.
// "+0" is the identity, "-2" the reflection with shift 2, "+-2" the rotation
// with shift -2.
inline std::string format_elem(Elem e) {
    return (e.sign > 0 ? "+" : "-") + std::to_string(e.shift);
}

inline Elem parse_elem(const std::string& s) {
    if (s.size() < 2 || (s[0] != '+' && s[0] != '-'))
        fail(errc::parse, "bad element '" + s + "'");
    int sign = s[0] == '+' ? 1 : -1;
    errno = 0;
    char* end = nullptr;
    long long shift = std::strtoll(s.c_str() + 1, &end, 10);
    if (errno != 0 || end == s.c_str() + 1 || *end != '\0')
        fail(errc::parse, "bad element '" + s + "'");
    return {sign, shift};
}

// Context syntax used in flow files and on the command line:
//   D2n:<n>  finite dihedral group of order 2n
//   Dlt:<n>  bounded subset |shift| < n of the infinite group
//   Zn:<n>   rotations mod n
//   Dinf     infinite group
inline std::string format_ctx(const GroupCtx& ctx) {
    switch (ctx.kind) {
    case GroupKind::dihedral_mod: return "D2n:" + std::to_string(ctx.n);
    case GroupKind::dihedral_bounded: return "Dlt:" + std::to_string(ctx.n);
    case GroupKind::cyclic_mod: return "Zn:" + std::to_string(ctx.n);
    case GroupKind::dihedral_infinite: return "Dinf";
    }
    return "?";
}

inline GroupCtx parse_ctx(const std::string& s) {
    if (s == "Dinf") return GroupCtx::dihedral_infinite();
    auto colon = s.find(':');
    if (colon == std::string::npos) fail(errc::parse, "bad group context '" + s + "'");
    std::string head = s.substr(0, colon);
    errno = 0;
    char* end = nullptr;
    long long n = std::strtoll(s.c_str() + colon + 1, &end, 10);
    if (errno != 0 || *end != '\0' || end == s.c_str() + colon + 1)
        fail(errc::parse, "bad group context '" + s + "'");
    if (head == "D2n") return GroupCtx::dihedral_mod(n);
    if (head == "Dlt") return GroupCtx::dihedral_bounded(n);
    if (head == "Zn") return GroupCtx::cyclic_mod(n);
    fail(errc::parse, "bad group context '" + s + "'");
}

} // namespace dflow
