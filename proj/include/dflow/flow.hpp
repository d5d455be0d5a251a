#pragma once

#include "dihedral.hpp"
#include "embedded_graph.hpp"

namespace dflow {

// Group-valued assignment on the edges of an embedded graph.  head[e] is the
// dart at the arrow's head (2e or 2e+1); value[e] is the group element
// carried in the arrow direction.  Files always store values relative to the
// reference head 2e; in-memory transforms may flip orientations.
struct FlowAssignment {
    std::string name;
    GroupCtx ctx;
    std::vector<int> head;
    std::vector<Elem> value;
};

inline FlowAssignment make_flow(const EmbeddedGraph& g, GroupCtx ctx) {
    FlowAssignment f;
    f.name = g.name;
    f.ctx = ctx;
    f.head.resize(g.num_edges());
    f.value.resize(g.num_edges());
    for (int e = 0; e < g.num_edges(); ++e) f.head[e] = 2 * e;
    return f;
}

// flips the stored orientation of one edge without changing the flow
inline void flip_edge(FlowAssignment& f, int e) {
    f.head[e] ^= 1;
    f.value[e] = inverse(f.ctx, f.value[e]);
}

// contribution of dart d to the local product at its own vertex: the value
// when the arrow points in (d is the head), else the inverse
inline Elem vertex_contribution(const FlowAssignment& f, int d) {
    int e = EmbeddedGraph::edge_of(d);
    return d == f.head[e] ? f.value[e] : inv_exact(f.value[e]);
}

// value picked up when traversing the edge of d away from d's vertex
inline Elem walk_contribution(const FlowAssignment& f, int d) {
    int e = EmbeddedGraph::edge_of(d);
    return d == f.head[e] ? inv_exact(f.value[e]) : f.value[e];
}

// Local product at a vertex, taken in rotation order starting from the
// smallest dart.  Exact in the integers; reduce modularly afterwards.
inline Elem kirchhoff_product(const EmbeddedGraph& g, const FlowAssignment& f, int v) {
    Elem p = identity();
    for (int d : g.vertex_darts[v]) p = mul_exact(p, vertex_contribution(f, d));
    return p;
}

// identity test for an exact product, interpreted in the context
inline bool is_identity_in(const GroupCtx& ctx, const Elem& exact) {
    return is_identity(ctx.modular() ? project(exact, ctx.n) : exact);
}

struct VerifyReport {
    bool shape_ok = false;     // sizes match, values in range, heads legal
    bool conserving = false;   // every vertex product is the identity
    bool nowhere_identity = false;
    std::string detail;        // first violation, for diagnostics
    bool valid() const { return shape_ok && conserving; }
};

inline VerifyReport verify(const EmbeddedGraph& g, const FlowAssignment& f) {
    VerifyReport r;
    if (int(f.head.size()) != g.num_edges() || int(f.value.size()) != g.num_edges()) {
        r.detail = "value count does not match the edge count";
        return r;
    }
    for (int e = 0; e < g.num_edges(); ++e) {
        if (f.head[e] != 2 * e && f.head[e] != 2 * e + 1) {
            r.detail = "edge " + std::to_string(g.edge_ids[e]) + " has a foreign head dart";
            return r;
        }
        if (!valid_in(f.ctx, f.value[e])) {
            r.detail = "edge " + std::to_string(g.edge_ids[e]) + " value outside the group";
            return r;
        }
    }
    r.shape_ok = true;
    r.conserving = true;
    for (int v = 0; v < g.num_vertices() && r.conserving; ++v)
        if (!is_identity_in(f.ctx, kirchhoff_product(g, f, v))) {
            r.conserving = false;
            r.detail = "vertex " + std::to_string(g.vertex_ids[v]) + " does not balance";
        }
    r.nowhere_identity = true;
    for (int e = 0; e < g.num_edges() && r.nowhere_identity; ++e)
        if (is_identity_in(f.ctx, f.value[e])) {
            r.nowhere_identity = false;
            if (r.conserving) r.detail = "edge " + std::to_string(g.edge_ids[e]) + " carries the identity";
        }
    return r;
}

// Flow text format (several records may share a file):
//   flow <name> ctx=<context>
//   <edge-id> <element>     one line per edge, relative to the reference head
inline std::vector<FlowAssignment> parse_flows(std::istream& in, const EmbeddedGraph& g) {
    std::vector<FlowAssignment> out;
    std::string line;
    std::vector<char> seen;
    auto finish = [&]() {
        if (out.empty()) return;
        for (int e = 0; e < g.num_edges(); ++e)
            if (!seen[e])
                fail(errc::parse, out.back().name + ": no value for edge " +
                                      std::to_string(g.edge_ids[e]));
    };
    while (std::getline(in, line)) {
        auto toks = detail::line_tokens(line);
        if (toks.empty()) continue;
        if (toks[0] == "flow") {
            finish();
            if (toks.size() != 3 || toks[2].rfind("ctx=", 0) != 0)
                fail(errc::parse, "flow line needs a name and ctx=...");
            FlowAssignment f = make_flow(g, parse_ctx(toks[2].substr(4)));
            f.name = toks[1];
            out.push_back(std::move(f));
            seen.assign(g.num_edges(), 0);
        } else {
            if (out.empty()) fail(errc::parse, "value line before any flow line");
            if (toks.size() != 2) fail(errc::parse, "value line needs an edge id and an element");
            int e = g.dense_edge(detail::to_ll(toks[0], "edge id"));
            if (seen[e]) fail(errc::parse, "duplicate value for edge " + toks[0]);
            seen[e] = 1;
            Elem v = parse_elem(toks[1]);
            if (!valid_in(out.back().ctx, v))
                fail(errc::parse, "edge " + toks[0] + " value outside the group");
            out.back().value[e] = v;
        }
    }
    finish();
    if (out.empty()) fail(errc::parse, "no flow records found");
    return out;
}

inline std::vector<FlowAssignment> parse_flows(const std::string& text, const EmbeddedGraph& g) {
    std::istringstream is(text);
    return parse_flows(is, g);
}

inline void serialize_flow(const EmbeddedGraph& g, const FlowAssignment& f, std::ostream& os) {
    os << "flow " << f.name << " ctx=" << format_ctx(f.ctx) << "\n";
    for (int e = 0; e < g.num_edges(); ++e) {
        Elem v = f.head[e] == 2 * e ? f.value[e] : inverse(f.ctx, f.value[e]);
        os << g.edge_ids[e] << " " << format_elem(v) << "\n";
    }
}

inline std::string serialize_flow(const EmbeddedGraph& g, const FlowAssignment& f) {
    std::ostringstream os;
    serialize_flow(g, f, os);
    return os.str();
}

} // namespace dflow
