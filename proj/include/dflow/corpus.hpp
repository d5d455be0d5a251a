#pragma once

#include "embedded_graph.hpp"
#include "flow.hpp"

namespace dflow {

// Built-in sample graphs.  Each entry is a frozen canonical graph text (the
// exact dart order is a constant of this corpus, not an API contract) plus
// optional bundled flows that are known to verify.  Everything is re-checked
// against the expected face/genus table on every load, so a corrupted edit
// here fails loudly rather than silently skewing downstream results.

namespace detail {

constexpr const char* corpus_fig1_graph =
    "graph fig1\n"
    "vertex 0: 0 2 4\n"
    "vertex 1: 1 6 8 7 9\n"
    "vertex 2: 3 10 12 11 13\n"
    "vertex 3: 5 14 16 15 17\n"
    "edge 0: 0 1\n"
    "edge 1: 2 3\n"
    "edge 2: 4 5\n"
    "edge 3: 6 7\n"
    "edge 4: 8 9\n"
    "edge 5: 10 11\n"
    "edge 6: 12 13\n"
    "edge 7: 14 15\n"
    "edge 8: 16 17\n";

// hub with three loop blobs: every spoke is a bridge, yet this Mod(3) flow
// exists.  No bounded-shift flow exists for any n (see plane-sided bridges).
constexpr const char* corpus_fig1_flow =
    "flow fig1 ctx=D2n:3\n"
    "0 +2\n1 +2\n2 +2\n3 -2\n4 -1\n5 -2\n6 -1\n7 -2\n8 -1\n";

constexpr const char* corpus_theta_graph =
    "graph theta\n"
    "vertex 0: 0 2 4\n"
    "vertex 1: 1 3 5\n"
    "edge 0: 0 1\n"
    "edge 1: 2 3\n"
    "edge 2: 4 5\n";

constexpr const char* corpus_fig4_graph =
    "graph fig4\n"
    "vertex 0: 0 2 12\n"
    "vertex 1: 1 3 4\n"
    "vertex 2: 5 6 13\n"
    "vertex 3: 7 8 16\n"
    "vertex 4: 9 10 14\n"
    "vertex 5: 11 15 17\n"
    "edge 0: 0 1\n"
    "edge 1: 2 3\n"
    "edge 2: 4 5\n"
    "edge 3: 6 7\n"
    "edge 4: 8 9\n"
    "edge 5: 10 11\n"
    "edge 6: 12 13\n"
    "edge 7: 14 15\n"
    "edge 8: 16 17\n";

// Petersen graph, edges: 0..4 spokes (k, 5+k), 5..9 inner pentagram
// (k, k+2 mod 5), 10..14 outer pentagon (5+k, 5+(k+1 mod 5)).  The three
// embeddings share an all-clockwise base drawing; they differ only in which
// vertices have their rotation reversed.
constexpr const char* corpus_petersen2t_graph =
    "graph petersen2t\n"
    "vertex 0: 0 17 10\n"
    "vertex 1: 2 19 12\n"
    "vertex 2: 4 11 14\n"
    "vertex 3: 6 13 16\n"
    "vertex 4: 8 15 18\n"
    "vertex 5: 1 20 29\n"
    "vertex 6: 3 22 21\n"
    "vertex 7: 5 24 23\n"
    "vertex 8: 7 26 25\n"
    "vertex 9: 9 28 27\n"
    "edge 0: 0 1\n"
    "edge 1: 2 3\n"
    "edge 2: 4 5\n"
    "edge 3: 6 7\n"
    "edge 4: 8 9\n"
    "edge 5: 10 11\n"
    "edge 6: 12 13\n"
    "edge 7: 14 15\n"
    "edge 8: 16 17\n"
    "edge 9: 18 19\n"
    "edge 10: 20 21\n"
    "edge 11: 22 23\n"
    "edge 12: 24 25\n"
    "edge 13: 26 27\n"
    "edge 14: 28 29\n";

// outer vertices 5 and 7 reversed
constexpr const char* corpus_petersen1t_graph =
    "graph petersen1t\n"
    "vertex 0: 0 17 10\n"
    "vertex 1: 2 19 12\n"
    "vertex 2: 4 11 14\n"
    "vertex 3: 6 13 16\n"
    "vertex 4: 8 15 18\n"
    "vertex 5: 1 29 20\n"
    "vertex 6: 3 22 21\n"
    "vertex 7: 5 23 24\n"
    "vertex 8: 7 26 25\n"
    "vertex 9: 9 28 27\n"
    "edge 0: 0 1\n"
    "edge 1: 2 3\n"
    "edge 2: 4 5\n"
    "edge 3: 6 7\n"
    "edge 4: 8 9\n"
    "edge 5: 10 11\n"
    "edge 6: 12 13\n"
    "edge 7: 14 15\n"
    "edge 8: 16 17\n"
    "edge 9: 18 19\n"
    "edge 10: 20 21\n"
    "edge 11: 22 23\n"
    "edge 12: 24 25\n"
    "edge 13: 26 27\n"
    "edge 14: 28 29\n";

// inner vertex 2 and outer vertex 6 reversed
constexpr const char* corpus_petersen3t_graph =
    "graph petersen3t\n"
    "vertex 0: 0 17 10\n"
    "vertex 1: 2 19 12\n"
    "vertex 2: 4 14 11\n"
    "vertex 3: 6 13 16\n"
    "vertex 4: 8 15 18\n"
    "vertex 5: 1 20 29\n"
    "vertex 6: 3 21 22\n"
    "vertex 7: 5 24 23\n"
    "vertex 8: 7 26 25\n"
    "vertex 9: 9 28 27\n"
    "edge 0: 0 1\n"
    "edge 1: 2 3\n"
    "edge 2: 4 5\n"
    "edge 3: 6 7\n"
    "edge 4: 8 9\n"
    "edge 5: 10 11\n"
    "edge 6: 12 13\n"
    "edge 7: 14 15\n"
    "edge 8: 16 17\n"
    "edge 9: 18 19\n"
    "edge 10: 20 21\n"
    "edge 11: 22 23\n"
    "edge 12: 24 25\n"
    "edge 13: 26 27\n"
    "edge 14: 28 29\n";

// rotations on the spokes, reflections on pentagram and pentagon
constexpr const char* corpus_petersen3t_flow =
    "flow petersen3t ctx=Dlt:3\n"
    "0 +-1\n1 +-1\n2 +-1\n3 +-1\n4 +2\n"
    "5 --1\n6 -1\n7 -0\n8 -0\n9 -2\n"
    "10 -0\n11 -1\n12 -0\n13 --1\n14 -1\n";

constexpr const char* corpus_k4planar_graph =
    "graph k4planar\n"
    "vertex 0: 0 4 2\n"
    "vertex 1: 1 6 8\n"
    "vertex 2: 3 10 7\n"
    "vertex 3: 5 9 11\n"
    "edge 0: 0 1\n"
    "edge 1: 2 3\n"
    "edge 2: 4 5\n"
    "edge 3: 6 7\n"
    "edge 4: 8 9\n"
    "edge 5: 10 11\n";

struct CorpusSpec {
    const char* name;
    const char* graph_text; // nullptr means the entry is derived, see corpus_graph
    int faces;
    int genus;
};

inline const std::vector<CorpusSpec>& corpus_table() {
    static const std::vector<CorpusSpec> table = {
        {"fig1", corpus_fig1_graph, 1, 3},
        {"theta", corpus_theta_graph, 1, 1},
        {"fig4", corpus_fig4_graph, 1, 2},
        {"petersen2t", corpus_petersen2t_graph, 3, 2},
        {"petersen1t", corpus_petersen1t_graph, 5, 1},
        {"petersen3t", corpus_petersen3t_graph, 1, 3},
        {"tietze", nullptr, 4, 2},
        {"k4planar", corpus_k4planar_graph, 4, 0},
    };
    return table;
}

} // namespace detail

inline std::vector<std::string> corpus_names() {
    std::vector<std::string> out;
    for (const auto& s : detail::corpus_table()) out.push_back(s.name);
    return out;
}

inline EmbeddedGraph corpus_graph(const std::string& name) {
    for (const auto& s : detail::corpus_table()) {
        if (name != s.name) continue;
        EmbeddedGraph g;
        if (s.graph_text) {
            g = parse_graph(s.graph_text);
        } else {
            // tietze: expand vertex 0 of petersen2t into a triangle
            g = y_delta(parse_graph(detail::corpus_petersen2t_graph), 0);
            g.name = s.name;
        }
        auto fs = trace_faces(g);
        if ((int)fs.faces.size() != s.faces || fs.genus != s.genus)
            fail(errc::structure, "corpus entry " + name + " failed its face/genus self-check");
        return g;
    }
    fail(errc::parse, "unknown corpus entry: " + name);
}

// The standard flow family on the theta graph with both rotations (e1 e2 e3):
// even n uses one rotation and two reflections, odd n three rotations.  All
// three arrows point at vertex 1.
inline FlowAssignment theta_flow(const EmbeddedGraph& theta, long long n) {
    if (theta.num_edges() != 3 || theta.num_vertices() != 2)
        fail(errc::structure, "theta_flow needs the two-vertex theta graph");
    auto f = make_flow(theta, GroupCtx::dihedral_mod(n));
    f.head = {1, 3, 5};
    if (n % 2 == 0)
        f.value = {Elem{1, n / 2}, Elem{-1, n / 2}, Elem{-1, 0}};
    else
        f.value = {Elem{1, n - 2}, Elem{1, 1}, Elem{1, 1}};
    return f;
}

inline std::vector<FlowAssignment> corpus_flows(const std::string& name) {
    std::vector<FlowAssignment> out;
    EmbeddedGraph g = corpus_graph(name); // also validates the name
    if (name == "fig1") {
        out.push_back(parse_flows(detail::corpus_fig1_flow, g).at(0));
    } else if (name == "theta") {
        for (long long n = 2; n <= 6; ++n) out.push_back(theta_flow(g, n));
    } else if (name == "petersen3t") {
        out.push_back(parse_flows(detail::corpus_petersen3t_flow, g).at(0));
    }
    for (const auto& f : out) {
        auto r = verify(g, f);
        if (!r.valid())
            fail(errc::structure, "corpus flow on " + name + " failed its self-check: " + r.detail);
    }
    return out;
}

} // namespace dflow
