#pragma once

#include <array>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "embedded_graph.hpp"
#include "errors.hpp"
#include "flow.hpp"

namespace dflow {

enum class ColoringKind { proper3, special4 };

// Edge coloring, indexed by dense edge.  proper3 uses {1,2,3} with adjacent
// edges distinct; special4 uses {1,2,3,4} where colors 1 and 3 each form a
// perfect matching and every color-3 edge sits in an admissible local
// pattern of the rotation system (see color3_shape below).
struct EdgeColoring {
    std::string name;
    ColoringKind kind = ColoringKind::proper3;
    std::vector<int> color;
};

inline std::string format_kind(ColoringKind k) {
    return k == ColoringKind::proper3 ? "proper3" : "special4";
}

inline ColoringKind parse_kind(const std::string& s) {
    if (s == "proper3") return ColoringKind::proper3;
    if (s == "special4") return ColoringKind::special4;
    fail(errc::parse, "unknown coloring kind " + s);
}

namespace detail {

inline void require_cubic(const EmbeddedGraph& g, const char* what) {
    for (int v = 0; v < g.num_vertices(); ++v)
        if (g.degree(v) != 3) fail(errc::not_cubic, g.name + std::string(": ") + what);
}

} // namespace detail

// Adjacent edges must carry distinct colors from {1,2,3}; on a cubic graph
// this makes every vertex see all three.  A loop meets itself, so any graph
// with a loop fails.
inline bool is_proper3(const EmbeddedGraph& g, const EdgeColoring& c) {
    if (c.kind != ColoringKind::proper3 || int(c.color.size()) != g.num_edges()) return false;
    for (int col : c.color)
        if (col < 1 || col > 3) return false;
    for (int v = 0; v < g.num_vertices(); ++v) {
        int seen = 0;
        for (int d : g.vertex_darts[v]) {
            int bit = 1 << c.color[EmbeddedGraph::edge_of(d)];
            if (seen & bit) return false;
            seen |= bit;
        }
    }
    return true;
}

// Backtracking over edges ascending, colors ascending; the first proper
// coloring in that order is returned, so witnesses are reproducible.
// Subcubic graphs are allowed so vertex-deleted remainders can be colored.
inline std::optional<EdgeColoring> find_3_edge_coloring(const EmbeddedGraph& g) {
    for (int v = 0; v < g.num_vertices(); ++v)
        if (g.degree(v) > 3)
            fail(errc::not_cubic, g.name + ": 3-edge coloring needs maximum degree three");
    EdgeColoring c;
    c.name = g.name;
    c.kind = ColoringKind::proper3;
    c.color.assign(g.num_edges(), 0);
    std::vector<int> seen(g.num_vertices(), 0); // bitmask of colors at each vertex
    std::function<bool(int)> rec = [&](int e) -> bool {
        if (e == g.num_edges()) return true;
        auto [u, w] = g.endpoints(e);
        if (u == w) return false; // a loop meets itself
        for (int col = 1; col <= 3; ++col) {
            int bit = 1 << col;
            if ((seen[u] | seen[w]) & bit) continue;
            seen[u] |= bit;
            seen[w] |= bit;
            c.color[e] = col;
            if (rec(e + 1)) return true;
            seen[u] &= ~bit;
            seen[w] &= ~bit;
        }
        c.color[e] = 0;
        return false;
    };
    if (!rec(0)) return std::nullopt;
    return c;
}

struct FlowEmbedding {
    EmbeddedGraph graph;
    FlowAssignment flow;
};

// Builds an embedding and a nowhere-identity DihedralBounded(2) flow from a
// proper 3-coloring of an abstract cubic graph.  Color-3 edges are directed
// from the smaller external endpoint to the larger; the rotation at each
// vertex is (e1 e2 e3) when its color-3 edge points in and (e1 e3 e2) when
// it points out; values are (-1,0) for color 1, (-1,1) for color 2 and
// (+1,1) for color 3.  The result always verifies, but only for this choice
// of rotations: the same coloring need not give a flow on other embeddings
// of the same graph.
inline FlowEmbedding coloring_to_flow(const AbstractMultigraph& m, const EdgeColoring& c) {
    int ne = int(m.edges.size());
    if (c.kind != ColoringKind::proper3 || int(c.color.size()) != ne)
        fail(errc::structure, m.name + ": need a proper3 coloring of every edge");
    EmbeddedGraph g;
    g.name = m.name;
    g.vertex_ids = m.vertex_ids;
    g.edge_ids = m.edge_ids;
    g.vertex_of.assign(2 * ne, -1);
    std::vector<std::array<int, 4>> dart_of_color(m.vertex_ids.size(), {-1, -1, -1, -1});
    auto dense = [&](long long ext) {
        auto it = std::lower_bound(m.vertex_ids.begin(), m.vertex_ids.end(), ext);
        if (it == m.vertex_ids.end() || *it != ext)
            fail(errc::parse, m.name + ": edge endpoint is not a vertex");
        return int(it - m.vertex_ids.begin());
    };
    for (int e = 0; e < ne; ++e) {
        g.vertex_of[2 * e] = dense(m.edges[e].first);
        g.vertex_of[2 * e + 1] = dense(m.edges[e].second);
        for (int d : {2 * e, 2 * e + 1}) {
            int& slot = dart_of_color[g.vertex_of[d]][c.color[e]];
            if (slot >= 0) fail(errc::structure, m.name + ": coloring is not proper");
            slot = d;
        }
    }
    for (auto& slots : dart_of_color)
        if (slots[1] < 0 || slots[2] < 0 || slots[3] < 0)
            fail(errc::not_cubic, m.name + ": construction needs a cubic graph");
    g.sigma.assign(2 * ne, -1);
    for (size_t v = 0; v < dart_of_color.size(); ++v) {
        auto [ig, d1, d2, d3] = dart_of_color[v];
        (void)ig;
        int e3 = EmbeddedGraph::edge_of(d3);
        bool incoming = m.edges[e3].first < m.edges[e3].second ? (d3 & 1) : !(d3 & 1);
        int a = d1, b = incoming ? d2 : d3, cc = incoming ? d3 : d2;
        g.sigma[a] = b;
        g.sigma[b] = cc;
        g.sigma[cc] = a;
    }
    g.finalize();
    FlowAssignment f = make_flow(g, GroupCtx::dihedral_bounded(2));
    for (int e = 0; e < ne; ++e) {
        switch (c.color[e]) {
            case 1: f.value[e] = Elem{-1, 0}; break;
            case 2: f.value[e] = Elem{-1, 1}; break;
            default:
                f.value[e] = Elem{1, 1};
                f.head[e] = m.edges[e].first < m.edges[e].second ? 2 * e + 1 : 2 * e;
        }
    }
    auto rep = verify(g, f);
    if (!rep.valid() || !rep.nowhere_identity)
        throw std::logic_error(m.name + ": coloring construction broke: " + rep.detail);
    return {std::move(g), std::move(f)};
}

// Reads a proper 3-coloring off a nowhere-identity dihedral 2-flow: color 1
// where the value is the zero-shift reflection, color 2 on the other
// reflections, color 3 on rotations.  Works for Dlt:2 and D2n:2 alike.
inline EdgeColoring flow_to_coloring(const EmbeddedGraph& g, const FlowAssignment& f) {
    if ((f.ctx.kind != GroupKind::dihedral_bounded && f.ctx.kind != GroupKind::dihedral_mod) ||
        f.ctx.n != 2)
        fail(errc::unsupported, g.name + ": coloring extraction needs a dihedral 2-flow");
    detail::require_cubic(g, "coloring extraction needs a cubic graph");
    auto rep = verify(g, f);
    if (!rep.valid() || !rep.nowhere_identity)
        fail(errc::invalid_flow, g.name + ": " + rep.detail);
    EdgeColoring c;
    c.name = f.name;
    c.kind = ColoringKind::proper3;
    for (const Elem& v : f.value)
        c.color.push_back(is_rotation(v) ? 3 : (canonical(f.ctx, v).shift == 0 ? 1 : 2));
    if (!is_proper3(g, c))
        throw std::logic_error(g.name + ": flow classes failed to form a proper coloring");
    return c;
}

namespace detail {

// Shape of a cubic vertex around its color-3 edge: reading the rotation
// from the color-1 dart gives (1,3,2) or (1,4,3) when the arrow on the
// color-3 edge points into the vertex, (1,2,3) or (1,3,4) when it points
// out.  A coloring is special exactly when every color-3 edge joins an
// incoming shape to an outgoing one; the pictured patterns and their mirror
// images are precisely these pairs.
struct Color3Shape {
    int dart3 = -1; // the color-3 dart at this vertex
    bool incoming = false;
};

inline Color3Shape color3_shape(const EmbeddedGraph& g, const EdgeColoring& c, int v) {
    int d1 = -1;
    for (int d : g.vertex_darts[v])
        if (c.color[EmbeddedGraph::edge_of(d)] == 1) d1 = d;
    int p = g.sigma[d1], q = g.sigma[p];
    int cp = c.color[EmbeddedGraph::edge_of(p)];
    Color3Shape s;
    s.dart3 = cp == 3 ? p : q;
    s.incoming = (cp == 3 && c.color[EmbeddedGraph::edge_of(q)] == 2) || cp == 4;
    return s;
}

inline std::optional<std::string> special4_violation(const EmbeddedGraph& g,
                                                     const EdgeColoring& c) {
    if (c.kind != ColoringKind::special4) return "coloring kind is not special4";
    if (int(c.color.size()) != g.num_edges()) return "color count does not match the edge count";
    for (int e = 0; e < g.num_edges(); ++e)
        if (c.color[e] < 1 || c.color[e] > 4)
            return "edge " + std::to_string(g.edge_ids[e]) + " has a color outside 1..4";
    for (int v = 0; v < g.num_vertices(); ++v)
        for (int mc : {1, 3}) {
            int cnt = 0;
            for (int d : g.vertex_darts[v])
                if (c.color[EmbeddedGraph::edge_of(d)] == mc) ++cnt;
            if (cnt != 1)
                return "vertex " + std::to_string(g.vertex_ids[v]) +
                       " does not meet exactly one color-" + std::to_string(mc) + " edge";
        }
    for (int e = 0; e < g.num_edges(); ++e) {
        if (c.color[e] != 3) continue;
        auto [u, w] = g.endpoints(e);
        if (color3_shape(g, c, u).incoming == color3_shape(g, c, w).incoming)
            return "vertices " + std::to_string(g.vertex_ids[u]) + " and " +
                   std::to_string(g.vertex_ids[w]) + " around color-3 edge " +
                   std::to_string(g.edge_ids[e]) + " do not form an admissible pattern";
    }
    return std::nullopt;
}

} // namespace detail

inline bool special4_check(const EmbeddedGraph& g, const EdgeColoring& c) {
    detail::require_cubic(g, "special coloring check needs a cubic graph");
    return !detail::special4_violation(g, c).has_value();
}

inline void require_special4(const EmbeddedGraph& g, const EdgeColoring& c) {
    detail::require_cubic(g, "special coloring check needs a cubic graph");
    if (auto v = detail::special4_violation(g, c)) fail(errc::not_special, g.name + ": " + *v);
}

// colors 1/2/4 become the reflections (-1,0)/(-1,-1)/(-1,1); each color-3
// edge becomes the rotation (+1,1) aimed at its incoming-shape endpoint,
// the only direction that balances.
inline FlowAssignment special4_to_flow(const EmbeddedGraph& g, const EdgeColoring& c) {
    require_special4(g, c);
    FlowAssignment f = make_flow(g, GroupCtx::dihedral_bounded(2));
    if (!c.name.empty()) f.name = c.name;
    for (int e = 0; e < g.num_edges(); ++e) {
        switch (c.color[e]) {
            case 1: f.value[e] = Elem{-1, 0}; break;
            case 2: f.value[e] = Elem{-1, -1}; break;
            case 4: f.value[e] = Elem{-1, 1}; break;
            default: {
                auto s = detail::color3_shape(g, c, g.endpoints(e).first);
                f.value[e] = Elem{1, 1};
                f.head[e] = s.incoming ? s.dart3 : (s.dart3 ^ 1);
            }
        }
    }
    auto rep = verify(g, f);
    if (!rep.valid() || !rep.nowhere_identity)
        throw std::logic_error(g.name + ": special coloring produced a non-flow: " + rep.detail);
    return f;
}

// Inverse direction: (-1,0) -> 1, (-1,-1) -> 2, rotations -> 3, (-1,1) -> 4.
// Needs exact Dlt:2 values; modulo 2 the colors 2 and 4 would collapse.
inline EdgeColoring flow_to_special4(const EmbeddedGraph& g, const FlowAssignment& f) {
    if (f.ctx.kind != GroupKind::dihedral_bounded || f.ctx.n != 2)
        fail(errc::unsupported, g.name + ": special coloring extraction needs a Dlt:2 flow");
    detail::require_cubic(g, "special coloring extraction needs a cubic graph");
    auto rep = verify(g, f);
    if (!rep.valid() || !rep.nowhere_identity)
        fail(errc::invalid_flow, g.name + ": " + rep.detail);
    EdgeColoring c;
    c.name = f.name;
    c.kind = ColoringKind::special4;
    for (const Elem& v : f.value)
        c.color.push_back(is_rotation(v) ? 3 : (v.shift == 0 ? 1 : (v.shift == -1 ? 2 : 4)));
    if (auto viol = detail::special4_violation(g, c))
        throw std::logic_error(g.name + ": flow classes are not special: " + *viol);
    return c;
}

// Coloring text format (several records may share a file):
//   coloring <name> kind=<proper3|special4>
//   <edge-id> <color>       one line per edge
inline std::vector<EdgeColoring> parse_colorings(std::istream& in, const EmbeddedGraph& g) {
    std::vector<EdgeColoring> out;
    std::string line;
    std::vector<char> seen;
    auto finish = [&]() {
        if (out.empty()) return;
        for (int e = 0; e < g.num_edges(); ++e)
            if (!seen[e])
                fail(errc::parse, out.back().name + ": no color for edge " +
                                      std::to_string(g.edge_ids[e]));
    };
    while (std::getline(in, line)) {
        auto toks = detail::line_tokens(line);
        if (toks.empty()) continue;
        if (toks[0] == "coloring") {
            finish();
            if (toks.size() != 3 || toks[2].rfind("kind=", 0) != 0)
                fail(errc::parse, "coloring line needs a name and kind=...");
            EdgeColoring c;
            c.name = toks[1];
            c.kind = parse_kind(toks[2].substr(5));
            c.color.assign(g.num_edges(), 0);
            out.push_back(std::move(c));
            seen.assign(g.num_edges(), 0);
        } else {
            if (out.empty()) fail(errc::parse, "color line before any coloring line");
            if (toks.size() != 2) fail(errc::parse, "color line needs an edge id and a color");
            int e = g.dense_edge(detail::to_ll(toks[0], "edge id"));
            if (seen[e]) fail(errc::parse, "duplicate color for edge " + toks[0]);
            seen[e] = 1;
            long long col = detail::to_ll(toks[1], "color");
            long long hi = out.back().kind == ColoringKind::proper3 ? 3 : 4;
            if (col < 1 || col > hi) fail(errc::parse, "edge " + toks[0] + " color outside 1.." +
                                                           std::to_string(hi));
            out.back().color[e] = int(col);
        }
    }
    finish();
    if (out.empty()) fail(errc::parse, "no coloring records found");
    return out;
}

inline std::vector<EdgeColoring> parse_colorings(const std::string& text, const EmbeddedGraph& g) {
    std::istringstream is(text);
    return parse_colorings(is, g);
}

inline void serialize_coloring(const EmbeddedGraph& g, const EdgeColoring& c, std::ostream& os) {
    os << "coloring " << c.name << " kind=" << format_kind(c.kind) << "\n";
    for (int e = 0; e < g.num_edges(); ++e) os << g.edge_ids[e] << " " << c.color[e] << "\n";
}

inline std::string serialize_coloring(const EmbeddedGraph& g, const EdgeColoring& c) {
    std::ostringstream os;
    serialize_coloring(g, c, os);
    return os.str();
}

} // namespace dflow
