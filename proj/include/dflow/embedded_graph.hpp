#pragma once

#include <algorithm>
#include <cctype>
#include <functional>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"

namespace dflow {

// Dart-based combinatorial map of a connected multigraph cellularly embedded
// in a closed orientable surface.  Darts are dense integers 0..2E-1; edge k
// owns darts 2k and 2k+1, so the edge involution is the pair swap d^1.
// sigma gives the next dart counterclockwise around the dart's vertex.
// Dense vertex/edge indices are sorted by external id; external ids survive
// surgery.
struct EmbeddedGraph {
    std::string name;
    std::vector<int> sigma;            // dart -> next dart at the same vertex
    std::vector<int> vertex_of;        // dart -> dense vertex
    std::vector<long long> vertex_ids; // dense vertex -> external id
    std::vector<long long> edge_ids;   // dense edge -> external id

    // derived by finalize()
    std::vector<std::vector<int>> vertex_darts; // sigma cycle, starting at smallest dart

    int num_vertices() const { return int(vertex_ids.size()); }
    int num_edges() const { return int(edge_ids.size()); }
    int num_darts() const { return int(sigma.size()); }
    static int alpha(int d) { return d ^ 1; }
    static int edge_of(int d) { return d >> 1; }
    int degree(int v) const { return int(vertex_darts[v].size()); }
    std::pair<int, int> endpoints(int e) const { return {vertex_of[2 * e], vertex_of[2 * e + 1]}; }
    bool is_loop(int e) const { return vertex_of[2 * e] == vertex_of[2 * e + 1]; }

    int dense_vertex(long long ext) const {
        auto it = std::lower_bound(vertex_ids.begin(), vertex_ids.end(), ext);
        if (it == vertex_ids.end() || *it != ext)
            fail(errc::parse, name + ": no vertex with id " + std::to_string(ext));
        return int(it - vertex_ids.begin());
    }
    int dense_edge(long long ext) const {
        auto it = std::lower_bound(edge_ids.begin(), edge_ids.end(), ext);
        if (it == edge_ids.end() || *it != ext)
            fail(errc::parse, name + ": no edge with id " + std::to_string(ext));
        return int(it - edge_ids.begin());
    }

    // Validates permutation structure and connectivity, builds vertex_darts.
    void finalize() {
        size_t nd = sigma.size();
        if (nd != vertex_of.size() || nd != 2 * edge_ids.size())
            fail(errc::structure, name + ": inconsistent dart arrays");
        if (!std::is_sorted(vertex_ids.begin(), vertex_ids.end()) ||
            std::adjacent_find(vertex_ids.begin(), vertex_ids.end()) != vertex_ids.end())
            fail(errc::structure, name + ": vertex ids not strictly increasing");
        if (!std::is_sorted(edge_ids.begin(), edge_ids.end()) ||
            std::adjacent_find(edge_ids.begin(), edge_ids.end()) != edge_ids.end())
            fail(errc::structure, name + ": edge ids not strictly increasing");
        std::vector<int> seen(nd, 0);
        for (size_t d = 0; d < nd; ++d) {
            int s = sigma[d];
            if (s < 0 || size_t(s) >= nd || seen[s]++)
                fail(errc::structure, name + ": sigma is not a permutation");
            if (vertex_of[d] < 0 || vertex_of[d] >= num_vertices())
                fail(errc::structure, name + ": dart at unknown vertex");
            if (vertex_of[s] != vertex_of[d])
                fail(errc::structure, name + ": sigma leaves its vertex");
        }
        vertex_darts.assign(vertex_ids.size(), {});
        std::vector<int> smallest(vertex_ids.size(), -1);
        for (size_t d = 0; d < nd; ++d) {
            int v = vertex_of[d];
            if (smallest[v] < 0) smallest[v] = int(d);
        }
        for (int v = 0; v < num_vertices(); ++v) {
            if (smallest[v] < 0) continue; // isolated vertex
            int d = smallest[v];
            do {
                vertex_darts[v].push_back(d);
                d = sigma[d];
            } while (d != smallest[v]);
        }
        size_t covered = 0;
        for (auto& ds : vertex_darts) covered += ds.size();
        if (covered != nd) fail(errc::structure, name + ": rotation cycles do not cover the darts");
        // connectivity over darts and vertices
        if (nd == 0) {
            if (num_vertices() > 1) fail(errc::structure, name + ": disconnected (isolated vertices)");
            return;
        }
        std::vector<char> vis(nd, 0);
        std::vector<int> stack{0};
        vis[0] = 1;
        size_t cnt = 0;
        while (!stack.empty()) {
            int d = stack.back();
            stack.pop_back();
            ++cnt;
            for (int nb : {sigma[d], alpha(d)})
                if (!vis[nb]) {
                    vis[nb] = 1;
                    stack.push_back(nb);
                }
        }
        if (cnt != nd) fail(errc::structure, name + ": disconnected");
        for (int v = 0; v < num_vertices(); ++v)
            if (vertex_darts[v].empty()) fail(errc::structure, name + ": disconnected (isolated vertex)");
    }
};

struct FaceStructure {
    std::vector<std::vector<int>> faces; // dart orbits of d -> sigma(alpha(d))
    int genus = 0;
};

// Face tracing: orbits of the permutation d -> sigma(alpha(d)).  Each face
// starts at its smallest dart; faces are sorted by that dart.  The genus
// comes from the Euler identity V - E + F = 2 - 2g.
inline FaceStructure trace_faces(const EmbeddedGraph& g) {
    FaceStructure fs;
    int nd = g.num_darts();
    std::vector<char> vis(nd, 0);
    for (int d0 = 0; d0 < nd; ++d0) {
        if (vis[d0]) continue;
        std::vector<int> face;
        int d = d0;
        do {
            vis[d] = 1;
            face.push_back(d);
            d = g.sigma[EmbeddedGraph::alpha(d)];
        } while (d != d0);
        fs.faces.push_back(std::move(face));
    }
    int f = int(fs.faces.size());
    if (nd == 0) f = 1; // a lone vertex sits on the sphere
    long long chi = (long long)g.num_vertices() - g.num_edges() + f;
    if ((2 - chi) % 2 != 0 || chi > 2)
        fail(errc::structure, g.name + ": Euler characteristic " + std::to_string(chi) +
                                  " is not that of a closed orientable surface");
    fs.genus = int((2 - chi) / 2);
    return fs;
}

inline int genus_of(const EmbeddedGraph& g) { return trace_faces(g).genus; }

// Cut edges, by dense edge index.  Loops and parallel edges are never cut
// edges; detection is a lowlink scan that tracks the entering edge rather
// than the parent vertex.
inline std::vector<int> bridges(const EmbeddedGraph& g) {
    int n = g.num_vertices();
    std::vector<std::vector<std::pair<int, int>>> adj(n); // (neighbor, edge)
    for (int e = 0; e < g.num_edges(); ++e) {
        auto [u, v] = g.endpoints(e);
        if (u == v) continue;
        adj[u].push_back({v, e});
        adj[v].push_back({u, e});
    }
    std::vector<int> disc(n, -1), low(n, 0), out;
    int timer = 0;
    struct Frame {
        int v, in_edge;
        size_t pos;
    };
    for (int root = 0; root < n; ++root) {
        if (disc[root] >= 0) continue;
        std::vector<Frame> st{{root, -1, 0}};
        disc[root] = low[root] = timer++;
        while (!st.empty()) {
            Frame& fr = st.back();
            if (fr.pos < adj[fr.v].size()) {
                auto [w, e] = adj[fr.v][fr.pos++];
                if (e == fr.in_edge) continue; // each edge id occurs once per endpoint
                if (disc[w] < 0) {
                    disc[w] = low[w] = timer++;
                    st.push_back({w, e, 0});
                } else {
                    low[fr.v] = std::min(low[fr.v], disc[w]);
                }
            } else {
                int child = fr.v, in_edge = fr.in_edge;
                st.pop_back();
                if (!st.empty()) {
                    int p = st.back().v;
                    low[p] = std::min(low[p], low[child]);
                    if (low[child] > disc[p]) out.push_back(in_edge);
                }
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace detail {

struct RawMap {
    std::string name;
    std::vector<int> sigma, vertex_of;
    std::vector<long long> vertex_ids, edge_ids;
};

// Splits a (possibly disconnected) map into connected components, each a
// valid EmbeddedGraph, ordered by smallest external vertex id.  Vertices
// without darts become single-vertex components.
inline std::vector<EmbeddedGraph> split_components(const RawMap& rm) {
    int nd = int(rm.sigma.size());
    int nv = int(rm.vertex_ids.size());
    std::vector<int> vcomp(nv, -1);
    int ncomp = 0;
    for (int d0 = 0; d0 < nd; ++d0) {
        if (vcomp[rm.vertex_of[d0]] >= 0) continue;
        int c = ncomp++;
        std::vector<int> stack{d0};
        vcomp[rm.vertex_of[d0]] = c;
        std::vector<char> vis(nd, 0);
        vis[d0] = 1;
        while (!stack.empty()) {
            int d = stack.back();
            stack.pop_back();
            vcomp[rm.vertex_of[d]] = c;
            for (int nb : {rm.sigma[d], EmbeddedGraph::alpha(d)})
                if (!vis[nb]) {
                    vis[nb] = 1;
                    stack.push_back(nb);
                }
        }
    }
    for (int v = 0; v < nv; ++v)
        if (vcomp[v] < 0) vcomp[v] = ncomp++;
    std::vector<EmbeddedGraph> comps(ncomp);
    std::vector<std::vector<int>> comp_vertices(ncomp), comp_edges(ncomp);
    for (int v = 0; v < nv; ++v) comp_vertices[vcomp[v]].push_back(v);
    for (int e = 0; e * 2 < nd; ++e) comp_edges[vcomp[rm.vertex_of[2 * e]]].push_back(e);
    for (int c = 0; c < ncomp; ++c) {
        EmbeddedGraph& g = comps[c];
        g.name = rm.name;
        std::vector<int> vmap(nv, -1), emap(nd / 2, -1);
        for (size_t i = 0; i < comp_vertices[c].size(); ++i) {
            vmap[comp_vertices[c][i]] = int(i);
            g.vertex_ids.push_back(rm.vertex_ids[comp_vertices[c][i]]);
        }
        for (size_t i = 0; i < comp_edges[c].size(); ++i) {
            emap[comp_edges[c][i]] = int(i);
            g.edge_ids.push_back(rm.edge_ids[comp_edges[c][i]]);
        }
        auto dmap = [&](int d) { return 2 * emap[d >> 1] + (d & 1); };
        g.sigma.resize(2 * comp_edges[c].size());
        g.vertex_of.resize(2 * comp_edges[c].size());
        for (int e : comp_edges[c])
            for (int b : {0, 1}) {
                int d = 2 * e + b;
                g.sigma[dmap(d)] = dmap(rm.sigma[d]);
                g.vertex_of[dmap(d)] = vmap[rm.vertex_of[d]];
            }
        g.finalize();
    }
    std::sort(comps.begin(), comps.end(), [](const EmbeddedGraph& a, const EmbeddedGraph& b) {
        return a.vertex_ids.front() < b.vertex_ids.front();
    });
    return comps;
}

} // namespace detail

// Removes a set of edges, splicing their darts out of the rotations.  The
// inherited embedding may fall apart into several components.
inline std::vector<EmbeddedGraph> delete_edges(const EmbeddedGraph& g, const std::vector<int>& edges) {
    std::vector<char> dead(g.num_edges(), 0);
    for (int e : edges) {
        if (e < 0 || e >= g.num_edges()) fail(errc::parse, g.name + ": no such edge");
        dead[e] = 1;
    }
    detail::RawMap rm;
    rm.name = g.name;
    rm.vertex_ids = g.vertex_ids;
    std::vector<int> emap(g.num_edges(), -1);
    for (int e = 0; e < g.num_edges(); ++e)
        if (!dead[e]) {
            emap[e] = int(rm.edge_ids.size());
            rm.edge_ids.push_back(g.edge_ids[e]);
        }
    rm.sigma.resize(2 * rm.edge_ids.size());
    rm.vertex_of.resize(2 * rm.edge_ids.size());
    for (int e = 0; e < g.num_edges(); ++e) {
        if (dead[e]) continue;
        for (int b : {0, 1}) {
            int d = 2 * e + b;
            int s = g.sigma[d];
            while (dead[s >> 1]) s = g.sigma[s];
            rm.sigma[2 * emap[e] + b] = 2 * emap[s >> 1] + (s & 1);
            rm.vertex_of[2 * emap[e] + b] = g.vertex_of[d];
        }
    }
    return detail::split_components(rm);
}

inline std::vector<EmbeddedGraph> delete_edge(const EmbeddedGraph& g, int e) {
    return delete_edges(g, {e});
}

// Contracts a non-loop edge, splicing the two endpoint rotations at its
// darts.  Faces, and hence the genus, are preserved.  The merged vertex
// keeps the smaller external id.
inline EmbeddedGraph contract_edge(const EmbeddedGraph& g, int e) {
    if (e < 0 || e >= g.num_edges()) fail(errc::parse, g.name + ": no such edge");
    if (g.is_loop(e)) fail(errc::structure, g.name + ": cannot contract a loop");
    int du = 2 * e, dw = 2 * e + 1;
    int u = g.vertex_of[du], w = g.vertex_of[dw];
    detail::RawMap rm;
    rm.name = g.name;
    int keep = g.vertex_ids[u] < g.vertex_ids[w] ? u : w;
    for (int v = 0; v < g.num_vertices(); ++v)
        if (v != u && v != w) rm.vertex_ids.push_back(g.vertex_ids[v]);
    rm.vertex_ids.push_back(g.vertex_ids[keep]);
    std::sort(rm.vertex_ids.begin(), rm.vertex_ids.end());
    auto new_vertex = [&](int v) {
        long long ext = (v == u || v == w) ? g.vertex_ids[keep] : g.vertex_ids[v];
        return int(std::lower_bound(rm.vertex_ids.begin(), rm.vertex_ids.end(), ext) -
                   rm.vertex_ids.begin());
    };
    std::vector<int> emap(g.num_edges(), -1);
    for (int k = 0; k < g.num_edges(); ++k)
        if (k != e) {
            emap[k] = int(rm.edge_ids.size());
            rm.edge_ids.push_back(g.edge_ids[k]);
        }
    // sigma with du,dw spliced out: hitting either contracted dart jumps into
    // the other endpoint's rotation, which merges the two cyclic orders
    auto succ = [&](int d) {
        int s = g.sigma[d];
        while (true) {
            if (s == du)
                s = g.sigma[dw]; // continue in w's rotation after dw
            else if (s == dw)
                s = g.sigma[du]; // continue in u's rotation after du
            else
                return s;
        }
    };
    rm.sigma.resize(2 * rm.edge_ids.size());
    rm.vertex_of.resize(2 * rm.edge_ids.size());
    auto dmap = [&](int d) { return 2 * emap[d >> 1] + (d & 1); };
    for (int k = 0; k < g.num_edges(); ++k) {
        if (k == e) continue;
        for (int b : {0, 1}) {
            int d = 2 * k + b;
            rm.sigma[dmap(d)] = dmap(succ(d));
            rm.vertex_of[dmap(d)] = new_vertex(g.vertex_of[d]);
        }
    }
    auto comps = detail::split_components(rm);
    if (comps.size() != 1) fail(errc::structure, g.name + ": contraction disconnected the graph");
    return std::move(comps.front());
}

// Replaces a cubic vertex by a triangle.  The rotation at corner i is
// (external dart i, triangle dart toward corner i+1, triangle dart toward
// corner i-1), which extends the original cyclic order and keeps the genus
// (V grows by 2, E by 3, F by 1).  Corner 0 keeps the vertex's external id.
inline EmbeddedGraph y_delta(const EmbeddedGraph& g, int v) {
    if (v < 0 || v >= g.num_vertices()) fail(errc::parse, g.name + ": no such vertex");
    if (g.degree(v) != 3) fail(errc::not_cubic, g.name + ": vertex degree is not 3");
    for (int d : g.vertex_darts[v])
        if (g.vertex_of[EmbeddedGraph::alpha(d)] == v)
            fail(errc::structure, g.name + ": vertex carries a loop");
    detail::RawMap rm;
    rm.name = g.name;
    long long vmax = g.vertex_ids.back();
    long long emax = g.edge_ids.back();
    rm.vertex_ids = g.vertex_ids;
    rm.vertex_ids.push_back(vmax + 1);
    rm.vertex_ids.push_back(vmax + 2);
    rm.edge_ids = g.edge_ids;
    rm.edge_ids.push_back(emax + 1); // corner0 - corner1
    rm.edge_ids.push_back(emax + 2); // corner1 - corner2
    rm.edge_ids.push_back(emax + 3); // corner2 - corner0
    int ne = g.num_edges();
    rm.sigma.assign(2 * ne + 6, -1);
    rm.vertex_of.assign(2 * ne + 6, -1);
    // old darts keep their numbers; old dense vertex indices are unchanged
    // because the new external ids are the largest
    for (int d = 0; d < 2 * ne; ++d) {
        rm.sigma[d] = g.sigma[d];
        rm.vertex_of[d] = g.vertex_of[d];
    }
    const auto& ds = g.vertex_darts[v];
    int corner[3] = {v, g.num_vertices(), g.num_vertices() + 1};
    // triangle darts: edge ne+i runs corner i -> corner i+1
    auto tri_out = [&](int i) { return 2 * (ne + i); };            // at corner i
    auto tri_in = [&](int i) { return 2 * (ne + (i + 2) % 3) + 1; }; // at corner i, from corner i-1
    for (int i = 0; i < 3; ++i) {
        int ext = ds[i];
        rm.vertex_of[ext] = corner[i];
        rm.vertex_of[tri_out(i)] = corner[i];
        rm.vertex_of[tri_in(i)] = corner[i];
        rm.sigma[ext] = tri_out(i);
        rm.sigma[tri_out(i)] = tri_in(i);
        rm.sigma[tri_in(i)] = ext;
    }
    auto comps = detail::split_components(rm);
    if (comps.size() != 1) fail(errc::structure, g.name + ": triangle expansion disconnected the graph");
    EmbeddedGraph out = std::move(comps.front());
    return out;
}

// ---------------------------------------------------------------------------
// Abstract multigraphs and rotation-system enumeration.

struct AbstractMultigraph {
    std::string name;
    std::vector<long long> vertex_ids;                   // sorted, unique
    std::vector<long long> edge_ids;                     // sorted, unique
    std::vector<std::pair<long long, long long>> edges;  // external endpoints, by edge rank
};

inline AbstractMultigraph abstract_of(const EmbeddedGraph& g) {
    AbstractMultigraph m;
    m.name = g.name;
    m.vertex_ids = g.vertex_ids;
    m.edge_ids = g.edge_ids;
    for (int e = 0; e < g.num_edges(); ++e) {
        auto [u, v] = g.endpoints(e);
        m.edges.push_back({g.vertex_ids[u], g.vertex_ids[v]});
    }
    return m;
}

// One embedded graph per choice of cyclic order at each vertex.  Cyclic
// orders are canonicalized by fixing the smallest dart first, giving
// (deg-1)! choices per vertex; the callback receives a running index and may
// return false to stop.  Fails with a complexity error when the total count
// would exceed the guard.
inline long long count_rotation_systems(const AbstractMultigraph& m, long long guard = 10'000'000) {
    std::vector<int> deg(m.vertex_ids.size(), 0);
    for (auto& [u, v] : m.edges) {
        auto du = std::lower_bound(m.vertex_ids.begin(), m.vertex_ids.end(), u);
        auto dv = std::lower_bound(m.vertex_ids.begin(), m.vertex_ids.end(), v);
        if (du == m.vertex_ids.end() || *du != u || dv == m.vertex_ids.end() || *dv != v)
            fail(errc::parse, m.name + ": edge endpoint is not a vertex");
        ++deg[du - m.vertex_ids.begin()];
        ++deg[dv - m.vertex_ids.begin()];
    }
    long long total = 1;
    for (int d : deg) {
        long long f = 1;
        for (int i = 2; i < d; ++i) {
            f *= i;
            if (f > guard) fail(errc::complexity, m.name + ": too many rotation systems");
        }
        if (total > guard / std::max(1LL, f)) fail(errc::complexity, m.name + ": too many rotation systems");
        total *= f;
    }
    return total;
}

inline void enumerate_rotation_systems(const AbstractMultigraph& m,
                                       const std::function<bool(EmbeddedGraph&&, long long)>& sink) {
    count_rotation_systems(m);
    int nv = int(m.vertex_ids.size());
    int ne = int(m.edges.size());
    std::vector<std::vector<int>> darts_at(nv); // ascending
    std::vector<int> vertex_of(2 * ne);
    for (int e = 0; e < ne; ++e) {
        int u = int(std::lower_bound(m.vertex_ids.begin(), m.vertex_ids.end(), m.edges[e].first) -
                    m.vertex_ids.begin());
        int v = int(std::lower_bound(m.vertex_ids.begin(), m.vertex_ids.end(), m.edges[e].second) -
                    m.vertex_ids.begin());
        vertex_of[2 * e] = u;
        vertex_of[2 * e + 1] = v;
        darts_at[u].push_back(2 * e);
        darts_at[v].push_back(2 * e + 1);
    }
    // per-vertex tail permutations in lexicographic order; vertex 0 is the
    // most significant digit of the running index
    std::vector<std::vector<int>> tail(nv);
    for (int v = 0; v < nv; ++v)
        tail[v] = std::vector<int>(darts_at[v].begin() + (darts_at[v].empty() ? 0 : 1),
                                   darts_at[v].end());
    long long idx = 0;
    std::vector<std::vector<int>> cur(nv);
    std::function<bool(int)> rec = [&](int v) -> bool {
        if (v == nv) {
            EmbeddedGraph g;
            g.name = m.name;
            g.vertex_ids = m.vertex_ids;
            g.edge_ids = m.edge_ids;
            g.vertex_of = vertex_of;
            g.sigma.assign(2 * ne, -1);
            for (int w = 0; w < nv; ++w) {
                auto& rot = cur[w];
                for (size_t i = 0; i < rot.size(); ++i) g.sigma[rot[i]] = rot[(i + 1) % rot.size()];
            }
            g.finalize();
            return sink(std::move(g), idx++);
        }
        if (darts_at[v].empty()) return rec(v + 1);
        std::vector<int> t = tail[v];
        do {
            cur[v].clear();
            cur[v].push_back(darts_at[v][0]);
            cur[v].insert(cur[v].end(), t.begin(), t.end());
            if (!rec(v + 1)) return false;
        } while (std::next_permutation(t.begin(), t.end()));
        return true;
    };
    rec(0);
}

inline std::vector<EmbeddedGraph> all_rotation_systems(const AbstractMultigraph& m) {
    std::vector<EmbeddedGraph> out;
    enumerate_rotation_systems(m, [&](EmbeddedGraph&& g, long long) {
        out.push_back(std::move(g));
        return true;
    });
    return out;
}

// ---------------------------------------------------------------------------
// Text formats.

namespace detail {

inline std::vector<std::string> line_tokens(std::string line) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::vector<std::string> toks;
    std::istringstream is(line);
    std::string t;
    while (is >> t) toks.push_back(t);
    return toks;
}

inline long long to_ll(const std::string& s, const char* what) {
    errno = 0;
    char* end = nullptr;
    long long v = std::strtoll(s.c_str(), &end, 10);
    if (errno != 0 || *end != '\0' || end == s.c_str())
        fail(errc::parse, std::string("bad ") + what + " '" + s + "'");
    return v;
}

// strips an optional trailing ':' from id tokens ("vertex 3:" style)
inline std::string strip_colon(std::string s) {
    if (!s.empty() && s.back() == ':') s.pop_back();
    return s;
}

} // namespace detail

// Embedded-graph text format:
//   graph <name>
//   vertex <vid>: <dart> <dart> ...   rotation order, defines sigma
//   edge <eid>: <dart> <dart>         first dart is the reference head
// '#' starts a comment.  Dart ids are arbitrary non-negative integers in the
// file; internally edge k (in ascending edge-id order) owns darts 2k, 2k+1.
inline EmbeddedGraph parse_graph(std::istream& in) {
    std::string line, name;
    std::vector<std::pair<long long, std::vector<long long>>> vlines;
    std::vector<std::pair<long long, std::pair<long long, long long>>> elines;
    bool have_graph = false;
    while (std::getline(in, line)) {
        auto toks = detail::line_tokens(line);
        if (toks.empty()) continue;
        if (toks[0] == "graph") {
            if (have_graph) break; // next record
            if (toks.size() != 2) fail(errc::parse, "graph line needs a name");
            name = toks[1];
            have_graph = true;
        } else if (toks[0] == "vertex") {
            if (!have_graph || toks.size() < 2) fail(errc::parse, "stray vertex line");
            long long vid = detail::to_ll(detail::strip_colon(toks[1]), "vertex id");
            std::vector<long long> ds;
            for (size_t i = 2; i < toks.size(); ++i) ds.push_back(detail::to_ll(toks[i], "dart"));
            vlines.push_back({vid, std::move(ds)});
        } else if (toks[0] == "edge") {
            if (!have_graph || toks.size() != 4) fail(errc::parse, "edge line needs two darts");
            long long eid = detail::to_ll(detail::strip_colon(toks[1]), "edge id");
            long long d1 = detail::to_ll(toks[2], "dart");
            long long d2 = detail::to_ll(toks[3], "dart");
            elines.push_back({eid, {d1, d2}});
        } else {
            fail(errc::parse, "unrecognized line '" + toks[0] + "'");
        }
    }
    if (!have_graph) fail(errc::parse, "missing graph line");
    EmbeddedGraph g;
    g.name = name;
    std::sort(elines.begin(), elines.end());
    std::sort(vlines.begin(), vlines.end());
    std::map<long long, int> dart_dense;
    for (size_t k = 0; k < elines.size(); ++k) {
        auto [eid, dd] = elines[k];
        if (!g.edge_ids.empty() && g.edge_ids.back() == eid)
            fail(errc::parse, "duplicate edge id " + std::to_string(eid));
        if (dd.first == dd.second) fail(errc::parse, "edge pairs a dart with itself");
        for (long long fd : {dd.first, dd.second})
            if (!dart_dense.emplace(fd, 2 * int(k) + (fd == dd.second)).second)
                fail(errc::parse, "dart " + std::to_string(fd) + " appears in two edges");
        g.edge_ids.push_back(eid);
    }
    g.sigma.assign(2 * g.edge_ids.size(), -1);
    g.vertex_of.assign(2 * g.edge_ids.size(), -1);
    for (size_t v = 0; v < vlines.size(); ++v) {
        auto& [vid, ds] = vlines[v];
        if (!g.vertex_ids.empty() && g.vertex_ids.back() == vid)
            fail(errc::parse, "duplicate vertex id " + std::to_string(vid));
        g.vertex_ids.push_back(vid);
        // a dartless vertex is legal only alone; finalize rejects it otherwise
        for (size_t i = 0; i < ds.size(); ++i) {
            auto it = dart_dense.find(ds[i]);
            if (it == dart_dense.end())
                fail(errc::parse, "dart " + std::to_string(ds[i]) + " belongs to no edge");
            int d = it->second;
            if (g.vertex_of[d] != -1)
                fail(errc::parse, "dart " + std::to_string(ds[i]) + " appears twice in rotations");
            g.vertex_of[d] = int(v);
        }
        for (size_t i = 0; i < ds.size(); ++i)
            g.sigma[dart_dense[ds[i]]] = dart_dense[ds[(i + 1) % ds.size()]];
    }
    if (g.vertex_ids.empty()) fail(errc::parse, "graph has no vertices");
    for (int d = 0; d < g.num_darts(); ++d)
        if (g.vertex_of[d] == -1) fail(errc::parse, "a dart is missing from the rotations");
    g.finalize();
    return g;
}

inline EmbeddedGraph parse_graph(const std::string& text) {
    std::istringstream is(text);
    return parse_graph(is);
}

// Canonical serialization: vertices and edges ascending by id, rotations
// starting at the smallest dart, darts numbered 2k/2k+1 by edge rank.
// Parsing the output reproduces the graph byte for byte.
inline void serialize_graph(const EmbeddedGraph& g, std::ostream& os) {
    os << "graph " << g.name << "\n";
    for (int v = 0; v < g.num_vertices(); ++v) {
        os << "vertex " << g.vertex_ids[v] << ":";
        for (int d : g.vertex_darts[v]) os << " " << d;
        os << "\n";
    }
    for (int e = 0; e < g.num_edges(); ++e)
        os << "edge " << g.edge_ids[e] << ": " << 2 * e << " " << 2 * e + 1 << "\n";
}

inline std::string serialize_graph(const EmbeddedGraph& g) {
    std::ostringstream os;
    serialize_graph(g, os);
    return os.str();
}

// Abstract multigraph text format:
//   multigraph <name>
//   edge <eid>: <u> <v>
inline AbstractMultigraph parse_multigraph(std::istream& in) {
    std::string line;
    AbstractMultigraph m;
    bool have_head = false;
    std::vector<std::pair<long long, std::pair<long long, long long>>> elines;
    std::set<long long> vids;
    while (std::getline(in, line)) {
        auto toks = detail::line_tokens(line);
        if (toks.empty()) continue;
        if (toks[0] == "multigraph") {
            if (have_head || toks.size() != 2) fail(errc::parse, "bad multigraph line");
            m.name = toks[1];
            have_head = true;
        } else if (toks[0] == "edge") {
            if (!have_head || toks.size() != 4) fail(errc::parse, "edge line needs two endpoints");
            long long eid = detail::to_ll(detail::strip_colon(toks[1]), "edge id");
            long long u = detail::to_ll(toks[2], "vertex id");
            long long v = detail::to_ll(toks[3], "vertex id");
            elines.push_back({eid, {u, v}});
            vids.insert(u);
            vids.insert(v);
        } else {
            fail(errc::parse, "unrecognized line '" + toks[0] + "'");
        }
    }
    if (!have_head) fail(errc::parse, "missing multigraph line");
    std::sort(elines.begin(), elines.end());
    for (auto& [eid, uv] : elines) {
        if (!m.edge_ids.empty() && m.edge_ids.back() == eid)
            fail(errc::parse, "duplicate edge id " + std::to_string(eid));
        m.edge_ids.push_back(eid);
        m.edges.push_back(uv);
    }
    m.vertex_ids.assign(vids.begin(), vids.end());
    return m;
}

inline AbstractMultigraph parse_multigraph(const std::string& text) {
    std::istringstream is(text);
    return parse_multigraph(is);
}

inline void serialize_multigraph(const AbstractMultigraph& m, std::ostream& os) {
    os << "multigraph " << m.name << "\n";
    for (size_t e = 0; e < m.edges.size(); ++e)
        os << "edge " << m.edge_ids[e] << ": " << m.edges[e].first << " " << m.edges[e].second
           << "\n";
}

inline std::string serialize_multigraph(const AbstractMultigraph& m) {
    std::ostringstream os;
    serialize_multigraph(m, os);
    return os.str();
}

} // namespace dflow
