#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>

#include "dflow/embedded_graph.hpp"
#include "helpers.hpp"

using namespace dflow;

namespace {

// theta graph on the torus: both rotations run the parallel edges in the
// same cyclic sense
const char* theta_torus_txt =
    "graph theta_t\n"
    "vertex 0: 0 2 4\n"
    "vertex 1: 1 3 5\n"
    "edge 0: 0 1\n"
    "edge 1: 2 3\n"
    "edge 2: 4 5\n";

// planar theta: senses opposed
const char* theta_plane_txt =
    "graph theta_p\n"
    "vertex 0: 0 2 4\n"
    "vertex 1: 1 5 3\n"
    "edge 0: 0 1\n"
    "edge 1: 2 3\n"
    "edge 2: 4 5\n";

// K4 drawn with 0,1,2 as an outer triangle and 3 in the middle; rotations
// read counterclockwise from the drawing
const char* k4_plane_txt =
    "graph k4\n"
    "vertex 0: 0 4 2\n"
    "vertex 1: 6 8 1\n"
    "vertex 2: 3 10 7\n"
    "vertex 3: 11 5 9\n"
    "edge 0: 0 1\n"
    "edge 1: 2 3\n"
    "edge 2: 4 5\n"
    "edge 3: 6 7\n"
    "edge 4: 8 9\n"
    "edge 5: 10 11\n";

// two loops at one vertex joined... no: loop at 0, bridge 0-1, loop at 1
const char* dumbbell_txt =
    "graph dumbbell\n"
    "vertex 0: 0 1 2\n"
    "vertex 1: 3 4 5\n"
    "edge 0: 0 1\n"
    "edge 1: 2 3\n"
    "edge 2: 4 5\n";

EmbeddedGraph parse(const char* txt) { return parse_graph(std::string(txt)); }

std::vector<int> face_sizes(const EmbeddedGraph& g) {
    std::vector<int> out;
    for (auto& f : trace_faces(g).faces) out.push_back(int(f.size()));
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

TEST_CASE("face tracing follows sigma-after-alpha orbits") {
    auto g = parse(theta_torus_txt);
    auto fs = trace_faces(g);
    // hand trace: 0 -> s(1)=3 -> s(2)=4 -> s(5)=1 -> s(0)=2 -> s(3)=5 -> 0
    REQUIRE(fs.faces.size() == 1);
    REQUIRE(fs.faces[0] == std::vector<int>{0, 3, 4, 1, 2, 5});
    REQUIRE(fs.genus == 1);

    auto p = trace_faces(parse(theta_plane_txt));
    REQUIRE(p.faces.size() == 3);
    REQUIRE(p.genus == 0);
}

TEST_CASE("loop embeddings distinguish nested from interleaved") {
    // one loop on the sphere: two faces of size 1
    auto g1 = parse(
        "graph l1\nvertex 0: 0 1\nedge 0: 0 1\n");
    REQUIRE(face_sizes(g1) == std::vector<int>{1, 1});
    REQUIRE(trace_faces(g1).genus == 0);

    // nested pair of loops stays planar
    auto nested = parse(
        "graph l2n\nvertex 0: 0 1 2 3\nedge 0: 0 1\nedge 1: 2 3\n");
    REQUIRE(trace_faces(nested).genus == 0);
    REQUIRE(trace_faces(nested).faces.size() == 3);

    // interleaved pair is the standard torus square
    auto torus = parse(
        "graph l2i\nvertex 0: 0 2 1 3\nedge 0: 0 1\nedge 1: 2 3\n");
    auto fs = trace_faces(torus);
    REQUIRE(fs.faces.size() == 1);
    REQUIRE(fs.genus == 1);
}

TEST_CASE("planar K4 has four triangular faces") {
    auto g = parse(k4_plane_txt);
    REQUIRE(g.num_vertices() == 4);
    REQUIRE(g.num_edges() == 6);
    REQUIRE(face_sizes(g) == std::vector<int>{3, 3, 3, 3});
    REQUIRE(trace_faces(g).genus == 0);
    REQUIRE(bridges(g).empty());
}

TEST_CASE("K4 rotation systems split 2 spherical / 14 toroidal") {
    // Whitney: a 3-connected planar graph embeds in the oriented sphere in
    // exactly two ways (mirror images); K4 is upper-embeddable with
    // cycle rank 3, so everything else lands on the torus.
    auto m = abstract_of(parse(k4_plane_txt));
    auto all = all_rotation_systems(m);
    REQUIRE(all.size() == 16);
    std::map<int, int> by_genus;
    for (auto& g : all) ++by_genus[trace_faces(g).genus];
    REQUIRE(by_genus[0] == 2);
    REQUIRE(by_genus[1] == 14);
}

TEST_CASE("rotation enumeration is canonical and sequential") {
    auto m = abstract_of(parse(theta_torus_txt));
    auto all = all_rotation_systems(m);
    REQUIRE(all.size() == 4); // (3-1)! per vertex
    int one_face = 0;
    std::set<std::string> distinct;
    long long want_idx = 0;
    enumerate_rotation_systems(m, [&](EmbeddedGraph&& g, long long idx) {
        REQUIRE(idx == want_idx++);
        // smallest dart leads every rotation
        for (int v = 0; v < g.num_vertices(); ++v)
            REQUIRE(g.vertex_darts[v][0] ==
                    *std::min_element(g.vertex_darts[v].begin(), g.vertex_darts[v].end()));
        distinct.insert(serialize_graph(g));
        if (trace_faces(g).faces.size() == 1) ++one_face;
        return true;
    });
    REQUIRE(want_idx == 4);
    REQUIRE(distinct.size() == 4);
    REQUIRE(one_face == 2); // same-sense pair and its mirror

    // early stop
    int seen = 0;
    enumerate_rotation_systems(m, [&](EmbeddedGraph&&, long long) { return ++seen < 2; });
    REQUIRE(seen == 2);

    // bouquet of two loops: 3! = 6 orders, two of them interleave
    auto b = parse_multigraph("multigraph b2\nedge 0: 7 7\nedge 1: 7 7\n");
    std::map<int, int> by_genus;
    for (auto& g : all_rotation_systems(b)) ++by_genus[trace_faces(g).genus];
    REQUIRE(by_genus[0] == 4);
    REQUIRE(by_genus[1] == 2);
}

TEST_CASE("rotation enumeration refuses huge spaces") {
    AbstractMultigraph m;
    m.name = "big";
    m.vertex_ids = {0};
    for (long long e = 0; e < 15; ++e) {
        m.edge_ids.push_back(e);
        m.edges.push_back({0, 0});
    }
    REQUIRE_THROWS_MATCHES(count_rotation_systems(m), error, ErrcIs(errc::complexity));
}

TEST_CASE("graph text round-trips byte for byte") {
    for (const char* txt : {theta_torus_txt, theta_plane_txt, k4_plane_txt, dumbbell_txt}) {
        auto g = parse(txt);
        auto s1 = serialize_graph(g);
        auto g2 = parse_graph(s1);
        REQUIRE(serialize_graph(g2) == s1);
        REQUIRE(g2.sigma == g.sigma);
        REQUIRE(g2.vertex_of == g.vertex_of);
        REQUIRE(g2.vertex_ids == g.vertex_ids);
        REQUIRE(g2.edge_ids == g.edge_ids);
    }
    // ids and dart names in the file may be sparse; output is dense
    auto g = parse_graph(std::string(
        "# comment\n"
        "graph sparse\n"
        "vertex 10: 100 300\n"
        "vertex 20: 200 400\n"
        "edge 7: 100 200   # head dart first\n"
        "edge 9: 400 300\n"));
    REQUIRE(g.vertex_ids == std::vector<long long>{10, 20});
    REQUIRE(g.edge_ids == std::vector<long long>{7, 9});
    // edge 9 head dart 400 sits at vertex 20
    REQUIRE(g.vertex_of[2] == 1);
    REQUIRE(serialize_graph(g) ==
            "graph sparse\n"
            "vertex 10: 0 3\n"
            "vertex 20: 1 2\n"
            "edge 7: 0 1\n"
            "edge 9: 2 3\n");
}

TEST_CASE("graph parser rejects malformed input") {
    auto bad = [](const std::string& txt) {
        REQUIRE_THROWS_MATCHES(parse_graph(txt), error, ErrcIs(errc::parse));
    };
    bad("vertex 0: 0 1\n");                                          // no header
    bad("graph g\n");                                                // no vertices
    bad("graph g\nvertex 0: 0 1\nvertex 0: 2 3\nedge 0: 0 1\nedge 1: 2 3\n"); // dup vertex
    bad("graph g\nvertex 0: 0 1 2 3\nedge 0: 0 1\nedge 0: 2 3\n");   // dup edge
    bad("graph g\nvertex 0: 0 1\nedge 0: 0 0\n");                    // dart paired with itself
    bad("graph g\nvertex 0: 0 1 9\nedge 0: 0 1\n");                  // dart in no edge
    bad("graph g\nvertex 0: 0\nedge 0: 0 1\n");                      // dart missing from rotations
    bad("graph g\nvertex 0: 0 1\nvertex 1: 1 0\nedge 0: 0 1\n");     // dart in two rotations
    bad("graph g\nvertex 0: 0 1\nedge 0: 0 1\nedge 0: 0 2\n");       // dart in two edges
    bad("graph g\nfrobnicate 1 2\n");                                // unknown directive
    bad("graph g\nvertex 0: x y\nedge 0: 0 1\n");                    // non-numeric
    // two disjoint loops: structurally fine lines, but not connected
    REQUIRE_THROWS_MATCHES(
        parse_graph(std::string("graph g\nvertex 0: 0 1\nvertex 1: 2 3\n"
                                "edge 0: 0 1\nedge 1: 2 3\n")),
        error, ErrcIs(errc::structure));
}

TEST_CASE("bridges are the cut edges; loops and parallels never qualify") {
    REQUIRE(bridges(parse(theta_torus_txt)).empty());
    auto db = parse(dumbbell_txt);
    REQUIRE(bridges(db) == std::vector<int>{1});
    auto path = parse_graph(std::string(
        "graph p3\nvertex 0: 0\nvertex 1: 1 2\nvertex 2: 3\n"
        "edge 0: 0 1\nedge 1: 2 3\n"));
    REQUIRE(bridges(path) == std::vector<int>{0, 1});
    auto par = parse_graph(std::string(
        "graph p2\nvertex 0: 0 2\nvertex 1: 1 3\nedge 0: 0 1\nedge 1: 2 3\n"));
    REQUIRE(bridges(par).empty());
}

TEST_CASE("edge deletion keeps external ids and splits components") {
    auto db = parse(dumbbell_txt);
    auto parts = delete_edge(db, 1);
    REQUIRE(parts.size() == 2);
    REQUIRE(parts[0].vertex_ids == std::vector<long long>{0});
    REQUIRE(parts[0].edge_ids == std::vector<long long>{0});
    REQUIRE(parts[1].vertex_ids == std::vector<long long>{1});
    REQUIRE(parts[1].edge_ids == std::vector<long long>{2});
    for (auto& p : parts) REQUIRE(trace_faces(p).genus == 0);

    auto th = parse(theta_torus_txt);
    auto rest = delete_edge(th, 1);
    REQUIRE(rest.size() == 1);
    REQUIRE(rest[0].edge_ids == std::vector<long long>{0, 2});
    // two parallel edges always bound a sphere
    REQUIRE(trace_faces(rest[0]).genus == 0);

    // deleting a loop leaves its vertex in place
    auto solo = delete_edge(db, 0);
    REQUIRE(solo.size() == 1);
    REQUIRE(solo[0].num_vertices() == 2);
    REQUIRE(solo[0].edge_ids == std::vector<long long>{1, 2});

    // deleting everything at a vertex leaves a bare one-vertex component,
    // which still round-trips through the text format
    auto bare = delete_edges(db, {0, 1});
    REQUIRE(bare.size() == 2);
    REQUIRE(bare[0].num_edges() == 0);
    REQUIRE(bare[0].vertex_ids == std::vector<long long>{0});
    REQUIRE(trace_faces(bare[0]).genus == 0);
    REQUIRE(serialize_graph(parse_graph(serialize_graph(bare[0]))) == serialize_graph(bare[0]));
}

TEST_CASE("contraction merges rotations and preserves the surface") {
    // torus theta: contracting edge 0 leaves two interleaved loops
    auto t = contract_edge(parse(theta_torus_txt), 0);
    REQUIRE(t.num_vertices() == 1);
    REQUIRE(t.num_edges() == 2);
    REQUIRE(t.edge_ids == std::vector<long long>{1, 2});
    REQUIRE(trace_faces(t).genus == 1);
    // planar theta: nested loops
    auto p = contract_edge(parse(theta_plane_txt), 0);
    REQUIRE(trace_faces(p).genus == 0);

    auto k4 = parse(k4_plane_txt);
    for (int e = 0; e < k4.num_edges(); ++e) {
        auto c = contract_edge(k4, e);
        REQUIRE(c.num_vertices() == 3);
        REQUIRE(c.num_edges() == 5);
        REQUIRE(trace_faces(c).faces.size() == trace_faces(k4).faces.size());
        REQUIRE(trace_faces(c).genus == 0);
    }
    REQUIRE_THROWS_MATCHES(contract_edge(parse(dumbbell_txt), 0), error,
                           ErrcIs(errc::structure)); // loop
}

TEST_CASE("triangle expansion of a cubic vertex adds one face") {
    auto k4 = parse(k4_plane_txt);
    auto before = trace_faces(k4);
    auto g = y_delta(k4, 3);
    REQUIRE(g.num_vertices() == 6);
    REQUIRE(g.num_edges() == 9);
    REQUIRE(g.vertex_ids == std::vector<long long>{0, 1, 2, 3, 4, 5});
    REQUIRE(g.edge_ids == std::vector<long long>{0, 1, 2, 3, 4, 5, 6, 7, 8});
    auto after = trace_faces(g);
    REQUIRE(after.faces.size() == before.faces.size() + 1);
    REQUIRE(after.genus == before.genus);
    for (int v = 0; v < g.num_vertices(); ++v) REQUIRE(g.degree(v) == 3);
    // the new triangle is a face: each new vertex carries one original edge
    auto fs = face_sizes(g);
    REQUIRE(std::count(fs.begin(), fs.end(), 3) >= 1);

    // torus theta vertex: genus stays 1
    auto t = y_delta(parse(theta_torus_txt), 0);
    REQUIRE(trace_faces(t).genus == 1);
    REQUIRE(t.num_vertices() == 4);

    REQUIRE_THROWS_MATCHES(y_delta(parse(dumbbell_txt), 0), error, ErrcIs(errc::structure));
    auto deg4 = parse("graph d4\nvertex 0: 0 2 1 3\nedge 0: 0 1\nedge 1: 2 3\n");
    REQUIRE_THROWS_MATCHES(y_delta(deg4, 0), error, ErrcIs(errc::not_cubic));
}

TEST_CASE("abstract multigraph text round-trips") {
    auto m = parse_multigraph(std::string(
        "multigraph m\n# a loop and a doubled edge\nedge 3: 5 5\nedge 1: 2 5\nedge 2: 2 5\n"));
    REQUIRE(m.vertex_ids == std::vector<long long>{2, 5});
    REQUIRE(m.edge_ids == std::vector<long long>{1, 2, 3});
    REQUIRE(m.edges[2] == std::pair<long long, long long>{5, 5});
    auto s = serialize_multigraph(m);
    REQUIRE(serialize_multigraph(parse_multigraph(s)) == s);

    auto k4m = abstract_of(parse(k4_plane_txt));
    REQUIRE(serialize_multigraph(k4m) ==
            "multigraph k4\n"
            "edge 0: 0 1\n"
            "edge 1: 0 2\n"
            "edge 2: 0 3\n"
            "edge 3: 1 2\n"
            "edge 4: 1 3\n"
            "edge 5: 2 3\n");
    REQUIRE_THROWS_MATCHES(parse_multigraph(std::string("multigraph m\nedge 0: 1\n")), error,
                           ErrcIs(errc::parse));
}
