// dflow: decide, count, and transform dihedral-valued flows on embedded
// multigraphs.  Graphs are files in the rotation-system format or
// corpus:<name>; flows and colorings are files (several records per file,
// --index picks one) or corpus:<name>:<idx>.
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "dflow/corpus.hpp"
#include "dflow/existence.hpp"
#include "dflow/snark.hpp"

namespace {

using namespace dflow;

EmbeddedGraph load_graph(const std::string& spec) {
    if (spec.rfind("corpus:", 0) == 0) return corpus_graph(spec.substr(7));
    std::ifstream in(spec);
    if (!in) fail(errc::parse, "cannot open '" + spec + "'");
    return parse_graph(in);
}

FlowAssignment load_flow(const std::string& spec, const EmbeddedGraph& g, int index) {
    std::vector<FlowAssignment> flows;
    if (spec.rfind("corpus:", 0) == 0) {
        std::string rest = spec.substr(7);
        auto pos = rest.find(':');
        if (pos != std::string::npos) {
            index = int(detail::to_ll(rest.substr(pos + 1), "flow index"));
            rest = rest.substr(0, pos);
        }
        flows = corpus_flows(rest);
    } else {
        std::ifstream in(spec);
        if (!in) fail(errc::parse, "cannot open '" + spec + "'");
        flows = parse_flows(in, g);
    }
    if (index < 0 || index >= int(flows.size()))
        fail(errc::parse, "flow index " + std::to_string(index) + " out of range (" +
                              std::to_string(flows.size()) + " records)");
    return flows[index];
}

EdgeColoring load_coloring(const std::string& spec, const EmbeddedGraph& g, int index) {
    std::ifstream in(spec);
    if (!in) fail(errc::parse, "cannot open '" + spec + "'");
    auto cols = parse_colorings(in, g);
    if (index < 0 || index >= int(cols.size()))
        fail(errc::parse, "coloring index " + std::to_string(index) + " out of range (" +
                              std::to_string(cols.size()) + " records)");
    return cols[index];
}

int run(int argc, char** argv) {
    CLI::App app{"dihedral flows on embedded multigraphs"};
    app.require_subcommand(1);
    int exit_code = 0;

    std::string gspec, fspec, cspec, ctxs, family;
    int index = 0, nfrom = 2, nto = 6, want_faces = -1;
    bool emit = false;

    auto* faces = app.add_subcommand("faces", "face walks and genus");
    faces->add_option("graph", gspec)->required();
    faces->callback([&] {
        auto g = load_graph(gspec);
        auto fs = trace_faces(g);
        std::cout << "faces=" << fs.faces.size() << " genus=" << fs.genus << "\n";
        for (size_t i = 0; i < fs.faces.size(); ++i) {
            std::cout << "face " << i << ":";
            for (int d : fs.faces[i]) std::cout << ' ' << d;
            std::cout << "\n";
        }
    });

    auto* br = app.add_subcommand("bridges", "cut edges and their plane-sidedness");
    br->add_option("graph", gspec)->required();
    br->callback([&] {
        auto g = load_graph(gspec);
        auto bs = bridges(g);
        auto psb = plane_sided_bridges(g);
        std::cout << "bridges=" << bs.size() << "\n";
        for (int e : bs)
            std::cout << "bridge " << e << " plane_sided="
                      << (std::find(psb.begin(), psb.end(), e) != psb.end() ? "yes" : "no")
                      << "\n";
    });

    auto* ex = app.add_subcommand("exists", "structural existence criterion");
    ex->add_option("graph", gspec)->required();
    ex->add_option("--group", ctxs, "full dihedral context, e.g. D2n:3")->required();
    ex->callback([&] {
        auto g = load_graph(gspec);
        auto v = devos_verdict(g, parse_ctx(ctxs));
        std::cout << format_verdict(v) << "\n";
        exit_code = !v.exists ? 3 : (*v.exists ? 0 : 1);
    });

    auto* cnt = app.add_subcommand("count", "count nowhere-identity flows");
    cnt->add_option("graph", gspec)->required();
    cnt->add_option("--ctx", ctxs)->required();
    cnt->callback([&] {
        auto g = load_graph(gspec);
        long long n = count_flows(g, parse_ctx(ctxs));
        std::cout << "count=" << n << "\n";
    });

    auto* fnd = app.add_subcommand("find", "find one nowhere-identity flow");
    fnd->add_option("graph", gspec)->required();
    fnd->add_option("--ctx", ctxs)->required();
    fnd->callback([&] {
        auto g = load_graph(gspec);
        auto f = find_flow(g, parse_ctx(ctxs));
        if (f)
            std::cout << serialize_flow(g, *f);
        else {
            std::cout << "none\n";
            exit_code = 1;
        }
    });

    auto* ver = app.add_subcommand("verify", "check conservation and support");
    ver->add_option("graph", gspec)->required();
    ver->add_option("flow", fspec)->required();
    ver->add_option("--index", index);
    ver->callback([&] {
        auto g = load_graph(gspec);
        auto f = load_flow(fspec, g, index);
        auto rep = verify(g, f);
        std::cout << "valid=" << (rep.valid() ? "yes" : "no") << " nowhere_identity="
                  << (rep.nowhere_identity ? "yes" : "no") << "\n";
        if (!rep.detail.empty()) std::cout << "detail: " << rep.detail << "\n";
        exit_code = rep.valid() && rep.nowhere_identity ? 0 : 1;
    });

    auto* lf = app.add_subcommand("lift", "lift a modular flow to bounded values");
    lf->add_option("graph", gspec)->required();
    lf->add_option("flow", fspec)->required();
    lf->add_option("--index", index);
    lf->callback([&] {
        auto g = load_graph(gspec);
        auto f = load_flow(fspec, g, index);
        auto up = lift(g, f);
        if (up)
            std::cout << serialize_flow(g, *up);
        else {
            std::cout << "none\n";
            exit_code = 1;
        }
    });

    auto* rd = app.add_subcommand("reduce", "multiply reflection cycles away");
    rd->add_option("graph", gspec)->required();
    rd->add_option("flow", fspec)->required();
    rd->add_option("--index", index);
    rd->callback([&] {
        auto g = load_graph(gspec);
        auto f = load_flow(fspec, g, index);
        auto out = reduce_to_rotation_flow(g, f);
        if (out.ok()) {
            std::cout << "reduced=yes\n" << serialize_flow(g, out.flow);
        } else {
            std::cout << "reduced=no reason="
                      << (out.reason == ReduceReason::non_contractible ? "non-contractible-cycle"
                                                                       : "all-reflection-classes")
                      << "\n";
            exit_code = 1;
        }
    });

    auto* c3 = app.add_subcommand("color3", "find a proper 3-edge coloring");
    c3->add_option("graph", gspec)->required();
    c3->callback([&] {
        auto g = load_graph(gspec);
        auto c = find_3_edge_coloring(g);
        if (c)
            std::cout << serialize_coloring(g, *c);
        else {
            std::cout << "none\n";
            exit_code = 1;
        }
    });

    auto* sp = app.add_subcommand("special4", "special 4-edge colorings");
    sp->require_subcommand(1);
    auto* spc = sp->add_subcommand("check", "test the special pattern");
    spc->add_option("graph", gspec)->required();
    spc->add_option("coloring", cspec)->required();
    spc->add_option("--index", index);
    spc->callback([&] {
        auto g = load_graph(gspec);
        auto c = load_coloring(cspec, g, index);
        auto violation = detail::special4_violation(g, c);
        if (!violation)
            std::cout << "special=yes\n";
        else {
            std::cout << "special=no\nviolation: " << *violation << "\n";
            exit_code = 1;
        }
    });
    auto* spf = sp->add_subcommand("from-flow", "coloring of a bounded 2-flow");
    spf->add_option("graph", gspec)->required();
    spf->add_option("flow", fspec)->required();
    spf->add_option("--index", index);
    spf->callback([&] {
        auto g = load_graph(gspec);
        auto f = load_flow(fspec, g, index);
        std::cout << serialize_coloring(g, flow_to_special4(g, f));
    });
    auto* spt = sp->add_subcommand("to-flow", "bounded 2-flow of a special coloring");
    spt->add_option("graph", gspec)->required();
    spt->add_option("coloring", cspec)->required();
    spt->add_option("--index", index);
    spt->callback([&] {
        auto g = load_graph(gspec);
        auto c = load_coloring(cspec, g, index);
        std::cout << serialize_flow(g, special4_to_flow(g, c));
    });

    auto* co = app.add_subcommand("corpus", "bundled graphs");
    co->require_subcommand(1);
    auto* col = co->add_subcommand("list", "names, one per line");
    col->callback([&] {
        for (const auto& nm : corpus_names()) std::cout << nm << "\n";
    });
    auto* coe = co->add_subcommand("emit", "canonical text of one graph");
    coe->add_option("name", gspec)->required();
    coe->callback([&] { std::cout << serialize_graph(corpus_graph(gspec)); });

    auto* sw = app.add_subcommand("sweep", "count over a range of group sizes");
    sw->add_option("graph", gspec)->required();
    sw->add_option("--ctx-family", family, "D2n or Dlt")->required();
    sw->add_option("--n-from", nfrom)->required();
    sw->add_option("--n-to", nto)->required();
    sw->callback([&] {
        auto g = load_graph(gspec);
        if (family != "D2n" && family != "Dlt")
            fail(errc::parse, "context family must be D2n or Dlt");
        if (nfrom < 2 || nto < nfrom) fail(errc::parse, "need 2 <= n-from <= n-to");
        for (int n = nfrom; n <= nto; ++n) {
            GroupCtx ctx = family == "D2n" ? GroupCtx::dihedral_mod(n)
                                           : GroupCtx::dihedral_bounded(n);
            long long c = count_flows(g, ctx);
            std::cout << "n=" << n << " count=" << c << "\n";
        }
    });

    auto* rot = app.add_subcommand("rotations", "enumerate rotation systems");
    rot->add_option("multigraph", gspec, "abstract multigraph file")->required();
    rot->add_option("--faces", want_faces, "keep only systems with this many faces");
    rot->add_flag("--emit", emit, "print each kept system");
    rot->callback([&] {
        std::ifstream in(gspec);
        if (!in) fail(errc::parse, "cannot open '" + gspec + "'");
        auto m = parse_multigraph(in);
        long long total = 0, matched = 0;
        enumerate_rotation_systems(m, [&](EmbeddedGraph&& g, long long idx) {
            ++total;
            auto fs = trace_faces(g);
            if (want_faces >= 0 && int(fs.faces.size()) != want_faces) return true;
            ++matched;
            std::cout << "rotation " << idx << " faces=" << fs.faces.size()
                      << " genus=" << fs.genus << "\n";
            if (emit) std::cout << serialize_graph(g);
            return true;
        });
        std::cout << "total=" << total << " matched=" << matched << "\n";
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }
    return exit_code;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const dflow::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code == dflow::errc::complexity ? 3 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
