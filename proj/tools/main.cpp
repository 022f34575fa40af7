// gridweaver command line driver.
//
// Exit codes: 0 ok, 1 verification failure, 2 construction failure, 64 usage.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "gridweaver/json_io.hpp"

using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kVerifyFail = 1;
constexpr int kConstructFail = 2;
constexpr int kUsage = 64;

json graph_spec(const gw::LazyGraph& g) {
    json spec{{"family", g.family}};
    if (!g.params.is_null() && !g.params.empty()) spec["params"] = g.params;
    return spec;
}

int report_and_exit(const gw::CheckReport& rep, const std::string& what) {
    if (rep.ok()) return kOk;
    std::cerr << what << ": verification failed\n" << gw::to_json(rep).dump(2) << "\n";
    return kVerifyFail;
}

void write_dot(const std::string& path, const gw::SubdivisionMap& m) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw gw::Degenerate("cannot write " + path);
    out << gw::subdivision_to_dot(m);
}

int cmd_weave(const std::string& graph, int rows, int cols, const std::string& out,
              const std::string& dot, int scale, int effort, int budget) {
    gw::LazyGraph g = gw::make_graph(graph);
    gw::WeaveOptions opts;
    opts.scale = scale;
    opts.effort = effort;
    opts.teeth_budget = budget;
    gw::SubdivisionMap m = gw::weave(g, rows, cols, opts);

    gw::RunConfig cfg{"weave", graph_spec(g),
                      json{{"rows", rows}, {"cols", cols}, {"scale", scale},
                           {"effort", effort}, {"budget", budget}}};
    gw::write_artifact(out, "subdivision", cfg, gw::to_json(m));
    if (!dot.empty()) write_dot(dot, m);
    return report_and_exit(gw::verify_subdivision(g, m), "weave");
}

int cmd_verify(const std::string& file) {
    if (!std::filesystem::exists(file)) {
        std::cerr << "verify: no such file: " << file << "\n";
        return kUsage;
    }
    json doc = gw::read_artifact(file);
    std::string type = doc.value("type", "");
    gw::LazyGraph g = gw::make_graph(doc.at("meta").at("graph"));
    gw::CheckReport rep;
    if (type == "subdivision") {
        rep = gw::verify_subdivision(g, gw::subdivision_from_json(doc.at("payload")));
    } else if (type == "minor") {
        rep = gw::verify_minor(g, gw::minor_from_json(doc.at("payload")));
    } else if (type == "divergence") {
        const json& p = doc.at("payload");
        rep = gw::verify_divergence_cert(g, gw::ray_from_json(p.at("r1")),
                                         gw::ray_from_json(p.at("r2")),
                                         gw::cert_from_json(p.at("cert")));
    } else {
        std::cerr << "verify: unknown artifact type: " << type << "\n";
        return kUsage;
    }
    std::cout << gw::to_json(rep).dump(2) << "\n";
    return rep.ok() ? kOk : kVerifyFail;
}

int cmd_diverge(const std::string& graph, int scale, int effort, const std::string& out) {
    gw::LazyGraph g = gw::make_graph(graph);
    gw::DivergingPair pair = gw::diverging_pair(g, scale, effort);

    gw::RunConfig cfg{"diverge", graph_spec(g), json{{"scale", scale}, {"effort", effort}}};
    json payload{{"r1", gw::to_json(pair.r1)}, {"r2", gw::to_json(pair.r2)},
                 {"cert", gw::to_json(pair.cert)}};
    gw::write_artifact(out, "divergence", cfg, payload);
    return report_and_exit(gw::verify_divergence_cert(g, pair.r1, pair.r2, pair.cert),
                           "diverge");
}

int cmd_transfer(const std::string& embedding, int rows, int cols, const std::string& out_minor,
                 const std::string& out_sub, int window) {
    if (embedding != "hex-in-square") {
        std::cerr << "transfer: unknown embedding: " << embedding << "\n";
        return kUsage;
    }
    gw::LazyGraph g = gw::make_hex();
    gw::LazyGraph h = gw::make_square();
    auto phi = [](const gw::Token& t) { return t; };
    gw::CoarseEmbedding emb = gw::embedding_constants(phi, g, h, window);

    // Feed sparsify a fragment big enough that its odd dilation lands on
    // the requested rows x cols pattern.
    int s = 2 * emb.K + 1;
    gw::SubdivisionMap big = gw::identity_subdivision(s * (rows - 1) + 1, s * cols);
    gw::SubdivisionMap sparse = gw::sparsify(g, big, emb.K);
    gw::MinorModel model = gw::transfer_minor(emb, g, h, sparse);
    gw::SubdivisionMap sub = gw::minor_to_subdivision(h, model);

    json args{{"embedding", embedding}, {"rows", rows}, {"cols", cols}, {"window", window}};
    gw::RunConfig cfg_m{"transfer", graph_spec(h), args};
    gw::write_artifact(out_minor, "minor", cfg_m, gw::to_json(model));
    gw::write_artifact(out_sub, "subdivision", cfg_m, gw::to_json(sub));

    int rc = report_and_exit(gw::verify_minor(h, model), "transfer minor");
    if (rc != kOk) return rc;
    return report_and_exit(gw::verify_subdivision(h, sub), "transfer subdivision");
}

int cmd_refute(const std::string& graph, int rays, int depth, const std::string& tree_qi,
               const std::string& out) {
    gw::LazyGraph g = gw::make_graph(graph);
    gw::QIToTree qi;
    if (tree_qi == "natural") {
        qi = gw::natural_cylinder_qi();
    } else if (tree_qi == "identity") {
        qi.tree = g;
        qi.gamma = 1.0;
        qi.c = 0.0;
        qi.f = [](const gw::Token& t) { return t; };
    } else {
        std::cerr << "refute: unknown tree map: " << tree_qi << "\n";
        return kUsage;
    }
    gw::RefutationWitness w = gw::refute_half_grid(g, qi, rays, depth);

    gw::RunConfig cfg{"refute", graph_spec(g),
                      json{{"rays", rays}, {"depth", depth}, {"tree_qi", tree_qi}}};
    gw::write_artifact(out, "refutation", cfg, gw::to_json(w));
    return kOk;
}

int cmd_demo_chain(int m, int n, int length, const std::string& out) {
    gw::LazyGraph g = gw::make_cylinder(n);
    gw::MinorModel model = gw::chain_minor(m, n, length);
    gw::RunConfig cfg{"demo", graph_spec(g),
                      json{{"kind", "chain"}, {"m", m}, {"n", n}, {"length", length}}};
    gw::write_artifact(out, "minor", cfg, gw::to_json(model));
    return report_and_exit(gw::verify_minor(g, model), "demo chain");
}

int cmd_demo_clique(int n, const std::string& out) {
    gw::LazyGraph g = gw::make_cubic();
    gw::MinorModel model = gw::clique_minor_cubic(n);
    gw::RunConfig cfg{"demo", graph_spec(g), json{{"kind", "clique"}, {"n", n}}};
    gw::write_artifact(out, "minor", cfg, gw::to_json(model));
    return report_and_exit(gw::verify_minor(g, model), "demo clique");
}

int cmd_demo_two_storey(int rows, int cols, const std::string& out) {
    gw::LazyGraph g = gw::make_two_storey();
    gw::SubdivisionMap m = gw::weave_two_storey(rows, cols);
    gw::RunConfig cfg{"demo", graph_spec(g),
                      json{{"kind", "two_storey"}, {"rows", rows}, {"cols", cols}}};
    gw::write_artifact(out, "subdivision", cfg, gw::to_json(m));
    return report_and_exit(gw::verify_subdivision(g, m), "demo two_storey");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"lazy infinite-graph subdivisions, minors and certificates"};
    app.require_subcommand(1);

    std::string graph = "hex", out, dot, file, embedding = "hex-in-square";
    std::string tree_qi = "natural";
    int rows = 5, cols = 5, scale = 8, effort = 10000, budget = 0;
    int rays = 5, depth = 30, window = 8;
    int demo_m = 6, demo_n = 9, demo_len = 10, clique_n = 6;

    auto* weave = app.add_subcommand("weave", "construct a grid subdivision in a host graph");
    weave->add_option("--graph", graph, "host family");
    weave->add_option("--rows", rows, "pattern rows")->required();
    weave->add_option("--cols", cols, "pattern columns")->required();
    weave->add_option("--out", out, "output JSON path")->required();
    weave->add_option("--dot", dot, "optional DOT export path");
    weave->add_option("--scale", scale, "divergence scale");
    weave->add_option("--effort", effort, "search effort cap");
    weave->add_option("--budget", budget, "teeth budget per level (0: 4*cols)");

    auto* verify = app.add_subcommand("verify", "check an artifact file");
    verify->add_option("file", file, "artifact JSON path")->required();

    auto* diverge = app.add_subcommand("diverge", "find a diverging ray pair with certificate");
    diverge->add_option("--graph", graph, "host family");
    diverge->add_option("--scale", scale, "certificate target n");
    diverge->add_option("--effort", effort, "search effort cap");
    diverge->add_option("--out", out, "output JSON path")->required();

    auto* transfer = app.add_subcommand("transfer", "move a grid minor along a coarse embedding");
    transfer->add_option("--embedding", embedding, "embedding name (hex-in-square)");
    transfer->add_option("--rows", rows, "pattern rows")->required();
    transfer->add_option("--cols", cols, "pattern columns")->required();
    transfer->add_option("--out-minor", out, "minor model output path")->required();
    transfer->add_option("--out-subdivision", dot, "subdivision output path")->required();
    transfer->add_option("--window", window, "constant-scan window radius");

    auto* refute = app.add_subcommand("refute", "refute a disjoint equivalent ray family");
    refute->add_option("--graph", graph, "host family");
    refute->add_option("--rays", rays, "claimed family size");
    refute->add_option("--depth", depth, "ray depth");
    refute->add_option("--tree-qi", tree_qi, "tree map: natural | identity");
    refute->add_option("--out", out, "output JSON path")->required();

    auto* demo = app.add_subcommand("demo", "worked examples");
    demo->require_subcommand(1);
    auto* chain = demo->add_subcommand("chain", "cylinder chain-of-cliques minor");
    chain->add_option("--m", demo_m, "pattern cylinder size");
    chain->add_option("--n", demo_n, "host cylinder size");
    chain->add_option("--length", demo_len, "slices");
    chain->add_option("--out", out, "output JSON path")->required();
    auto* clique = demo->add_subcommand("clique", "K_n minor in the cubic lattice");
    clique->add_option("--n", clique_n, "clique size");
    clique->add_option("--out", out, "output JSON path")->required();
    auto* two_storey = demo->add_subcommand("two_storey", "non-diverging subdivision host");
    two_storey->add_option("--rows", rows, "pattern rows");
    two_storey->add_option("--cols", cols, "pattern columns");
    two_storey->add_option("--out", out, "output JSON path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        if (weave->parsed())
            return cmd_weave(graph, rows, cols, out, dot, scale, effort, budget);
        if (verify->parsed()) return cmd_verify(file);
        if (diverge->parsed()) return cmd_diverge(graph, scale, effort, out);
        if (transfer->parsed())
            return cmd_transfer(embedding, rows, cols, out, dot, window);
        if (refute->parsed()) return cmd_refute(graph, rays, depth, tree_qi, out);
        if (chain->parsed()) return cmd_demo_chain(demo_m, demo_n, demo_len, out);
        if (clique->parsed()) return cmd_demo_clique(clique_n, out);
        if (two_storey->parsed()) return cmd_demo_two_storey(rows, cols, out);
    } catch (const gw::Error& e) {
        std::cerr << e.what() << "\n";
        return kConstructFail;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kConstructFail;
    }
    return kUsage;
}
