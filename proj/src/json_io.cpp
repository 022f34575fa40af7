#include "gridweaver/json_io.hpp"

#include <fstream>

namespace gw {

namespace {

using nlohmann::json;

json pair_json(const TokenPair& p) { return json::array({p.first, p.second}); }

TokenPair pair_from(const json& j) { return {j.at(0).get<Token>(), j.at(1).get<Token>()}; }

}  // namespace

json to_json(const Ray& r) {
    json j{{"prefix", r.prefix}};
    if (r.extender)
        j["extender"] = json{{"rule", r.extender->rule}, {"params", r.extender->params}};
    else
        j["extender"] = nullptr;
    return j;
}

Ray ray_from_json(const json& j) {
    Ray r;
    r.prefix = j.at("prefix").get<std::vector<Token>>();
    if (j.contains("extender") && !j.at("extender").is_null())
        r.extender = Extender{j.at("extender").at("rule").get<std::string>(),
                              j.at("extender").value("params", json::object())};
    return r;
}

json to_json(const DivergenceCertificate& cert) {
    json rows = json::array();
    for (const auto& r : cert.rows)
        rows.push_back(json{{"n", r.n}, {"i", r.i}, {"j", r.j},
                            {"window_radius", r.window_radius}});
    return json{{"rows", rows}};
}

DivergenceCertificate cert_from_json(const json& j) {
    DivergenceCertificate cert;
    for (const auto& r : j.at("rows"))
        cert.rows.push_back({r.at("n").get<int>(), r.at("i").get<int>(), r.at("j").get<int>(),
                             r.at("window_radius").get<int>()});
    return cert;
}

json to_json(const SubdivisionMap& m) {
    json edges = json::array(), paths = json::array();
    for (const auto& e : m.pattern_edges) edges.push_back(pair_json(e));
    for (const auto& [e, p] : m.edge_paths)
        paths.push_back(json{{"edge", pair_json(e)}, {"path", p}});
    return json{{"fragment", {{"rows", m.fragment.rows}, {"cols", m.fragment.cols}}},
                {"pattern_vertices", m.pattern_vertices},
                {"pattern_edges", edges},
                {"branch", m.branch},
                {"edge_paths", paths}};
}

SubdivisionMap subdivision_from_json(const json& j) {
    SubdivisionMap m;
    m.fragment.rows = j.at("fragment").at("rows").get<int>();
    m.fragment.cols = j.at("fragment").at("cols").get<int>();
    m.pattern_vertices = j.at("pattern_vertices").get<std::set<Token>>();
    for (const auto& e : j.at("pattern_edges")) m.pattern_edges.insert(pair_from(e));
    m.branch = j.at("branch").get<std::map<Token, Token>>();
    for (const auto& ep : j.at("edge_paths"))
        m.edge_paths[pair_from(ep.at("edge"))] = ep.at("path").get<std::vector<Token>>();
    return m;
}

json to_json(const MinorModel& m) {
    json edges = json::array(), witness = json::array();
    for (const auto& e : m.pattern_edges) edges.push_back(pair_json(e));
    for (const auto& [e, w] : m.edge_witness)
        witness.push_back(json{{"edge", pair_json(e)}, {"witness", pair_json(w)}});
    json sets = json::object();
    for (const auto& [pv, set] : m.branch_sets) sets[pv] = set;
    return json{{"pattern_vertices", m.pattern_vertices},
                {"pattern_edges", edges},
                {"branch_sets", sets},
                {"edge_witness", witness}};
}

MinorModel minor_from_json(const json& j) {
    MinorModel m;
    m.pattern_vertices = j.at("pattern_vertices").get<std::set<Token>>();
    for (const auto& e : j.at("pattern_edges")) m.pattern_edges.insert(pair_from(e));
    for (const auto& [pv, set] : j.at("branch_sets").items())
        m.branch_sets[pv] = set.get<std::set<Token>>();
    for (const auto& w : j.at("edge_witness"))
        m.edge_witness[pair_from(w.at("edge"))] = pair_from(w.at("witness"));
    return m;
}

json to_json(const CheckReport& rep) {
    json v = json::array();
    for (const auto& viol : rep.violations)
        v.push_back(json{{"rule", viol.rule}, {"witness", viol.witness},
                         {"message", viol.message}});
    return json{{"ok", rep.ok()}, {"violations", v}, {"stats", rep.stats}};
}

json to_json(const RefutationWitness& w) {
    return json{{"refuted", w.refuted},     {"mode", w.mode},
                {"tree_vertex", w.tree_vertex}, {"slab", w.slab},
                {"capacity", w.capacity},   {"requested", w.requested},
                {"detail", w.detail}};
}

json to_json(const CoarseEmbedding& emb) {
    return json{{"map", emb.map}, {"window", emb.window}, {"L", emb.L}, {"K", emb.K}};
}

json RunConfig::to_meta() const {
    return json{{"command", command}, {"graph", graph}, {"args", args},
                {"seed", seed},       {"cap", global_window_cap()}};
}

void write_artifact(const std::string& path, const std::string& type, const RunConfig& cfg,
                    const json& payload) {
    json doc{{"meta", cfg.to_meta()}, {"type", type}, {"payload", payload}};
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Degenerate("cannot write " + path);
    out << doc.dump(2) << "\n";
}

json read_artifact(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Degenerate("cannot read " + path);
    return json::parse(in);
}

std::string subdivision_to_dot(const SubdivisionMap& m) {
    std::set<TokenPair> host_edges;
    std::set<Token> branch_images;
    for (const auto& [pv, img] : m.branch) branch_images.insert(img);
    for (const auto& [e, p] : m.edge_paths)
        for (std::size_t i = 0; i + 1 < p.size(); ++i) host_edges.insert(norm_edge(p[i], p[i + 1]));
    std::string dot = "graph image {\n  node [shape=point];\n";
    for (const auto& v : branch_images) dot += "  \"" + v + "\" [shape=circle];\n";
    for (const auto& [a, b] : host_edges) dot += "  \"" + a + "\" -- \"" + b + "\";\n";
    dot += "}\n";
    return dot;
}

}  // namespace gw
