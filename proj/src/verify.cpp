#include "gridweaver/verify.hpp"

#include <algorithm>
#include <deque>

namespace gw {

void CheckReport::sort_violations() {
    std::sort(violations.begin(), violations.end(), [](const Violation& a, const Violation& b) {
        return std::tie(a.rule, a.witness, a.message) < std::tie(b.rule, b.witness, b.message);
    });
}

int Separation::order() const {
    int n = 0;
    for (const auto& t : a)
        if (b.count(t)) ++n;
    return n;
}

namespace {

// path sanity shared by several verifiers
void check_host_path(const LazyGraph& g, const std::vector<Token>& path, const std::string& rule,
                     const std::string& label, CheckReport& rep) {
    if (path.empty()) {
        rep.add(rule, label, "empty path");
        return;
    }
    std::set<Token> seen;
    for (std::size_t i = 0; i < path.size(); ++i) {
        if (!seen.insert(path[i]).second)
            rep.add(rule, path[i], "repeated vertex on " + label);
        if (i + 1 < path.size() && !g.adjacent(path[i], path[i + 1]))
            rep.add(rule, path[i] + " - " + path[i + 1], "non-edge on " + label);
    }
}

}  // namespace

CheckReport verify_subdivision(const LazyGraph& g, const SubdivisionMap& m) {
    CheckReport rep;
    rep.stats["pattern-vertices"] = static_cast<int>(m.pattern_vertices.size());
    rep.stats["pattern-edges"] = static_cast<int>(m.pattern_edges.size());

    std::map<Token, Token> image_owner;
    for (const auto& pv : m.pattern_vertices) {
        auto it = m.branch.find(pv);
        if (it == m.branch.end()) {
            rep.add("pattern-coverage", pv, "pattern vertex without branch image");
            continue;
        }
        auto [io, fresh] = image_owner.emplace(it->second, pv);
        if (!fresh) rep.add("branch-injective", it->second,
                            "image shared by " + io->second + " and " + pv);
    }
    for (const auto& [pv, img] : m.branch)
        if (!m.pattern_vertices.count(pv))
            rep.add("pattern-coverage", pv, "branch image for unknown pattern vertex");

    std::map<Token, std::string> internal_owner;
    for (const auto& e : m.pattern_edges) {
        std::string label = e.first + " - " + e.second;
        auto it = m.edge_paths.find(e);
        if (it == m.edge_paths.end()) {
            rep.add("pattern-coverage", label, "pattern edge without path");
            continue;
        }
        const auto& path = it->second;
        check_host_path(g, path, "edge-path-valid", label, rep);
        if (path.empty()) continue;
        auto ba = m.branch.find(e.first);
        auto bb = m.branch.find(e.second);
        if (ba != m.branch.end() && path.front() != ba->second)
            rep.add("edge-path-valid", path.front(), "path does not start at branch of " + e.first);
        if (bb != m.branch.end() && path.back() != bb->second)
            rep.add("edge-path-valid", path.back(), "path does not end at branch of " + e.second);
        for (std::size_t i = 1; i + 1 < path.size(); ++i) {
            if (image_owner.count(path[i]))
                rep.add("internal-disjointness", path[i],
                        "interior of " + label + " hits a branch vertex");
            auto [io, fresh] = internal_owner.emplace(path[i], label);
            if (!fresh)
                rep.add("internal-disjointness", path[i],
                        "shared by " + io->second + " and " + label);
        }
    }
    for (const auto& [e, path] : m.edge_paths)
        if (!m.pattern_edges.count(e))
            rep.add("pattern-coverage", e.first + " - " + e.second,
                    "path for unknown pattern edge");

    rep.sort_violations();
    return rep;
}

CheckReport verify_minor(const LazyGraph& g, const MinorModel& model) {
    CheckReport rep;
    rep.stats["pattern-vertices"] = static_cast<int>(model.pattern_vertices.size());
    rep.stats["pattern-edges"] = static_cast<int>(model.pattern_edges.size());

    std::map<Token, Token> owner;
    for (const auto& pv : model.pattern_vertices) {
        auto it = model.branch_sets.find(pv);
        if (it == model.branch_sets.end() || it->second.empty()) {
            rep.add("pattern-coverage", pv, "missing or empty branch set");
            continue;
        }
        const auto& set = it->second;
        for (const auto& t : set) {
            auto [io, fresh] = owner.emplace(t, pv);
            if (!fresh)
                rep.add("branch-disjointness", t, "shared by " + io->second + " and " + pv);
        }
        // connectivity within the set under host adjacency
        std::set<Token> seen{*set.begin()};
        std::deque<Token> q{*set.begin()};
        while (!q.empty()) {
            Token v = q.front();
            q.pop_front();
            for (const auto& nb : g.neighbors(v))
                if (set.count(nb) && seen.insert(nb).second) q.push_back(nb);
        }
        if (seen.size() != set.size())
            rep.add("branch-connected", pv,
                    "branch set splits into >= 2 host components");
    }

    for (const auto& e : model.pattern_edges) {
        std::string label = e.first + " - " + e.second;
        auto it = model.edge_witness.find(e);
        if (it == model.edge_witness.end()) {
            rep.add("pattern-coverage", label, "pattern edge without witness");
            continue;
        }
        const auto& [wa, wb] = it->second;
        auto sa = model.branch_sets.find(e.first);
        auto sb = model.branch_sets.find(e.second);
        if (sa == model.branch_sets.end() || !sa->second.count(wa))
            rep.add("witness-membership", wa, "not in branch set of " + e.first);
        if (sb == model.branch_sets.end() || !sb->second.count(wb))
            rep.add("witness-membership", wb, "not in branch set of " + e.second);
        if (!g.adjacent(wa, wb))
            rep.add("witness-edge", wa + " - " + wb, "witness pair not a host edge");
    }

    rep.sort_violations();
    return rep;
}

CheckReport verify_comb(const LazyGraph& g, const Comb& comb, const Ray& target) {
    CheckReport rep;
    rep.stats["teeth"] = static_cast<int>(comb.teeth.size());

    const auto& spine = comb.spine.prefix;
    check_host_path(g, spine, "spine-path", "spine", rep);
    std::set<Token> spine_set(spine.begin(), spine.end());

    auto tgt = materialize_upto(g, target, 1024);
    std::map<Token, int> tgt_idx;
    for (std::size_t i = 0; i < tgt.size(); ++i) tgt_idx[tgt[i]] = static_cast<int>(i);

    if (comb.teeth.size() != comb.teeth_paths.size())
        rep.add("tooth-structure", std::to_string(comb.teeth.size()),
                "teeth and teeth_paths sizes differ");

    std::map<Token, int> used;  // token -> tooth index
    int last_idx = -1;
    for (std::size_t k = 0; k < comb.teeth_paths.size(); ++k) {
        const auto& p = comb.teeth_paths[k];
        std::string label = "tooth " + std::to_string(k);
        check_host_path(g, p, "tooth-path", label, rep);
        if (p.empty()) continue;
        if (!spine_set.count(p.front()))
            rep.add("tooth-start", p.front(), label + " does not start on the spine");
        for (std::size_t i = 1; i < p.size(); ++i)
            if (spine_set.count(p[i]))
                rep.add("tooth-start", p[i], label + " revisits the spine");
        if (k < comb.teeth.size() && p.back() != comb.teeth[k])
            rep.add("tooth-target", p.back(), label + " does not end at its listed tooth");
        auto ti = tgt_idx.find(p.back());
        if (ti == tgt_idx.end()) {
            rep.add("tooth-target", p.back(), label + " tooth not on the target ray");
        } else {
            if (ti->second <= last_idx)
                rep.add("tooth-order", p.back(), label + " breaks the target ordering");
            last_idx = ti->second;
        }
        for (const auto& t : p) {
            auto [io, fresh] = used.emplace(t, static_cast<int>(k));
            if (!fresh)
                rep.add("tooth-disjoint", t,
                        label + " shares a vertex with tooth " + std::to_string(io->second));
        }
    }

    rep.sort_violations();
    return rep;
}

CheckReport verify_divergence_cert(const LazyGraph& g, const Ray& r1, const Ray& r2,
                                   const DivergenceCertificate& cert) {
    CheckReport rep;
    rep.stats["rows"] = static_cast<int>(cert.rows.size());
    if (cert.rows.empty()) {
        rep.sort_violations();
        return rep;
    }

    int max_n = 0, radius = 0;
    int pn = 0, pi = -1, pj = -1;
    for (std::size_t k = 0; k < cert.rows.size(); ++k) {
        const auto& row = cert.rows[k];
        std::string label = "row " + std::to_string(k);
        if (row.n <= pn || row.i < pi || row.j < pj || row.window_radius < 0)
            rep.add("cert-monotone", label, "rows must grow in n with nested tails");
        pn = row.n;
        pi = row.i;
        pj = row.j;
        max_n = std::max(max_n, row.n);
        radius = std::max(radius, row.window_radius);
    }

    auto m1 = materialize_upto(g, r1, radius);
    auto m2 = materialize_upto(g, r2, radius);
    for (std::size_t k = 0; k < cert.rows.size(); ++k) {
        const auto& row = cert.rows[k];
        if (row.i >= static_cast<int>(m1.size()) || row.j >= static_cast<int>(m2.size())) {
            rep.add("cert-bound", "row " + std::to_string(k), "tail start beyond the rays");
            continue;
        }
        int len1 = std::min<int>(static_cast<int>(m1.size()), row.window_radius + 1);
        int len2 = std::min<int>(static_cast<int>(m2.size()), row.window_radius + 1);
        for (int a = row.i; a < len1; ++a)
            for (int b = row.j; b < len2; ++b) {
                auto d = dist(g, m1[a], m2[b], row.n);
                if (d)
                    rep.add("cert-bound",
                            m1[a] + " / " + m2[b],
                            "row " + std::to_string(k) + " claims > " + std::to_string(row.n) +
                                " but distance is " + std::to_string(*d));
            }
    }

    rep.sort_violations();
    return rep;
}

CheckReport verify_separation_tight(const LazyGraph& g, const Separation& sep,
                                    const FiniteWindow& window) {
    CheckReport rep;
    rep.stats["order"] = sep.order();
    rep.stats["window-radius"] = window.radius;

    for (const auto& v : window.vertices)
        if (!sep.a.count(v) && !sep.b.count(v))
            rep.add("separation-cover", v, "window vertex outside A and B");
    for (const auto& [u, v] : window.edges) {
        bool ua = sep.a.count(u) && !sep.b.count(u), ub = sep.b.count(u) && !sep.a.count(u);
        bool va = sep.a.count(v) && !sep.b.count(v), vb = sep.b.count(v) && !sep.a.count(v);
        if ((ua && vb) || (ub && va))
            rep.add("separation-edge", u + " - " + v, "edge crosses from A\\B to B\\A");
    }

    // tightness: one component on each side whose neighborhood is exactly A cap B
    std::set<Token> s;
    for (const auto& t : sep.a)
        if (sep.b.count(t)) s.insert(t);
    WorkGraph wg = WorkGraph::from_subgraph(window.vertices, window.edges);
    auto tight_side = [&](const std::set<Token>& side, const std::set<Token>& other) {
        std::set<Token> pool;
        for (const auto& v : window.vertices)
            if (side.count(v) && !other.count(v)) pool.insert(v);
        std::set<Token> left = pool;
        while (!left.empty()) {
            Token seed = *left.begin();
            std::set<Token> comp{seed}, nbhd;
            std::deque<Token> q{seed};
            while (!q.empty()) {
                Token v = q.front();
                q.pop_front();
                for (const auto& nb : wg.adj.at(v)) {
                    if (pool.count(nb)) {
                        if (comp.insert(nb).second) q.push_back(nb);
                    } else {
                        nbhd.insert(nb);
                    }
                }
            }
            if (nbhd == s) return true;
            for (const auto& v : comp) left.erase(v);
        }
        return false;
    };
    rep.stats["tight-a"] = tight_side(sep.a, sep.b) ? 1 : 0;
    rep.stats["tight-b"] = tight_side(sep.b, sep.a) ? 1 : 0;

    rep.sort_violations();
    return rep;
}

}  // namespace gw
