#include "gridweaver/rays.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace gw {

namespace {

std::vector<std::string> split_bar(const Token& t) {
    auto bar = t.find('|');
    if (bar == std::string::npos) return {t};
    return {t.substr(0, bar), t.substr(bar + 1)};
}

Token axis_step(const LazyGraph& g, const Token& last, const nlohmann::json& params) {
    long long dx = params.value("dx", 0LL), dy = params.value("dy", 0LL);
    if (g.family == "cubic") {
        long long dz = params.value("dz", 0LL);
        auto parts = last;
        auto c1 = parts.find(','), c2 = parts.rfind(',');
        long long x = std::stoll(parts.substr(0, c1));
        long long y = std::stoll(parts.substr(c1 + 1, c2 - c1 - 1));
        long long z = std::stoll(parts.substr(c2 + 1));
        return std::to_string(x + dx) + "," + std::to_string(y + dy) + "," +
               std::to_string(z + dz);
    }
    if (g.family == "cylinder") {
        long long dz = params.value("dz", 0LL), di = params.value("di", 0LL);
        int n = g.params.at("n").get<int>();
        auto [i, z] = parse_xy(last);
        return xy_token(((i + di) % n + n) % n, z + dz);
    }
    if (g.family == "two_storey") {
        auto parts = split_bar(last);
        auto [x, y] = parse_xy(parts[1]);
        return parts[0] + "|" + xy_token(x + dx, y + dy);
    }
    auto [x, y] = parse_xy(last);
    return xy_token(x + dx, y + dy);
}

Token extend_once(const LazyGraph& g, const Extender& e, const Token& last) {
    if (e.rule == "axis") return axis_step(g, last, e.params);
    if (e.rule == "tree_deepen") {
        std::string letter = e.params.value("letter", std::string("1"));
        return last == "e" ? letter : last + letter;
    }
    throw Degenerate("unknown extender rule: " + e.rule);
}

}  // namespace

std::vector<Token> materialize(const LazyGraph& g, const Ray& r, int depth) {
    std::vector<Token> out = r.prefix;
    if (out.empty()) throw Degenerate("ray with empty prefix");
    while (static_cast<int>(out.size()) < depth + 1) {
        if (!r.extender)
            throw WindowExhausted("explicit ray of length " + std::to_string(out.size()) +
                                  " cannot reach depth " + std::to_string(depth));
        Token next = extend_once(g, *r.extender, out.back());
        if (!g.adjacent(out.back(), next))
            throw Degenerate("extender produced non-adjacent vertex " + next);
        out.push_back(next);
    }
    return out;
}

Ray canonical_ray(const LazyGraph& g, bool positive) {
    const std::string& f = g.family;
    auto axis_ray = [&](const Token& start, long long dx, long long dy) {
        return Ray{{start}, Extender{"axis", {{"dx", dx}, {"dy", dy}}}};
    };
    if (f == "hex" || f == "square" || f == "triangular" || f == "half_grid" || f == "apex_hub")
        return positive ? axis_ray("0,0", 1, 0) : axis_ray("-1,0", -1, 0);
    if (f == "two_storey")
        return positive ? axis_ray("0|0,0", 1, 0) : axis_ray("0|-1,0", -1, 0);
    if (f == "cubic")
        return positive ? Ray{{"0,0,0"}, Extender{"axis", {{"dx", 1}}}}
                        : Ray{{"-1,0,0"}, Extender{"axis", {{"dx", -1}}}};
    if (f == "cylinder")
        return positive ? Ray{{"0,0"}, Extender{"axis", {{"dz", 1}}}}
                        : Ray{{"0,-1"}, Extender{"axis", {{"dz", -1}}}};
    if (f == "regular_tree")
        return positive ? Ray{{"1"}, Extender{"tree_deepen", {{"letter", "1"}}}}
                        : Ray{{"2"}, Extender{"tree_deepen", {{"letter", "1"}}}};
    throw NotFound("no canonical ray for family " + f);
}

std::vector<Ray> disjoint_rays(const LazyGraph& g, int k, int depth) {
    if (k < 1 || depth < 1) throw Degenerate("disjoint_rays requires k, depth >= 1");
    if (k == 1) return {Ray::explicit_ray(materialize(g, canonical_ray(g, true), depth))};

    int best = 0;
    for (int r0 = 1; r0 <= std::min(depth - 1, 10); ++r0) {
        FiniteWindow w = ball(g, g.root, depth + r0);
        // distance layering inside the window
        std::map<Token, int> d{{g.root, 0}};
        std::deque<Token> q{g.root};
        WorkGraph wg = WorkGraph::from_subgraph(w.vertices, w.edges);
        while (!q.empty()) {
            Token v = q.front();
            q.pop_front();
            for (const auto& n : wg.adj.at(v))
                if (!d.count(n)) {
                    d[n] = d[v] + 1;
                    q.push_back(n);
                }
        }
        std::set<Token> sources, sinks;
        for (const auto& [v, dv] : d) {
            if (dv <= r0) sources.insert(v);
            if (dv == depth + r0) sinks.insert(v);
        }
        auto res = vertex_disjoint_paths(wg, sources, sinks, k);
        best = std::max(best, res.value);
        if (res.value >= k) {
            std::vector<Ray> rays;
            for (int i = 0; i < k; ++i) rays.push_back(Ray::explicit_ray(res.paths[i]));
            return rays;
        }
    }
    throw NotFound("disjoint_rays: max bundle in window is " + std::to_string(best) +
                   " < " + std::to_string(k));
}

EquivalenceResult equivalent(const LazyGraph& g, const Ray& r1, const Ray& r2, int k, int depth,
                             int margin) {
    auto m1 = materialize(g, r1, depth);
    auto m2 = materialize(g, r2, depth);
    std::set<Token> window;
    for (const auto& v : m1) {
        auto b = ball(g, v, margin);
        window.insert(b.vertices.begin(), b.vertices.end());
    }
    for (const auto& v : m2) {
        auto b = ball(g, v, margin);
        window.insert(b.vertices.begin(), b.vertices.end());
    }
    WorkGraph wg = WorkGraph::induced(g, window);
    std::set<Token> s1(m1.begin(), m1.end()), s2(m2.begin(), m2.end());
    auto res = vertex_disjoint_paths(wg, s1, s2, k);
    EquivalenceResult out;
    if (res.value >= k) {
        out.found = true;
        out.paths = std::move(res.paths);
        return out;
    }
    // Prefer a separator that avoids the rays themselves; fall back to the
    // raw Menger cut when the avoiding cut is no longer small.
    std::set<Token> rays(m1.begin(), m1.end());
    rays.insert(m2.begin(), m2.end());
    auto res2 = vertex_disjoint_paths(wg, s1, s2, k, rays);
    out.separator = res2.value < k ? std::move(res2.separator) : std::move(res.separator);
    return out;
}

std::vector<Token> materialize_upto(const LazyGraph& g, const Ray& r, int depth) {
    if (r.extender) return materialize(g, r, depth);
    std::vector<Token> out = r.prefix;
    if (static_cast<int>(out.size()) > depth + 1) out.resize(depth + 1);
    return out;
}

namespace {

int capped_dist(const LazyGraph& g, const Token& u, const Token& v, int cap) {
    auto d = dist(g, u, v, cap);
    return d ? *d : cap + 1;
}

}  // namespace

DivergenceOutcome check_divergence(const LazyGraph& g, const Ray& r1, const Ray& r2, int scale) {
    if (scale < 1) throw Degenerate("check_divergence requires scale >= 1");
    int depth = std::max(3 * scale, 24);
    auto m1 = materialize_upto(g, r1, depth);
    auto m2 = materialize_upto(g, r2, depth);
    int len = static_cast<int>(std::min(m1.size(), m2.size()));
    if (len < 2) throw WindowExhausted("rays too short for divergence check");
    m1.resize(len);
    m2.resize(len);

    // pairwise distances, capped at the requested scale
    std::vector<std::vector<int>> dm(len, std::vector<int>(len));
    for (int a = 0; a < len; ++a)
        for (int b = 0; b < len; ++b) dm[a][b] = capped_dist(g, m1[a], m2[b], scale);
    std::vector<std::vector<int>> suff(len + 1, std::vector<int>(len + 1, scale + 2));
    for (int a = len - 1; a >= 0; --a)
        for (int b = len - 1; b >= 0; --b)
            suff[a][b] = std::min({dm[a][b], suff[a + 1][b], suff[a][b + 1]});

    int tail = len - std::max(1, len / 4);
    DivergenceCertificate cert;
    int pi = 0, pj = 0;
    for (int n = 1; n <= scale; ++n) {
        if (suff[tail][tail] <= n) {
            // Close pair survives into the deepest tails: definitive at this window.
            for (int a = tail; a < len; ++a)
                for (int b = tail; b < len; ++b)
                    if (dm[a][b] <= n) return FailureWitness{n, m1[a], m2[b], dm[a][b]};
        }
        int i = pi;
        while (i < tail && suff[i][tail] <= n) ++i;
        int j = pj;
        while (j < tail && suff[i][j] <= n) ++j;
        cert.rows.push_back({n, i, j, len - 1});
        pi = i;
        pj = j;
    }
    return cert;
}

namespace {

DivergingPair try_pair(const LazyGraph& g, const Ray& a, const Ray& b, int scale, bool& ok) {
    auto outcome = check_divergence(g, a, b, scale);
    if (auto* cert = std::get_if<DivergenceCertificate>(&outcome)) {
        ok = true;
        return DivergingPair{a, b, *cert};
    }
    ok = false;
    return {};
}

}  // namespace

DivergingPair diverging_pair(const LazyGraph& g, int scale, int effort) {
    if (scale < 1) throw Degenerate("diverging_pair requires scale >= 1");
    // Opposite geodesic rays first.
    std::vector<std::pair<Ray, Ray>> candidates;
    try {
        candidates.emplace_back(canonical_ray(g, true), canonical_ray(g, false));
    } catch (const NotFound&) {
    }
    if (g.family == "square" || g.family == "triangular" || g.family == "cubic") {
        Token north = g.family == "cubic" ? "0,1,0" : "0,1";
        Token south = g.family == "cubic" ? "0,-1,0" : "0,-1";
        candidates.emplace_back(Ray{{north}, Extender{"axis", {{"dy", 1}}}},
                                Ray{{south}, Extender{"axis", {{"dy", -1}}}});
    }
    for (auto& [a, b] : candidates) {
        bool ok = false;
        auto pair = try_pair(g, a, b, scale, ok);
        if (ok) return pair;
        if (--effort <= 0) throw NotFound("diverging_pair: effort exhausted");
    }

    // Greedy frontier search: grow two rays maximizing mutual tail distance.
    auto root_nbrs = g.neighbors(g.root);
    for (std::size_t ia = 0; ia + 1 < root_nbrs.size() && effort > 0; ++ia) {
        for (std::size_t ib = ia + 1; ib < root_nbrs.size() && effort > 0; ++ib) {
            std::vector<Token> ra{root_nbrs[ia]}, rb{root_nbrs[ib]};
            std::set<Token> used{g.root, ra[0], rb[0]};
            bool stuck = false;
            while (!stuck && static_cast<int>(ra.size()) < 3 * scale && effort > 0) {
                for (auto* ray : {&ra, &rb}) {
                    const std::vector<Token>& other = (ray == &ra) ? rb : ra;
                    Token best_tok;
                    int best_score = -1;
                    int want_depth = static_cast<int>(ray->size()) + 1;
                    for (const auto& cand : g.neighbors(ray->back())) {
                        if (used.count(cand)) continue;
                        if (--effort <= 0) break;
                        // geodesic growth only: stalling rays cannot leave the
                        // window and would fake divergence at any finite depth
                        if (capped_dist(g, cand, g.root, want_depth + 1) != want_depth) continue;
                        int score = capped_dist(g, cand, other.back(), scale + 1);
                        if (score > best_score || (score == best_score && cand < best_tok)) {
                            best_score = score;
                            best_tok = cand;
                        }
                    }
                    if (best_score < 0) {
                        stuck = true;
                        break;
                    }
                    ray->push_back(best_tok);
                    used.insert(best_tok);
                }
            }
            if (static_cast<int>(ra.size()) >= 3 * scale &&
                static_cast<int>(rb.size()) >= 3 * scale) {
                bool ok = false;
                auto pair =
                    try_pair(g, Ray::explicit_ray(ra), Ray::explicit_ray(rb), scale, ok);
                if (ok) return pair;
            }
            if (effort <= 0) break;
        }
    }
    throw NotFound("diverging_pair: effort exhausted");
}

CombResult comb_from(const LazyGraph& g, const Subgraph& sub, const Ray& target, int t,
                     int target_depth) {
    auto tgt = materialize_upto(g, target, target_depth);
    std::set<Token> tgt_set(tgt.begin(), tgt.end());
    std::map<Token, int> tgt_index;
    for (std::size_t i = 0; i < tgt.size(); ++i) tgt_index[tgt[i]] = static_cast<int>(i);

    // Spine: longest-ish path inside the subgraph minus the target (double sweep).
    std::set<Token> interior;
    for (const auto& v : sub.vertices)
        if (!tgt_set.count(v)) interior.insert(v);
    if (interior.empty()) throw NotFound("comb_from: empty subgraph");
    WorkGraph wsub = WorkGraph::from_subgraph(interior, sub.edges);

    auto bfs_far = [&](const Token& seed) {
        std::map<Token, int> d{{seed, 0}};
        std::deque<Token> q{seed};
        Token far = seed;
        while (!q.empty()) {
            Token v = q.front();
            q.pop_front();
            for (const auto& n : wsub.adj.at(v))
                if (!d.count(n)) {
                    d[n] = d[v] + 1;
                    if (d[n] > d[far] || (d[n] == d[far] && n < far)) far = n;
                    q.push_back(n);
                }
        }
        return std::pair<Token, int>{far, d[far]};
    };

    // Largest component (ties: lexicographically first seed).
    std::set<Token> unseen = interior;
    Token best_seed;
    int best_size = -1;
    while (!unseen.empty()) {
        Token seed = *unseen.begin();
        std::set<Token> comp{seed};
        std::deque<Token> q{seed};
        while (!q.empty()) {
            Token v = q.front();
            q.pop_front();
            for (const auto& n : wsub.adj.at(v))
                if (!comp.count(n)) {
                    comp.insert(n);
                    q.push_back(n);
                }
        }
        if (static_cast<int>(comp.size()) > best_size) {
            best_size = static_cast<int>(comp.size());
            best_seed = seed;
        }
        for (const auto& v : comp) unseen.erase(v);
    }
    auto [a, _da] = bfs_far(best_seed);
    auto [b, _db] = bfs_far(a);
    std::vector<Token> spine = shortest_path(wsub, a, b);
    if (spine.empty()) spine = {best_seed};

    // Orient the spine outward: start at the end nearer the target's origin.
    if (!tgt.empty()) {
        int cap = target_depth + 8;
        if (capped_dist(g, spine.back(), tgt.front(), cap) <
            capped_dist(g, spine.front(), tgt.front(), cap))
            std::reverse(spine.begin(), spine.end());
    }

    CombResult out;
    out.comb.spine = Ray::explicit_ray(spine);
    if (t == 0) {
        out.complete = true;
        return out;
    }

    std::set<Token> all = sub.vertices;
    all.insert(tgt.begin(), tgt.end());
    WorkGraph wall = WorkGraph::induced(g, all);
    std::set<Token> spine_set(spine.begin(), spine.end());
    // Take the full tooth supply; t only sets the completeness threshold.
    auto res = vertex_disjoint_paths(wall, spine_set, tgt_set,
                                     static_cast<int>(all.size()) + 1);

    std::vector<std::pair<int, std::vector<Token>>> teeth;  // (target index, path)
    for (auto path : res.paths) {
        // keep the suffix from the last spine vertex, cut at the first target vertex
        std::size_t start = 0;
        for (std::size_t i = 0; i < path.size(); ++i)
            if (spine_set.count(path[i])) start = i;
        path.erase(path.begin(), path.begin() + static_cast<long>(start));
        for (std::size_t i = 0; i < path.size(); ++i)
            if (tgt_set.count(path[i])) {
                path.resize(i + 1);
                break;
            }
        if (path.size() < 2 && !tgt_set.count(path.back())) continue;
        teeth.emplace_back(tgt_index.at(path.back()), std::move(path));
    }
    std::sort(teeth.begin(), teeth.end());
    for (auto& [idx, path] : teeth) {
        out.comb.teeth.push_back(path.back());
        out.comb.teeth_paths.push_back(std::move(path));
    }
    out.complete = static_cast<int>(out.comb.teeth.size()) >= t;
    return out;
}

}  // namespace gw
