#include "gridweaver/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "gridweaver/verify.hpp"

namespace gw {

namespace {

bool even2(long long v) { return ((v % 2) + 2) % 2 == 0; }

int capped_dist(const LazyGraph& g, const Token& u, const Token& v, int cap) {
    auto d = dist(g, u, v, cap);
    return d ? *d : cap + 1;
}

// Host path for a walk given as consecutive pattern vertices of f's fragment.
std::vector<Token> compose_walk(const SubdivisionMap& f, const std::vector<Token>& walk) {
    std::vector<Token> out;
    for (std::size_t i = 0; i + 1 < walk.size(); ++i) {
        TokenPair key = norm_edge(walk[i], walk[i + 1]);
        auto it = f.edge_paths.find(key);
        if (it == f.edge_paths.end())
            throw NotFound("no edge path for pattern edge " + key.first + " - " + key.second);
        std::vector<Token> seg = it->second;
        if (key.first != walk[i]) std::reverse(seg.begin(), seg.end());
        if (!out.empty()) seg.erase(seg.begin());
        out.insert(out.end(), seg.begin(), seg.end());
    }
    return out;
}

}  // namespace

CoarseEmbedding embedding_constants(const std::function<Token(const Token&)>& phi,
                                    const LazyGraph& g, const LazyGraph& h, int window_radius) {
    if (window_radius < 1) throw Degenerate("window_radius must be >= 1");
    FiniteWindow w = ball(g, g.root, window_radius);
    CoarseEmbedding emb;
    emb.window = window_radius;
    emb.phi = phi;
    for (const auto& v : w.vertices) emb.map[v] = phi(v);

    int hcap = 4 * window_radius + 8;
    for (const auto& [a, b] : w.edges) {
        auto d = dist(h, emb.map.at(a), emb.map.at(b), hcap);
        if (!d) throw WindowExhausted("image of edge " + a + " - " + b + " beyond cap");
        emb.L = std::max(emb.L, *d);
    }
    if (emb.L == 0 && !w.edges.empty())
        throw Degenerate("map collapses every edge on the window");

    int gcap = 4 * window_radius + 8;
    std::vector<Token> verts(w.vertices.begin(), w.vertices.end());
    for (std::size_t i = 0; i < verts.size(); ++i)
        for (std::size_t j = i + 1; j < verts.size(); ++j) {
            auto dh = dist(h, emb.map.at(verts[i]), emb.map.at(verts[j]), 2 * emb.L);
            if (!dh) continue;
            auto dg = dist(g, verts[i], verts[j], gcap);
            if (!dg)
                throw Degenerate("not a coarse embedding on this window: " + verts[i] + ", " +
                                 verts[j] + " have close images but preimage distance > " +
                                 std::to_string(gcap));
            emb.K = std::max(emb.K, *dg);
        }
    return emb;
}

SubdivisionMap sparsify(const LazyGraph& g, const SubdivisionMap& f, int k) {
    if (k < 0) throw Degenerate("sparsify requires K >= 0");
    if (k == 0) return f;
    if (f.fragment.rows < 1) throw Degenerate("sparsify needs a brick fragment pattern");

    // M: largest pattern distance still possible between branch images at
    // host distance <= K.
    WorkGraph pat = WorkGraph::from_subgraph(
        {f.pattern_vertices.begin(), f.pattern_vertices.end()}, f.pattern_edges);
    int m_const = 0;
    std::vector<Token> pv(f.pattern_vertices.begin(), f.pattern_vertices.end());
    for (std::size_t i = 0; i < pv.size(); ++i) {
        std::map<Token, int> pd{{pv[i], 0}};
        std::deque<Token> q{pv[i]};
        while (!q.empty()) {
            Token v = q.front();
            q.pop_front();
            for (const auto& nb : pat.adj.at(v))
                if (!pd.count(nb)) {
                    pd[nb] = pd[v] + 1;
                    q.push_back(nb);
                }
        }
        for (std::size_t j = i + 1; j < pv.size(); ++j) {
            auto dh = dist(g, f.branch.at(pv[i]), f.branch.at(pv[j]), k);
            if (dh) m_const = std::max(m_const, pd.at(pv[j]));
        }
    }

    int s = std::max(m_const, 2 * k) + 1;
    if (even2(s)) s += 1;

    int small_rows = (f.fragment.rows - 1) / s + 1;
    int small_cols = f.fragment.cols / s;
    if (small_rows < 1 || small_cols < 1)
        throw FragmentTooSmall("dilation " + std::to_string(s) + " exceeds fragment " +
                               std::to_string(f.fragment.rows) + "x" +
                               std::to_string(f.fragment.cols));

    SubdivisionMap out;
    out.set_fragment({small_rows, small_cols});
    for (const auto& sv : out.pattern_vertices) {
        auto [x, y] = parse_xy(sv);
        out.branch[sv] = f.branch.at(xy_token(s * x, s * y));
    }
    for (const auto& e : out.pattern_edges) {
        auto [x1, y1] = parse_xy(e.first);
        auto [x2, y2] = parse_xy(e.second);
        std::vector<Token> walk;
        if (y1 == y2) {
            long long lo = std::min(x1, x2), hi = std::max(x1, x2);
            for (long long t = s * lo; t <= s * hi; ++t) walk.push_back(xy_token(t, s * y1));
            if (x1 > x2) std::reverse(walk.begin(), walk.end());
        } else {
            // vertical: zigzag between the dilated column and a helper column
            // (the mirrored helper keeps the walk inside the fragment at the
            // right edge; climb positions have the same parity either way)
            long long ylo = std::min(y1, y2), sx = s * x1;
            long long helper = sx + 1 <= 2LL * f.fragment.cols ? sx + 1 : sx - 1;
            long long cx = sx, cy = s * ylo;
            walk.push_back(xy_token(cx, cy));
            while (cy < s * (ylo + 1)) {
                if (even2(cx + cy)) {
                    cy += 1;
                } else {
                    cx = cx == sx ? helper : sx;
                }
                walk.push_back(xy_token(cx, cy));
            }
            if (cx != sx) throw Degenerate("zigzag failed to land on the dilated column");
            if (y1 > y2) std::reverse(walk.begin(), walk.end());
        }
        out.edge_paths[e] = compose_walk(f, walk);
    }

    // the proof's separation requirement, checked on the window
    std::vector<Token> sv(out.pattern_vertices.begin(), out.pattern_vertices.end());
    for (std::size_t i = 0; i < sv.size(); ++i)
        for (std::size_t j = i + 1; j < sv.size(); ++j)
            if (dist(g, out.branch.at(sv[i]), out.branch.at(sv[j]), 2 * k))
                throw Degenerate("sparsify: branch images " + sv[i] + ", " + sv[j] +
                                 " within 2K");
    return out;
}

MinorModel transfer_minor(const CoarseEmbedding& emb, const LazyGraph& g_host,
                          const LazyGraph& h_host, const SubdivisionMap& g) {
    auto phi = [&](const Token& t) -> Token {
        if (emb.phi) return emb.phi(t);
        auto it = emb.map.find(t);
        if (it == emb.map.end()) throw WindowExhausted("vertex " + t + " outside embedding window");
        return it->second;
    };

    std::map<TokenPair, std::vector<Token>> p_cache;
    auto p_xy = [&](const Token& x, const Token& y) -> const std::vector<Token>& {
        TokenPair key = norm_edge(x, y);
        auto it = p_cache.find(key);
        if (it != p_cache.end()) return it->second;
        FiniteWindow w = ball(h_host, phi(key.first), std::max(emb.L, 1));
        WorkGraph wg = WorkGraph::from_subgraph(w.vertices, w.edges);
        auto path = shortest_path(wg, phi(key.first), phi(key.second));
        if (path.empty()) throw NotFound("no short image path " + key.first + " - " + key.second);
        return p_cache.emplace(key, std::move(path)).first->second;
    };

    // walk along an edge path, oriented out of the given pattern vertex
    auto oriented = [&](const TokenPair& key, const Token& from) {
        std::vector<Token> w = g.edge_paths.at(key);
        if (key.first != from) std::reverse(w.begin(), w.end());
        return w;
    };
    std::map<Token, std::vector<TokenPair>> incident;
    for (const auto& e : g.pattern_edges) {
        incident[e.first].push_back(e);
        incident[e.second].push_back(e);
    }

    auto in_u_class = [](const Token& t) {
        auto [x, y] = parse_xy(t);
        return even2(x + y);
    };

    MinorModel model;
    model.pattern_vertices = g.pattern_vertices;
    model.pattern_edges = g.pattern_edges;

    // branch sets of the U class: unions of short image paths near g(u)
    for (const auto& u : g.pattern_vertices) {
        if (!in_u_class(u)) continue;
        std::set<Token> vu{phi(g.branch.at(u))};
        for (const auto& e : incident[u]) {
            auto w = oriented(e, u);
            for (std::size_t i = 0; i + 1 < w.size(); ++i) {
                if (capped_dist(g_host, g.branch.at(u), w[i], emb.K) > emb.K) break;
                const auto& p = p_xy(w[i], w[i + 1]);
                vu.insert(p.begin(), p.end());
            }
        }
        model.branch_sets[u] = std::move(vu);
    }

    // V class: truncated walks toward each U neighbor
    for (const auto& v : g.pattern_vertices) {
        if (in_u_class(v)) continue;
        std::set<Token> vv{phi(g.branch.at(v))};
        for (const auto& e : incident[v]) {
            const Token& u = e.first == v ? e.second : e.first;
            const auto& target = model.branch_sets.at(u);
            auto w = oriented(e, v);
            std::vector<Token> q;  // the concatenated image walk Q_vu
            for (std::size_t i = 0; i + 1 < w.size(); ++i) {
                auto p = p_xy(w[i], w[i + 1]);
                if (p.front() != phi(w[i])) std::reverse(p.begin(), p.end());
                if (!q.empty()) p.erase(p.begin());
                q.insert(q.end(), p.begin(), p.end());
            }
            std::size_t cut = 0;
            while (cut < q.size() && !target.count(q[cut])) ++cut;
            if (cut == 0 || cut == q.size())
                throw DisjointnessViolation(v, u);
            vv.insert(q.begin(), q.begin() + static_cast<long>(cut));
            TokenPair witness{q[cut - 1], q[cut]};  // (in V_v, in V_u)
            if (e.first == u) std::swap(witness.first, witness.second);
            model.edge_witness[e] = witness;
        }
        model.branch_sets[v] = std::move(vv);
    }

    std::map<Token, Token> owner;
    for (const auto& [pv, set] : model.branch_sets)
        for (const auto& t : set) {
            auto [it, fresh] = owner.emplace(t, pv);
            if (!fresh && it->second != pv) throw DisjointnessViolation(it->second, pv);
        }
    return model;
}

SubdivisionMap minor_to_subdivision(const LazyGraph& h, const MinorModel& model) {
    std::map<Token, std::vector<TokenPair>> incident;
    for (const auto& e : model.pattern_edges) {
        incident[e.first].push_back(e);
        incident[e.second].push_back(e);
    }

    SubdivisionMap out;
    out.pattern_vertices = model.pattern_vertices;
    out.pattern_edges = model.pattern_edges;

    std::map<Token, std::map<Token, std::vector<Token>>> legs;  // pv -> terminal -> hub..terminal
    for (const auto& pv : model.pattern_vertices) {
        if (incident[pv].size() > 3)
            throw Degenerate("pattern degree of " + pv + " exceeds 3");
        const auto& set = model.branch_sets.at(pv);
        std::map<Token, int> mult;
        for (const auto& e : incident[pv]) {
            const auto& wit = model.edge_witness.at(e);
            mult[e.first == pv ? wit.first : wit.second] += 1;
        }
        // a terminal carrying several edges must become the hub (trivial leg)
        std::vector<Token> terms;
        for (const auto& [t, c] : mult) terms.push_back(t);
        std::sort(terms.begin(), terms.end(), [&](const Token& a, const Token& b) {
            return std::tie(mult[b], a) < std::tie(mult[a], b);
        });

        WorkGraph wb = WorkGraph::induced(h, set);
        Token hub;
        auto& lg = legs[pv];
        if (terms.empty()) {
            hub = *set.begin();
        } else if (terms.size() == 1) {
            hub = terms[0];
            lg[terms[0]] = {terms[0]};
        } else {
            std::vector<Token> p = shortest_path(wb, terms[0], terms[1]);
            if (p.empty()) throw InternalPathClash("branch set of " + pv + " disconnected");
            if (terms.size() == 2) {
                hub = terms[0];
                lg[terms[0]] = {terms[0]};
                lg[terms[1]] = p;
            } else {
                std::set<Token> on_p(p.begin(), p.end());
                // BFS from the third terminal to its first contact with p
                std::map<Token, Token> prev{{terms[2], terms[2]}};
                std::deque<Token> q{terms[2]};
                Token contact;
                if (on_p.count(terms[2])) contact = terms[2];
                while (contact.empty() && !q.empty()) {
                    Token v = q.front();
                    q.pop_front();
                    for (const auto& nb : wb.adj.at(v)) {
                        if (prev.count(nb)) continue;
                        prev[nb] = v;
                        if (on_p.count(nb)) {
                            contact = nb;
                            break;
                        }
                        q.push_back(nb);
                    }
                }
                if (contact.empty())
                    throw InternalPathClash("branch set of " + pv + " disconnected at " +
                                            terms[2]);
                hub = contact;
                std::size_t ci = std::find(p.begin(), p.end(), contact) - p.begin();
                lg[terms[0]] = {p.rend() - static_cast<long>(ci) - 1, p.rend()};
                lg[terms[1]] = {p.begin() + static_cast<long>(ci), p.end()};
                std::vector<Token> l3{contact};
                if (contact != terms[2])
                    for (Token c = prev.at(contact); ; c = prev.at(c)) {
                        l3.push_back(c);
                        if (c == terms[2]) break;
                    }
                lg[terms[2]] = l3;
            }
        }
        out.branch[pv] = hub;
    }

    for (const auto& e : model.pattern_edges) {
        const auto& wit = model.edge_witness.at(e);
        std::vector<Token> path = legs.at(e.first).at(wit.first);
        std::vector<Token> back = legs.at(e.second).at(wit.second);
        path.insert(path.end(), back.rbegin(), back.rend());
        out.edge_paths[e] = std::move(path);
    }

    CheckReport rep = verify_subdivision(h, out);
    if (!rep.ok())
        throw InternalPathClash(rep.violations.front().rule + " at " +
                                rep.violations.front().witness);
    return out;
}

int qi_tree_capacity(const LazyGraph& g, const QIToTree& qi, int r, int window_radius) {
    if (r < 0) throw Degenerate("qi_tree_capacity requires r >= 0");
    FiniteWindow w = ball(g, g.root, window_radius);
    std::map<Token, int> cnt;
    for (const auto& v : w.vertices) {
        FiniteWindow tb = ball(qi.tree, qi.f(v), r);
        for (const auto& t : tb.vertices) cnt[t] += 1;
    }
    int b = 0;
    for (const auto& [t, c] : cnt) b = std::max(b, c);

    if (g.degree_bound) {
        // pigeonhole sanity: close images force close preimages
        int radius = static_cast<int>(std::ceil(qi.gamma * (2.0 * r + qi.c)));
        long long bound = 1, term = 1;
        for (int i = 0; i < radius; ++i) {
            term *= *g.degree_bound;
            bound += term;
            if (bound > (1LL << 40)) break;
        }
        if (b > bound)
            throw Degenerate("capacity " + std::to_string(b) + " exceeds the ball bound " +
                             std::to_string(bound));
    }
    return b;
}

std::optional<std::pair<Token, Token>> check_qi(const LazyGraph& g, const QIToTree& qi,
                                                int window_radius) {
    FiniteWindow w = ball(g, g.root, window_radius);
    int gcap = 2 * window_radius;
    int tcap = static_cast<int>(std::ceil(qi.gamma * gcap + qi.c)) + 2;
    std::vector<Token> verts(w.vertices.begin(), w.vertices.end());
    for (std::size_t i = 0; i < verts.size(); ++i)
        for (std::size_t j = i + 1; j < verts.size(); ++j) {
            int dg = capped_dist(g, verts[i], verts[j], gcap);
            int dt = capped_dist(qi.tree, qi.f(verts[i]), qi.f(verts[j]), tcap);
            if (dt > qi.gamma * dg + qi.c + 1e-9) return std::make_pair(verts[i], verts[j]);
            if (dg > qi.gamma * (dt + qi.c) + 1e-9) return std::make_pair(verts[i], verts[j]);
        }
    return std::nullopt;
}

RefutationWitness refute_half_grid(const LazyGraph& g, const QIToTree& qi, int n_rays,
                                   int depth) {
    if (n_rays < 1 || depth < 4) throw Degenerate("refute_half_grid: n_rays >= 1, depth >= 4");
    RefutationWitness out;
    out.requested = n_rays;

    if (auto bad = check_qi(g, qi, std::min(depth / 2, 8))) {
        out.mode = "qi-invalid";
        out.detail = "distortion bounds fail at pair " + bad->first + ", " + bad->second;
        return out;
    }

    int r = static_cast<int>(std::ceil(qi.gamma + qi.c));
    auto host_ray = materialize(g, canonical_ray(g, true), depth);
    Token t = qi.f(host_ray[static_cast<std::size_t>(2 * depth / 3)]);
    Token e0 = qi.f(g.root);

    FiniteWindow w = ball(g, g.root, depth + r + 2);
    int tcap = static_cast<int>(std::ceil(qi.gamma * (depth + r + 2.0) + qi.c)) + 2;
    int dte = capped_dist(qi.tree, t, e0, tcap);
    std::set<Token> near, far;
    for (const auto& v : w.vertices) {
        int de = capped_dist(qi.tree, qi.f(v), e0, tcap);
        int dt = capped_dist(qi.tree, qi.f(v), t, tcap);
        if (de < dte - r)
            near.insert(v);
        else if (dt > r && de == dt + dte)  // strictly beyond the slab around t
            far.insert(v);
    }
    WorkGraph wg = WorkGraph::from_subgraph(w.vertices, w.edges);
    auto res = vertex_disjoint_paths(wg, near, far, n_rays);
    if (res.value < n_rays) {
        out.refuted = true;
        out.mode = "capacity";
        out.tree_vertex = t;
        out.slab = res.separator;
        out.capacity = res.value;
        out.detail = "slab capacity " + std::to_string(res.value) + " at tree vertex " + t +
                     " below requested " + std::to_string(n_rays);
        return out;
    }
    out.capacity = res.value;

    try {
        auto eq = equivalent(g, canonical_ray(g, true), canonical_ray(g, false), n_rays, depth);
        if (!eq.found) {
            out.refuted = true;
            out.mode = "separator";
            out.slab = eq.separator;
            out.capacity = static_cast<int>(eq.separator.size());
            out.detail = "equivalence separator of size " +
                         std::to_string(eq.separator.size()) + " below requested " +
                         std::to_string(n_rays);
            return out;
        }
    } catch (const NotFound&) {
    }

    throw NotRefuted("capacity " + std::to_string(out.capacity) + " at this window; threshold " +
                     std::to_string(out.capacity + 1));
}

QIToTree natural_cylinder_qi() {
    QIToTree qi;
    qi.tree = make_regular_tree(2);
    qi.gamma = 1.0;
    qi.c = 2.0;
    qi.f = [](const Token& t) -> Token {
        auto [i, z] = parse_xy(t);
        (void)i;
        if (z == 0) return "e";
        // words of regular_tree(2): first letter picks the side, the rest are '1'
        std::size_t depth = static_cast<std::size_t>(z > 0 ? z : -z);
        return (z > 0 ? std::string("1") : std::string("2")) + std::string(depth - 1, '1');
    };
    return qi;
}

MinorModel chain_minor(int m, int n, int length) {
    if (m < 3 || m > n) throw Degenerate("chain_minor requires 3 <= m <= n");
    if (length < 1) throw Degenerate("chain_minor requires length >= 1");
    MinorModel model;
    for (int z = 0; z < length; ++z) {
        for (int i = 0; i < m; ++i) {
            Token pv = xy_token(i, z);
            model.pattern_vertices.insert(pv);
            std::set<Token> set;
            if (i < m - 1)
                set.insert(xy_token(i, z));
            else
                for (int j = m - 1; j < n; ++j) set.insert(xy_token(j, z));
            model.branch_sets[pv] = std::move(set);
        }
        for (int i = 0; i < m; ++i) {
            Token a = xy_token(i, z), b = xy_token((i + 1) % m, z);
            TokenPair e = norm_edge(a, b);
            model.pattern_edges.insert(e);
            Token ha = i < m - 1 ? a : xy_token(n - 1, z);
            Token hb = xy_token((i + 1) % m == m - 1 ? m - 1 : (i + 1) % m, z);
            model.edge_witness[e] = e.first == a ? TokenPair{ha, hb} : TokenPair{hb, ha};
        }
        if (z + 1 < length)
            for (int i = 0; i < m; ++i) {
                Token a = xy_token(i, z), b = xy_token(i, z + 1);
                TokenPair e = norm_edge(a, b);
                model.pattern_edges.insert(e);
                Token ha = xy_token(i, z), hb = xy_token(i, z + 1);
                model.edge_witness[e] = e.first == a ? TokenPair{ha, hb} : TokenPair{hb, ha};
            }
    }
    return model;
}

MinorModel clique_minor_cubic(int n) {
    if (n < 1) throw Degenerate("clique_minor_cubic requires n >= 1");
    auto tok3 = [](int x, int y, int z) {
        return std::to_string(x) + "," + std::to_string(y) + "," + std::to_string(z);
    };
    MinorModel model;
    for (int i = 0; i < n; ++i) {
        Token pv = std::to_string(i);
        model.pattern_vertices.insert(pv);
        std::set<Token> set;
        for (int x = 0; x < n; ++x) set.insert(tok3(x, i, 0));
        for (int y = 0; y < n; ++y) set.insert(tok3(i, y, 1));
        model.branch_sets[pv] = std::move(set);
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            TokenPair e = norm_edge(std::to_string(i), std::to_string(j));
            model.pattern_edges.insert(e);
            int a = std::stoi(e.first), b = std::stoi(e.second);
            // (b, a, 0) sits in branch a's row; (b, a, 1) in branch b's column
            model.edge_witness[e] = {tok3(b, a, 0), tok3(b, a, 1)};
        }
    return model;
}

}  // namespace gw
