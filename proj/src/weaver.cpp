#include "gridweaver/weaver.hpp"

#include <algorithm>

#include "gridweaver/verify.hpp"

namespace gw {

namespace {

int capped_dist(const LazyGraph& g, const Token& u, const Token& v, int cap) {
    auto d = dist(g, u, v, cap);
    return d ? *d : cap + 1;
}

bool even2(long long v) { return ((v % 2) + 2) % 2 == 0; }

}  // namespace

std::vector<Token> GridFragment::vertices() const {
    std::vector<Token> out;
    for (int x = 0; x <= 2 * cols; ++x)
        for (int y = 0; y < rows; ++y) out.push_back(xy_token(x, y));
    std::sort(out.begin(), out.end());
    return out;
}

std::set<TokenPair> GridFragment::edges() const {
    std::set<TokenPair> out;
    for (int y = 0; y < rows; ++y) {
        for (int x = 0; x < 2 * cols; ++x)
            out.insert(norm_edge(xy_token(x, y), xy_token(x + 1, y)));
        for (int x = 0; x <= 2 * cols; ++x)
            if (y + 1 < rows && even2(x + y))
                out.insert(norm_edge(xy_token(x, y), xy_token(x, y + 1)));
    }
    return out;
}

int GridFragment::degree(const Token& v) const {
    auto [x, y] = parse_xy(v);
    int d = 0;
    if (x > 0) ++d;
    if (x < 2 * cols) ++d;
    if (even2(x + y) && y + 1 < rows) ++d;
    if (!even2(x + y) && y > 0) ++d;
    return d;
}

void SubdivisionMap::set_fragment(const GridFragment& f) {
    fragment = f;
    pattern_vertices.clear();
    pattern_edges = f.edges();
    for (const auto& v : f.vertices()) pattern_vertices.insert(v);
}

const std::vector<Token>& WeaveState::level(int i) const {
    auto it = levels.find(i);
    if (it == levels.end()) throw NotFound("level " + std::to_string(i) + " not built");
    return it->second;
}

std::vector<Token> flatten(const DoubleRay& dr) {
    std::vector<Token> out(dr.negative.prefix.rbegin(), dr.negative.prefix.rend());
    out.insert(out.end(), dr.center_path.begin(), dr.center_path.end());
    out.insert(out.end(), dr.positive.prefix.begin(), dr.positive.prefix.end());
    return out;
}

DoubleRay merge_to_double_ray(const LazyGraph& g, const Ray& r_plus, const Ray& r_minus,
                              int depth, const std::set<Token>& avoid) {
    auto mp = materialize_upto(g, r_plus, depth);
    auto mm = materialize_upto(g, r_minus, depth);

    std::vector<Token> conn;
    if (mm.front() == mp.front()) {
        conn = {mm.front()};
    } else {
        std::set<Token> forbidden = avoid;
        forbidden.erase(mm.front());
        forbidden.erase(mp.front());
        for (int rad = 4; rad <= 64; rad *= 2) {
            auto w = ball(g, mp.front(), rad);
            WorkGraph wg = WorkGraph::from_subgraph(w.vertices, w.edges);
            conn = shortest_path(wg, mm.front(), mp.front(), forbidden);
            if (!conn.empty()) break;
        }
        if (conn.empty())
            throw WindowExhausted("no connection between ray origins " + mm.front() + " and " +
                                  mp.front());
    }

    std::vector<Token> seq(mm.rbegin(), mm.rend());
    for (std::size_t i = 1; i + 1 < conn.size(); ++i) seq.push_back(conn[i]);
    seq.insert(seq.end(), mp.begin(), mp.end());

    // cycle excision: keep the first occurrence of every repeated token
    std::vector<Token> out;
    std::map<Token, std::size_t> pos;
    for (const auto& tok : seq) {
        auto it = pos.find(tok);
        if (it != pos.end()) {
            while (out.size() > it->second + 1) {
                pos.erase(out.back());
                out.pop_back();
            }
        } else {
            pos[tok] = out.size();
            out.push_back(tok);
        }
    }

    std::set<Token> plus_set(mp.begin(), mp.end());
    std::size_t k = 0;
    while (k < out.size() && !plus_set.count(out[k])) ++k;
    if (k == 0 || k == out.size())
        throw Degenerate("rays collapse while merging: no split point");
    DoubleRay dr;
    dr.positive = Ray::explicit_ray({out.begin() + static_cast<long>(k), out.end()});
    dr.negative =
        Ray::explicit_ray({out.rend() - static_cast<long>(k), out.rend()});
    return dr;
}

namespace {

std::vector<Token> orient_front_near(const LazyGraph& g, std::vector<Token> sp,
                                     const Token& anchor, int cap) {
    if (sp.size() > 1 &&
        capped_dist(g, sp.back(), anchor, cap) < capped_dist(g, sp.front(), anchor, cap))
        std::reverse(sp.begin(), sp.end());
    return sp;
}

}  // namespace

void next_level(const LazyGraph& g, WeaveState& state, int i, Dir direction, int teeth_budget) {
    const auto& seq = state.level(i);
    int step = direction == Dir::Up ? 1 : -1;
    int j_new = i + step;
    if (state.levels.count(j_new))
        throw Degenerate("level " + std::to_string(j_new) + " already built");
    std::set<Token> seq_set(seq.begin(), seq.end());

    SideMap sm(g, seq, 16);
    Side away;
    int j_prev = i - step;
    if (state.levels.count(j_prev)) {
        const auto& prev = state.levels.at(j_prev);
        Side s = sm.side_of(prev[prev.size() / 2]);
        if (s == Side::On) throw Degenerate("previous level touches level " + std::to_string(i));
        away = s == Side::A ? Side::B : Side::A;
    } else {
        away = direction == Dir::Up ? Side::A : Side::B;
    }

    std::size_t c = seq.size() / 2;
    std::vector<Token> neg_half(seq.begin(), seq.begin() + static_cast<long>(c) + 1);
    std::vector<Token> pos_half(seq.begin() + static_cast<long>(c), seq.end());
    Ray target = Ray::explicit_ray(seq);

    auto build_sub = [&](const std::vector<Token>& half) {
        Subgraph sub = incident_face_subgraph(g, sm, half, away);
        Subgraph clean;
        for (const auto& v : sub.vertices)
            if (!state.used.count(v) || seq_set.count(v)) clean.vertices.insert(v);
        for (const auto& e : sub.edges)
            if (clean.vertices.count(e.first) && clean.vertices.count(e.second))
                clean.edges.insert(e);
        return clean;
    };

    int depth = static_cast<int>(seq.size()) - 1;
    CombResult cneg = comb_from(g, build_sub(neg_half), target, teeth_budget, depth);
    CombResult cpos = comb_from(g, build_sub(pos_half), target, teeth_budget, depth);
    if (!cneg.complete || !cpos.complete)
        throw NotFound("comb starved building level " + std::to_string(j_new) + ": teeth " +
                       std::to_string(cneg.comb.teeth.size()) + "/" +
                       std::to_string(cpos.comb.teeth.size()) + " < " +
                       std::to_string(teeth_budget));

    int cap = 2 * static_cast<int>(seq.size()) + 8;
    Ray r_plus =
        Ray::explicit_ray(orient_front_near(g, cpos.comb.spine.prefix, seq[c], cap));
    Ray r_minus =
        Ray::explicit_ray(orient_front_near(g, cneg.comb.spine.prefix, seq[c], cap));
    DoubleRay dr = merge_to_double_ray(g, r_plus, r_minus, depth, state.used);
    std::vector<Token> new_seq = flatten(dr);
    // keep the global orientation aligned with the parent level
    if (capped_dist(g, new_seq.front(), seq.front(), cap) >
        capped_dist(g, new_seq.front(), seq.back(), cap))
        std::reverse(new_seq.begin(), new_seq.end());
    std::set<Token> new_set(new_seq.begin(), new_seq.end());
    for (const auto& v : new_set)
        if (state.used.count(v))
            throw Degenerate("new level reuses token " + v);

    // pool the teeth that survived the spine merge, in attachment order
    std::map<Token, std::size_t> seq_idx;
    for (std::size_t k = 0; k < seq.size(); ++k) seq_idx[seq[k]] = k;
    std::vector<std::pair<std::size_t, std::vector<Token>>> cand;
    for (const auto* comb : {&cneg.comb, &cpos.comb})
        for (const auto& p : comb->teeth_paths) cand.emplace_back(seq_idx.at(p.back()), p);
    std::sort(cand.begin(), cand.end());

    std::vector<std::vector<Token>> pool;
    std::set<Token> claimed;
    for (auto& [idx, p] : cand) {
        if (!new_set.count(p.front()) || !seq_set.count(p.back())) continue;
        bool ok = !claimed.count(p.front()) && !claimed.count(p.back());
        for (std::size_t k = 1; ok && k + 1 < p.size(); ++k)
            ok = !state.used.count(p[k]) && !new_set.count(p[k]) && !claimed.count(p[k]);
        if (!ok) continue;
        claimed.insert(p.begin(), p.end());
        if (direction == Dir::Up) std::reverse(p.begin(), p.end());  // store lower -> upper
        pool.push_back(std::move(p));
    }

    state.levels[j_new] = new_seq;
    state.used.insert(new_set.begin(), new_set.end());
    for (const auto& p : pool) state.used.insert(p.begin(), p.end());
    auto key = std::minmax(i, j_new);
    state.rung_pools[{key.first, key.second}] = std::move(pool);
}

SubdivisionMap select_rungs(const WeaveState& state, int rows, int cols) {
    if (rows < 1 || cols < 1) throw Degenerate("select_rungs requires rows, cols >= 1");
    int f = rows / 2;
    std::vector<const std::vector<Token>*> lev(rows);
    std::vector<std::map<Token, int>> idx(rows);
    for (int y = 0; y < rows; ++y) {
        lev[y] = &state.level(y - f);
        for (std::size_t k = 0; k < lev[y]->size(); ++k) idx[y][(*lev[y])[k]] = static_cast<int>(k);
    }

    struct Rung {
        int lo, hi;
        const std::vector<Token>* path;
        bool used = false;
    };
    std::vector<std::vector<Rung>> pools(std::max(rows - 1, 0));
    for (int y = 0; y + 1 < rows; ++y) {
        auto it = state.rung_pools.find({y - f, y - f + 1});
        if (it == state.rung_pools.end())
            throw InsufficientRungs("no pool between levels " + std::to_string(y - f) + "," +
                                    std::to_string(y - f + 1));
        for (const auto& p : it->second) {
            auto lo = idx[y].find(p.front());
            auto hi = idx[y + 1].find(p.back());
            if (lo == idx[y].end() || hi == idx[y + 1].end()) continue;
            pools[y].push_back({lo->second, hi->second, &p});
        }
        std::sort(pools[y].begin(), pools[y].end(),
                  [](const Rung& a, const Rung& b) { return a.lo < b.lo; });
    }

    SubdivisionMap out;
    out.set_fragment({rows, cols});
    std::vector<int> cursor(rows, -1), prev(rows, -1), cur(rows, -1);

    // Anchor the scan away from the ragged level ends: seed the bottom pair
    // at its first rung past a safety margin, then chain the alignment row by
    // row so the pairs picked in columns 0 and 1 agree on a common start.
    if (rows >= 2) {
        std::size_t min_len = lev[0]->size();
        for (int y = 1; y < rows; ++y) min_len = std::min(min_len, lev[y]->size());
        int margin = static_cast<int>(min_len) / 3;
        bool anchored = false;
        for (const auto& r : pools[0])
            if (r.lo >= margin) {
                cursor[0] = r.lo - 1;
                cursor[1] = r.hi - 1;
                anchored = true;
                break;
            }
        for (int y = 1; anchored && y + 1 < rows; ++y) {
            // even pairs take their rung in column 0, odd pairs in column 1
            // (one step later), hence the shifted threshold and offset
            int threshold = cursor[y] + (y % 2 == 0 ? 0 : 1);
            anchored = false;
            for (const auto& r : pools[y])
                if (r.lo > threshold) {
                    cursor[y + 1] = r.hi - (y % 2 == 0 ? 1 : 2);
                    anchored = true;
                    break;
                }
        }
    }
    std::map<TokenPair, std::vector<Token>> vpaths;  // pattern vertical edge -> host path

    for (int x = 0; x <= 2 * cols; ++x) {
        std::fill(cur.begin(), cur.end(), -1);
        // rungs first: they pin both of their levels for this column
        for (int y = 0; y < rows; ++y) {
            if (cur[y] >= 0 || !even2(x + y) || y + 1 >= rows) continue;
            Rung* pick = nullptr;
            for (auto& r : pools[y])
                if (!r.used && r.lo > cursor[y] && r.hi > cursor[y + 1]) {
                    pick = &r;
                    break;
                }
            if (!pick)
                throw InsufficientRungs("column " + std::to_string(x) + ", levels " +
                                        std::to_string(y - f) + "/" +
                                        std::to_string(y - f + 1) + ": pool of " +
                                        std::to_string(pools[y].size()) + " exhausted");
            pick->used = true;
            cur[y] = pick->lo;
            cur[y + 1] = pick->hi;
            vpaths[norm_edge(xy_token(x, y), xy_token(x, y + 1))] = *pick->path;
        }
        // boundary rows without a rung this column: slot in just before the
        // rung the next column is about to take, so columns stay aligned
        for (int y = 0; y < rows; ++y) {
            if (cur[y] >= 0) continue;
            int cand = -1;
            if (rows >= 2 && x < 2 * cols) {
                int p = y == 0 ? 0 : rows - 2;
                int clo = cur[p] >= 0 ? cur[p] : cursor[p];
                int chi = cur[p + 1] >= 0 ? cur[p + 1] : cursor[p + 1];
                for (auto& r : pools[p])
                    if (!r.used && r.lo > clo && r.hi > chi) {
                        cand = (y == 0 ? r.lo : r.hi) - 1;
                        break;
                    }
            }
            cur[y] = cand > cursor[y] ? cand : cursor[y] + 1;
            if (cur[y] >= static_cast<int>(lev[y]->size()))
                throw InsufficientRungs("level " + std::to_string(y - f) +
                                        " exhausted at column " + std::to_string(x));
        }
        for (int y = 0; y < rows; ++y) {
            Token pv = xy_token(x, y);
            out.branch[pv] = (*lev[y])[static_cast<std::size_t>(cur[y])];
            if (x > 0) {
                std::vector<Token> hp(lev[y]->begin() + prev[y], lev[y]->begin() + cur[y] + 1);
                TokenPair key = norm_edge(xy_token(x - 1, y), pv);
                if (key.first == pv) std::reverse(hp.begin(), hp.end());
                out.edge_paths[key] = std::move(hp);
            }
            prev[y] = cur[y];
            cursor[y] = cur[y];
        }
    }

    for (auto& [key, path] : vpaths) {
        // stored lower -> upper; reorient to run from the key's first vertex
        auto [x, y] = parse_xy(key.first);
        auto [x2, y2] = parse_xy(key.second);
        std::vector<Token> p = path;
        if (y > y2) std::reverse(p.begin(), p.end());
        out.edge_paths[key] = std::move(p);
    }
    return out;
}

SubdivisionMap weave(const LazyGraph& g, int rows, int cols, const WeaveOptions& opts) {
    if (rows < 1 || cols < 1) throw Degenerate("weave requires rows, cols >= 1");
    int H = opts.half_extent > 0 ? opts.half_extent : 2 * cols + 8 * (rows + 2);

    DivergingPair dp;
    try {
        dp = diverging_pair(g, opts.scale, opts.effort);
    } catch (const NotFound& e) {
        throw NotFound(std::string("diverging_pair stage: ") + e.what());
    } catch (const WindowExhausted& e) {
        throw WindowExhausted(std::string("diverging_pair stage: ") + e.what());
    }

    int tb = opts.teeth_budget > 0 ? opts.teeth_budget : 4 * cols;
    std::string last;
    for (int attempt = 0; attempt <= opts.retries; ++attempt, tb *= 2) {
        WeaveState st;
        st.g = &g;
        DoubleRay r0 = merge_to_double_ray(g, dp.r1, dp.r2, H);
        st.levels[0] = flatten(r0);
        st.used.insert(st.levels[0].begin(), st.levels[0].end());

        int up_needed = rows - 1 - rows / 2, down_needed = rows / 2;
        try {
            int top = 0, bot = 0;
            while (top < up_needed || bot < down_needed) {
                if (top < up_needed) next_level(g, st, top++, Dir::Up, tb);
                if (bot < down_needed) next_level(g, st, -bot++, Dir::Down, tb);
            }
            SubdivisionMap m = select_rungs(st, rows, cols);
            CheckReport rep = verify_subdivision(g, m);
            if (!rep.ok())
                throw Degenerate("weave output failed verification: " +
                                 rep.violations.front().rule + " at " +
                                 rep.violations.front().witness);
            return m;
        } catch (const InsufficientRungs& e) {
            last = e.what();
            continue;
        } catch (const NotFound& e) {
            throw NotFound(std::string("next_level stage: ") + e.what());
        } catch (const WindowExhausted& e) {
            throw WindowExhausted(std::string("level construction stage: ") + e.what());
        }
    }
    throw InsufficientRungs("select_rungs stage, budget retries exhausted: " + last);
}

SubdivisionMap identity_subdivision(int rows, int cols, long long x0) {
    if (rows < 1 || cols < 1) throw Degenerate("identity_subdivision requires rows, cols >= 1");
    int f = rows / 2;
    if (!even2(x0 + f)) x0 += 1;  // align the brick parity with the host
    SubdivisionMap out;
    out.set_fragment({rows, cols});
    for (const auto& pv : out.pattern_vertices) {
        auto [x, y] = parse_xy(pv);
        out.branch[pv] = xy_token(x0 + x, y - f);
    }
    for (const auto& e : out.pattern_edges)
        out.edge_paths[e] = {out.branch.at(e.first), out.branch.at(e.second)};
    return out;
}

SubdivisionMap weave_two_storey(int rows, int cols) {
    if (rows < 1 || cols < 1) throw Degenerate("weave_two_storey requires rows, cols >= 1");
    long long f = rows / 2;
    SubdivisionMap out;
    out.set_fragment({rows, cols});
    for (const auto& pv : out.pattern_vertices) {
        auto [x, y] = parse_xy(pv);
        long long l = y - f;
        out.branch[pv] = l >= 0 ? "0|" + xy_token(x + f, l) : "1|" + xy_token(x + f, -l - 1);
    }
    for (const auto& e : out.pattern_edges)
        out.edge_paths[e] = {out.branch.at(e.first), out.branch.at(e.second)};
    return out;
}

}  // namespace gw
