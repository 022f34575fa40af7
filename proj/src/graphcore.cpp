#include "gridweaver/graphcore.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

namespace gw {

namespace {

bool mod2_zero(long long v) { return ((v % 2) + 2) % 2 == 0; }

long long parse_ll(const std::string& s, const Token& whole) {
    if (s.empty()) throw MalformedToken(whole);
    std::size_t i = 0;
    if (s[0] == '-') {
        if (s.size() == 1) throw MalformedToken(whole);
        i = 1;
    }
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) throw MalformedToken(whole);
    if (s.size() > 1 && s[0] == '0') throw MalformedToken(whole);       // no leading zeros
    if (s.size() > 2 && s[0] == '-' && s[1] == '0') throw MalformedToken(whole);
    return std::stoll(s);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

std::vector<Token> sorted(std::vector<Token> v) {
    std::sort(v.begin(), v.end());
    return v;
}

struct XY {
    long long x, y;
};

XY parse_xy_or_throw(const Token& t) {
    auto parts = split(t, ',');
    if (parts.size() != 2) throw MalformedToken(t);
    return {parse_ll(parts[0], t), parse_ll(parts[1], t)};
}

Token tok_xy(long long x, long long y) {
    return std::to_string(x) + "," + std::to_string(y);
}

// Counterclockwise angular order of unit steps, starting east.
// Used to derive rotation systems for the straight-line lattice embeddings.
std::vector<Token> ccw_by_angle(long long x, long long y, const std::vector<XY>& nbrs,
                                const std::function<Token(long long, long long)>& mk) {
    std::vector<std::pair<double, Token>> ang;
    ang.reserve(nbrs.size());
    for (const auto& n : nbrs) {
        double a = std::atan2(static_cast<double>(n.y - y), static_cast<double>(n.x - x));
        if (a < -1e-12) a += 2 * M_PI;  // start at east, go ccw
        ang.emplace_back(a, mk(n.x, n.y));
    }
    std::sort(ang.begin(), ang.end());
    std::vector<Token> out;
    out.reserve(ang.size());
    for (auto& p : ang) out.push_back(p.second);
    return out;
}

std::vector<XY> hex_nbrs(long long x, long long y) {
    std::vector<XY> out{{x - 1, y}, {x + 1, y}};
    if (mod2_zero(x + y))
        out.push_back({x, y + 1});
    else
        out.push_back({x, y - 1});
    return out;
}

std::vector<XY> half_grid_nbrs(long long x, long long y, const Token& t) {
    if (y < 0) throw MalformedToken(t);
    std::vector<XY> out{{x - 1, y}, {x + 1, y}};
    if (mod2_zero(x + y)) {
        out.push_back({x, y + 1});
    } else if (y > 0) {
        out.push_back({x, y - 1});
    }
    return out;
}

}  // namespace

std::pair<long long, long long> parse_xy(const Token& t) {
    auto p = parse_xy_or_throw(t);
    return {p.x, p.y};
}

Token xy_token(long long x, long long y) { return tok_xy(x, y); }

bool hex_vertical_up(long long x, long long y) { return mod2_zero(x + y); }

std::vector<Token> LazyGraph::rotation(const Token& v) const {
    if (!rot_) throw NoRotation(family);
    return rot_(v);
}

bool LazyGraph::adjacent(const Token& u, const Token& v) const {
    auto n = neighbors(u);
    return std::binary_search(n.begin(), n.end(), v);
}

LazyGraph make_hex() {
    LazyGraph g;
    g.family = "hex";
    g.degree_bound = 3;
    g.root = "0,0";
    g.nbr_ = [](const Token& t) {
        auto [x, y] = parse_xy_or_throw(t);
        std::vector<Token> out;
        for (auto& n : hex_nbrs(x, y)) out.push_back(tok_xy(n.x, n.y));
        return sorted(out);
    };
    g.rot_ = [](const Token& t) {
        auto [x, y] = parse_xy_or_throw(t);
        return ccw_by_angle(x, y, hex_nbrs(x, y), tok_xy);
    };
    return g;
}

LazyGraph make_half_grid() {
    LazyGraph g;
    g.family = "half_grid";
    g.degree_bound = 3;
    g.root = "0,0";
    g.nbr_ = [](const Token& t) {
        auto [x, y] = parse_xy_or_throw(t);
        std::vector<Token> out;
        for (auto& n : half_grid_nbrs(x, y, t)) out.push_back(tok_xy(n.x, n.y));
        return sorted(out);
    };
    g.rot_ = [](const Token& t) {
        auto [x, y] = parse_xy_or_throw(t);
        return ccw_by_angle(x, y, half_grid_nbrs(x, y, t), tok_xy);
    };
    return g;
}

LazyGraph make_square() {
    LazyGraph g;
    g.family = "square";
    g.degree_bound = 4;
    g.root = "0,0";
    auto nbrs = [](long long x, long long y) {
        return std::vector<XY>{{x + 1, y}, {x - 1, y}, {x, y + 1}, {x, y - 1}};
    };
    g.nbr_ = [nbrs](const Token& t) {
        auto [x, y] = parse_xy_or_throw(t);
        std::vector<Token> out;
        for (auto& n : nbrs(x, y)) out.push_back(tok_xy(n.x, n.y));
        return sorted(out);
    };
    g.rot_ = [nbrs](const Token& t) {
        auto [x, y] = parse_xy_or_throw(t);
        return ccw_by_angle(x, y, nbrs(x, y), tok_xy);
    };
    return g;
}

LazyGraph make_triangular() {
    LazyGraph g;
    g.family = "triangular";
    g.degree_bound = 6;
    g.root = "0,0";
    auto nbrs = [](long long x, long long y) {
        return std::vector<XY>{{x + 1, y},     {x - 1, y},     {x, y + 1},
                               {x, y - 1},     {x + 1, y + 1}, {x - 1, y - 1}};
    };
    g.nbr_ = [nbrs](const Token& t) {
        auto [x, y] = parse_xy_or_throw(t);
        std::vector<Token> out;
        for (auto& n : nbrs(x, y)) out.push_back(tok_xy(n.x, n.y));
        return sorted(out);
    };
    g.rot_ = [nbrs](const Token& t) {
        auto [x, y] = parse_xy_or_throw(t);
        return ccw_by_angle(x, y, nbrs(x, y), tok_xy);
    };
    return g;
}

LazyGraph make_cubic() {
    LazyGraph g;
    g.family = "cubic";
    g.degree_bound = 6;
    g.root = "0,0,0";
    g.nbr_ = [](const Token& t) {
        auto parts = split(t, ',');
        if (parts.size() != 3) throw MalformedToken(t);
        long long x = parse_ll(parts[0], t), y = parse_ll(parts[1], t), z = parse_ll(parts[2], t);
        std::vector<Token> out;
        auto mk = [](long long a, long long b, long long c) {
            return std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c);
        };
        out = {mk(x + 1, y, z), mk(x - 1, y, z), mk(x, y + 1, z),
               mk(x, y - 1, z), mk(x, y, z + 1), mk(x, y, z - 1)};
        return sorted(out);
    };
    return g;
}

namespace {

// BFS layering of hex from the origin, shared by the apex_hub oracle.
// Grown on demand; guarded so concurrent queries stay consistent.
struct HexLayering {
    std::mutex mu;
    std::vector<std::vector<Token>> spheres;  // spheres[r] sorted
    std::map<Token, int> depth;

    HexLayering() {
        spheres.push_back({"0,0"});
        depth["0,0"] = 0;
    }

    void grow_to(int r) {
        LazyGraph hex = make_hex();
        while (static_cast<int>(spheres.size()) <= r) {
            std::vector<Token> next;
            for (const auto& v : spheres.back())
                for (const auto& w : hex.neighbors(v))
                    if (!depth.count(w)) {
                        depth[w] = static_cast<int>(spheres.size());
                        next.push_back(w);
                    }
            std::sort(next.begin(), next.end());
            spheres.push_back(std::move(next));
        }
    }

    int depth_of(const Token& t) {
        auto [x, y] = parse_xy_or_throw(t);
        // Any hex vertex is reached within |x| + 2|y| + 2 BFS levels.
        int bound = static_cast<int>(std::llabs(x) + 2 * std::llabs(y)) + 2;
        std::lock_guard<std::mutex> lock(mu);
        grow_to(bound);
        auto it = depth.find(t);
        if (it == depth.end()) throw MalformedToken(t);
        return it->second;
    }

    std::vector<Token> sphere(int n) {
        std::lock_guard<std::mutex> lock(mu);
        grow_to(n);
        return spheres[n];
    }
};

bool is_hub_token(const Token& t) { return t.find(',') == std::string::npos; }

}  // namespace

LazyGraph make_apex_hub() {
    LazyGraph g;
    g.family = "apex_hub";
    g.degree_bound = std::nullopt;  // hubs have finite but unbounded degrees
    g.root = "0,0";
    auto layering = std::make_shared<HexLayering>();
    g.nbr_ = [layering](const Token& t) {
        if (is_hub_token(t)) {
            long long n = parse_ll(t, t);
            if (n < 1) throw MalformedToken(t);
            return layering->sphere(static_cast<int>(n));  // already sorted
        }
        auto [x, y] = parse_xy_or_throw(t);
        std::vector<Token> out;
        for (auto& n : hex_nbrs(x, y)) out.push_back(tok_xy(n.x, n.y));
        int d = layering->depth_of(t);
        if (d >= 1) out.push_back(std::to_string(d));
        return sorted(out);
    };
    return g;
}

LazyGraph make_two_storey() {
    LazyGraph g;
    g.family = "two_storey";
    g.degree_bound = 4;
    g.root = "0|0,0";
    g.nbr_ = [](const Token& t) {
        auto bar = t.find('|');
        if (bar != 1 || (t[0] != '0' && t[0] != '1')) throw MalformedToken(t);
        int s = t[0] - '0';
        Token rest = t.substr(2);
        auto [x, y] = parse_xy_or_throw(rest);
        std::vector<Token> out;
        for (auto& n : half_grid_nbrs(x, y, t))
            out.push_back(std::string(1, '0' + s) + "|" + tok_xy(n.x, n.y));
        out.push_back(std::string(1, '0' + (1 - s)) + "|" + tok_xy(x, y));  // matching edge
        return sorted(out);
    };
    return g;
}

LazyGraph make_cylinder(int n) {
    if (n < 3) throw Degenerate("cylinder requires n >= 3");
    LazyGraph g;
    g.family = "cylinder";
    g.params = nlohmann::json{{"n", n}};
    g.degree_bound = 4;
    g.root = "0,0";
    g.nbr_ = [n](const Token& t) {
        auto [i, z] = parse_xy_or_throw(t);
        if (i < 0 || i >= n) throw MalformedToken(t);
        std::vector<Token> out{tok_xy((i + 1) % n, z), tok_xy((i + n - 1) % n, z),
                               tok_xy(i, z + 1), tok_xy(i, z - 1)};
        return sorted(out);
    };
    g.rot_ = [n](const Token& t) {
        auto [i, z] = parse_xy_or_throw(t);
        if (i < 0 || i >= n) throw MalformedToken(t);
        // Annulus embedding: ring+, z+, ring-, z- is counterclockwise.
        return std::vector<Token>{tok_xy((i + 1) % n, z), tok_xy(i, z + 1),
                                  tok_xy((i + n - 1) % n, z), tok_xy(i, z - 1)};
    };
    return g;
}

LazyGraph make_regular_tree(int d) {
    if (d < 2 || d > 9) throw Degenerate("regular_tree requires 2 <= d <= 9");
    LazyGraph g;
    g.family = "regular_tree";
    g.params = nlohmann::json{{"d", d}};
    g.degree_bound = d;
    g.root = "e";
    g.nbr_ = [d](const Token& t) {
        std::vector<Token> out;
        if (t == "e") {
            for (int c = 1; c <= d; ++c) out.push_back(std::string(1, '0' + c));
            return sorted(out);
        }
        if (t.empty()) throw MalformedToken(t);
        for (std::size_t i = 0; i < t.size(); ++i) {
            int c = t[i] - '0';
            int hi = (i == 0) ? d : d - 1;
            if (c < 1 || c > hi) throw MalformedToken(t);
        }
        out.push_back(t.size() == 1 ? Token("e") : t.substr(0, t.size() - 1));
        for (int c = 1; c <= d - 1; ++c) out.push_back(t + std::string(1, '0' + c));
        return sorted(out);
    };
    return g;
}

LazyGraph make_window_import(const std::string& text) {
    auto adj = std::make_shared<std::map<Token, std::vector<Token>>>();
    auto frontier = std::make_shared<std::set<Token>>();
    std::istringstream in(text);
    std::string line;
    Token first_token;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto colon = line.find(':');
        if (colon == std::string::npos) throw Degenerate("window_import: bad line: " + line);
        std::string head = line.substr(0, colon);
        std::istringstream rest(line.substr(colon + 1));
        std::vector<Token> toks;
        Token t;
        while (rest >> t) toks.push_back(t);
        if (head == "frontier") {
            frontier->insert(toks.begin(), toks.end());
        } else {
            if (first_token.empty()) first_token = head;
            auto& lst = (*adj)[head];
            lst.insert(lst.end(), toks.begin(), toks.end());
        }
    }
    // symmetrize and sort
    for (auto& [v, lst] : *adj)
        for (const auto& w : lst)
            if (!frontier->count(w) || adj->count(w)) {
                auto& back = (*adj)[w];
                if (std::find(back.begin(), back.end(), v) == back.end()) back.push_back(v);
            }
    int maxdeg = 0;
    for (auto& [v, lst] : *adj) {
        std::sort(lst.begin(), lst.end());
        lst.erase(std::unique(lst.begin(), lst.end()), lst.end());
        maxdeg = std::max(maxdeg, static_cast<int>(lst.size()));
    }
    LazyGraph g;
    g.family = "window_import";
    g.degree_bound = maxdeg;
    g.root = first_token.empty() ? Token("?") : first_token;
    g.nbr_ = [adj, frontier](const Token& t) {
        if (frontier->count(t))
            throw WindowExhausted("neighbors of frontier vertex " + t);
        auto it = adj->find(t);
        if (it == adj->end()) throw WindowExhausted("unknown vertex " + t);
        return it->second;
    };
    return g;
}

LazyGraph make_graph(const nlohmann::json& spec) {
    std::string family = spec.at("family").get<std::string>();
    nlohmann::json params = spec.contains("params") ? spec["params"] : nlohmann::json::object();
    if (family == "hex") return make_hex();
    if (family == "half_grid") return make_half_grid();
    if (family == "square") return make_square();
    if (family == "triangular") return make_triangular();
    if (family == "cubic") return make_cubic();
    if (family == "apex_hub") return make_apex_hub();
    if (family == "two_storey") return make_two_storey();
    if (family == "cylinder") return make_cylinder(params.at("n").get<int>());
    if (family == "regular_tree") return make_regular_tree(params.at("d").get<int>());
    if (family == "window_import") return make_window_import(params.at("text").get<std::string>());
    throw Degenerate("unknown family: " + family);
}

LazyGraph make_graph(const std::string& name_or_spec) {
    if (!name_or_spec.empty() && name_or_spec[0] == '{')
        return make_graph(nlohmann::json::parse(name_or_spec));
    // "cylinder:4" / "regular_tree:3" shorthand
    auto colon = name_or_spec.find(':');
    nlohmann::json spec;
    if (colon == std::string::npos) {
        spec = {{"family", name_or_spec}};
    } else {
        std::string fam = name_or_spec.substr(0, colon);
        int arg = std::stoi(name_or_spec.substr(colon + 1));
        std::string key = (fam == "regular_tree") ? "d" : "n";
        spec = {{"family", fam}, {"params", {{key, arg}}}};
    }
    return make_graph(spec);
}

FiniteWindow ball(const LazyGraph& g, const Token& center, int radius) {
    if (radius < 0) throw Degenerate("ball: negative radius");
    FiniteWindow w;
    w.center = center;
    w.radius = radius;
    std::map<Token, int> depth{{center, 0}};
    std::deque<Token> q{center};
    w.vertices.insert(center);
    while (!q.empty()) {
        Token v = q.front();
        q.pop_front();
        int d = depth[v];
        if (d == radius) {
            w.frontier.insert(v);
            continue;
        }
        std::vector<Token> ns;
        try {
            ns = g.neighbors(v);
        } catch (const WindowExhausted&) {
            w.truncated = true;
            w.frontier.insert(v);
            continue;
        }
        for (const auto& n : ns) {
            w.edges.insert(norm_edge(v, n));
            if (!depth.count(n)) {
                depth[n] = d + 1;
                w.vertices.insert(n);
                q.push_back(n);
            }
        }
    }
    // Keep only edges with both endpoints inside the ball.
    for (auto it = w.edges.begin(); it != w.edges.end();)
        if (!w.vertices.count(it->first) || !w.vertices.count(it->second))
            it = w.edges.erase(it);
        else
            ++it;
    return w;
}

std::optional<int> dist(const LazyGraph& g, const Token& u, const Token& v, int cap) {
    if (cap < 0) throw Degenerate("dist: negative cap");
    if (u == v) return 0;
    std::map<Token, int> depth{{u, 0}};
    std::deque<Token> q{u};
    bool hit_frontier = false;
    while (!q.empty()) {
        Token w = q.front();
        q.pop_front();
        int d = depth[w];
        if (d == cap) continue;
        std::vector<Token> ns;
        try {
            ns = g.neighbors(w);
        } catch (const WindowExhausted&) {
            hit_frontier = true;
            continue;
        }
        for (const auto& n : ns) {
            if (depth.count(n)) continue;
            if (n == v) return d + 1;
            depth[n] = d + 1;
            q.push_back(n);
        }
    }
    if (hit_frontier)
        throw WindowExhausted("dist(" + u + ", " + v + ") undecided in import window");
    return std::nullopt;  // Exceeds(cap)
}

int global_window_cap() {
    static int cap = [] {
        if (const char* e = std::getenv("GRIDWEAVER_CAP")) {
            int v = std::atoi(e);
            if (v > 0) return v;
        }
        return 4096;
    }();
    return cap;
}

}  // namespace gw
