#pragma once

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "gridweaver/errors.hpp"

namespace gw {

using Token = std::string;
using TokenPair = std::pair<Token, Token>;

inline TokenPair norm_edge(const Token& a, const Token& b) {
    return a < b ? TokenPair{a, b} : TokenPair{b, a};
}

/// BFS ball around a center vertex. `frontier` holds the vertices at exact
/// distance `radius`; `truncated` is set when a window_import boundary was hit.
struct FiniteWindow {
    Token center;
    int radius = 0;
    std::set<Token> vertices;
    std::set<TokenPair> edges;
    std::set<Token> frontier;
    bool truncated = false;
};

/// Lazily generated locally finite graph: a neighbor oracle over string
/// tokens plus family metadata. Oracles are pure and deterministic;
/// neighbor lists come back sorted lexicographically.
class LazyGraph {
public:
    std::string family;
    nlohmann::json params;
    std::optional<int> degree_bound;  // nullopt = declared unbounded (apex_hub)
    Token root;

    std::vector<Token> neighbors(const Token& v) const { return nbr_(v); }

    bool has_rotation() const { return static_cast<bool>(rot_); }
    /// Counterclockwise cyclic order of neighbors(v), for plane families.
    std::vector<Token> rotation(const Token& v) const;

    bool adjacent(const Token& u, const Token& v) const;

    std::function<std::vector<Token>(const Token&)> nbr_;
    std::function<std::vector<Token>(const Token&)> rot_;
};

// Builtin families.
LazyGraph make_hex();
LazyGraph make_half_grid();
LazyGraph make_square();
LazyGraph make_triangular();
LazyGraph make_cubic();
LazyGraph make_apex_hub();
LazyGraph make_two_storey();
LazyGraph make_cylinder(int n);
LazyGraph make_regular_tree(int d);
/// Adjacency-list text: lines "token: tok1 tok2 ...", plus one "frontier: ..." line.
LazyGraph make_window_import(const std::string& text);

/// Family spec JSON: {"family": "hex" | ..., "params": {...}}.
LazyGraph make_graph(const nlohmann::json& spec);
LazyGraph make_graph(const std::string& name_or_spec);
inline LazyGraph make_graph(const char* name_or_spec) {
    return make_graph(std::string(name_or_spec));
}

FiniteWindow ball(const LazyGraph& g, const Token& center, int radius);

/// Exact graph distance if <= cap, otherwise nullopt (Exceeds).
std::optional<int> dist(const LazyGraph& g, const Token& u, const Token& v, int cap);

// Token helpers shared across modules.
std::pair<long long, long long> parse_xy(const Token& t);
Token xy_token(long long x, long long y);
bool hex_vertical_up(long long x, long long y);  // brick-wall parity rule

/// Global window cap; overridable with the GRIDWEAVER_CAP env var.
int global_window_cap();

}  // namespace gw
