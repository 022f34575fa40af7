#pragma once

#include <map>

#include "gridweaver/rays.hpp"

namespace gw {

/// Finite brick-wall fragment: vertices "x,y" with x in [0, 2*cols],
/// y in [0, rows-1]; all horizontal edges, vertical edges where x+y is even.
struct GridFragment {
    int rows = 0;
    int cols = 0;

    std::vector<Token> vertices() const;
    std::set<TokenPair> edges() const;
    int degree(const Token& v) const;
};

struct SubdivisionMap {
    GridFragment fragment;  // rows == 0 when the pattern is not a brick fragment
    std::set<Token> pattern_vertices;
    std::set<TokenPair> pattern_edges;
    std::map<Token, Token> branch;                       // pattern vertex -> host vertex
    std::map<TokenPair, std::vector<Token>> edge_paths;  // keyed by norm_edge; path runs
                                                         // from branch[first] to branch[second]

    void set_fragment(const GridFragment& f);  // fills the pattern sets too
};

/// Levels under construction, bottom-up bookkeeping for the weave pipeline.
/// Level sequences are oriented negative tail -> positive tail; pool paths
/// run from the lower level to the upper one.
struct WeaveState {
    const LazyGraph* g = nullptr;
    std::map<int, std::vector<Token>> levels;
    std::map<std::pair<int, int>, std::vector<std::vector<Token>>> rung_pools;
    std::set<Token> used;  // every token owned by a level or a pool path

    const std::vector<Token>& level(int i) const;
};

/// Joins two rays into a double ray: shortest connection between the origins,
/// then cycle excision over the concatenation (first occurrence wins).
/// The flattened vertex sequence is reverse(negative) ++ positive.
DoubleRay merge_to_double_ray(const LazyGraph& g, const Ray& r_plus, const Ray& r_minus,
                              int depth, const std::set<Token>& avoid = {});

std::vector<Token> flatten(const DoubleRay& dr);

enum class Dir { Up, Down };

/// Builds level i+1 (Up) or i-1 (Down) from level i: incident faces on the
/// far side, one comb per half, spines merged, teeth pooled as rungs.
void next_level(const LazyGraph& g, WeaveState& state, int i, Dir direction, int teeth_budget);

/// Greedy column scan turning levels + rung pools into a brick-wall
/// subdivision; consumes one rung per vertical pattern edge.
SubdivisionMap select_rungs(const WeaveState& state, int rows, int cols);

struct WeaveOptions {
    int scale = 8;
    int effort = 10000;
    int teeth_budget = 0;  // 0: default 4*cols
    int retries = 3;
    int half_extent = 0;   // 0: sized from rows/cols
};

/// Full pipeline: diverging pair, double ray, levels outward in both
/// directions, rung selection. Output is re-verified before return.
SubdivisionMap weave(const LazyGraph& g, int rows, int cols, const WeaveOptions& opts = {});

/// Explicit subdivision inside the two-storey host; the vertical edges
/// crossing the middle use the matching between the storeys.
SubdivisionMap weave_two_storey(int rows, int cols);

/// The identity subdivision of a fragment inside the hex host, anchored so
/// pattern (0,0) lands on host (x0, y0 - floor(rows/2) + ... row offset).
SubdivisionMap identity_subdivision(int rows, int cols, long long x0 = 0);

}  // namespace gw
