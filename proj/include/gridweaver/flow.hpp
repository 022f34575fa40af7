#pragma once

#include <map>

#include "gridweaver/graphcore.hpp"

namespace gw {

/// Explicit finite working graph (adjacency restricted to a vertex set).
struct WorkGraph {
    std::map<Token, std::vector<Token>> adj;  // sorted neighbor lists

    bool contains(const Token& v) const { return adj.count(v) > 0; }
    static WorkGraph induced(const LazyGraph& g, const std::set<Token>& vertices);
    static WorkGraph from_subgraph(const std::set<Token>& vertices,
                                   const std::set<TokenPair>& edges);
};

struct DisjointPathsResult {
    int value = 0;
    std::vector<std::vector<Token>> paths;  // each from a source to a sink token
    std::vector<Token> separator;           // Menger witness when value < k
};

/// Max vertex-disjoint paths between two token sets via the standard
/// vertex-splitting reduction; unit capacities; deterministic lexicographic
/// augmenting order. Stops augmenting once `want` paths are found (pass a
/// large `want` for the true maximum). The separator is filled from the
/// residual min cut whenever the search stopped below `want`. Vertices in
/// `uncuttable` keep capacity `want`, so they never enter the separator
/// (paths may then share them).
DisjointPathsResult vertex_disjoint_paths(const WorkGraph& wg, const std::set<Token>& sources,
                                          const std::set<Token>& sinks, int want,
                                          const std::set<Token>& uncuttable = {});

/// Shortest path in a work graph, lexicographic tie-break; empty if none.
std::vector<Token> shortest_path(const WorkGraph& wg, const Token& from, const Token& to,
                                 const std::set<Token>& forbidden = {});

}  // namespace gw
