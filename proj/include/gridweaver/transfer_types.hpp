#pragma once

#include <map>

#include "gridweaver/graphcore.hpp"

namespace gw {

/// Minor of an abstract pattern in a host graph: pairwise disjoint connected
/// branch sets plus one witness host edge per pattern edge.
struct MinorModel {
    std::set<Token> pattern_vertices;
    std::set<TokenPair> pattern_edges;
    std::map<Token, std::set<Token>> branch_sets;
    // keyed by norm_edge over pattern; witness.first lies in the branch set
    // of the key's first vertex, witness.second in the other one
    std::map<TokenPair, TokenPair> edge_witness;
};

}  // namespace gw
