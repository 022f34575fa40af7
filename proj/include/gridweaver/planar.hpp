#pragma once

#include <map>
#include <optional>

#include "gridweaver/graphcore.hpp"

namespace gw {

/// Closed face-boundary walk. `vertices` lists the walk without repeating
/// the closing vertex; stored in canonical form (lexicographically least
/// rotation over both directions).
struct FaceWalk {
    std::vector<Token> vertices;
    int length() const { return static_cast<int>(vertices.size()); }
};

enum class Side { A, B, On };

/// Classifies window vertices against a materialized double ray.
/// Side A is the left (counterclockwise) side of the ray's orientation,
/// which runs from the negative tail to the positive tail.
class SideMap {
public:
    SideMap(const LazyGraph& g, std::vector<Token> oriented_double_ray, int window_radius);

    Side side_of(const Token& v) const;
    const std::vector<Token>& ray() const { return seq_; }

private:
    Side label_of_contact(const Token& contact, std::size_t ray_index) const;

    const LazyGraph* g_;
    std::vector<Token> seq_;
    std::map<Token, std::size_t> index_;
    int window_radius_;
    mutable std::map<Token, Side> cache_;
};

struct Subgraph {
    std::set<Token> vertices;
    std::set<TokenPair> edges;
};

/// All distinct face walks through v, traced with the next-edge rule.
/// Traces longer than codegree_cap abort with UnboundedFace.
std::vector<FaceWalk> face_walks_at(const LazyGraph& g, const Token& v, int codegree_cap = 64);

/// Union of the face walks that share >= 1 vertex with the given ray segment
/// and lie in side A of the side map.
Subgraph incident_face_subgraph(const LazyGraph& g, const SideMap& sm,
                                const std::vector<Token>& ray_segment, Side side = Side::A,
                                int codegree_cap = 64);

}  // namespace gw
