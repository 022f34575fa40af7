#pragma once

#include "gridweaver/transfer_types.hpp"
#include "gridweaver/weaver.hpp"

namespace gw {

struct CoarseEmbedding {
    std::map<Token, Token> map;  // G vertex -> H vertex over the window
    int window = 0;              // radius over which the constants were witnessed
    int L = 0;                   // max image distance over adjacent pairs
    int K = 0;                   // max preimage distance over image pairs within 2L
    std::function<Token(const Token&)> phi;  // total map; constants hold on the window
};

struct QIToTree {
    LazyGraph tree;
    double gamma = 1.0;
    double c = 0.0;
    std::function<Token(const Token&)> f;
};

struct RefutationWitness {
    bool refuted = false;
    std::string mode;          // "capacity", "separator" or "qi-invalid"
    Token tree_vertex;         // t, for capacity mode
    std::vector<Token> slab;   // min cut / separator realizing the bound
    int capacity = 0;          // disjoint-path capacity through the slab
    int requested = 0;         // claimed family size
    std::string detail;
};

/// Exhaustive L/K scan over ball(G.root, window_radius).
CoarseEmbedding embedding_constants(const std::function<Token(const Token&)>& phi,
                                    const LazyGraph& g, const LazyGraph& h, int window_radius);

/// Composes f with the odd s-dilation self-embedding of the brick wall,
/// where s is the least odd integer exceeding both M and 2K.
SubdivisionMap sparsify(const LazyGraph& g, const SubdivisionMap& f, int k);

/// The coarse-embedding minor transfer at fragment scale: shortest-path
/// images P_xy, concatenated walks Q_uv, canonical bipartition, branch sets
/// V_u / V_v; output checked pairwise disjoint.
MinorModel transfer_minor(const CoarseEmbedding& emb, const LazyGraph& g_host,
                          const LazyGraph& h_host, const SubdivisionMap& g);

/// Max-degree-3 upgrade: hub plus at most three disjoint legs per branch set.
SubdivisionMap minor_to_subdivision(const LazyGraph& h, const MinorModel& model);

/// b(r): max over tree vertices of the number of window vertices whose
/// images land within tree distance r.
int qi_tree_capacity(const LazyGraph& g, const QIToTree& qi, int r, int window_radius);

/// First pair in the window violating the (gamma, c) distortion bounds.
std::optional<std::pair<Token, Token>> check_qi(const LazyGraph& g, const QIToTree& qi,
                                                int window_radius);

/// Windowed counting refutation: capacity of the (gamma+c)-slab around a deep
/// image vertex bounds any family of disjoint equivalent rays.
/// Throws NotRefuted when n_rays does not exceed the witnessed capacity.
RefutationWitness refute_half_grid(const LazyGraph& g, const QIToTree& qi, int n_rays,
                                   int depth);

/// The sign map cylinder(n) -> regular_tree(2): "i,z" goes to the |z|-th
/// vertex on the "1" (z > 0) or "2" (z < 0) branch.
QIToTree natural_cylinder_qi();

/// Contracts one arc of n-m+1 ring vertices per slice.
MinorModel chain_minor(int m, int n, int length);

/// K_n in the n x n x 2 cubic window: row combs in plane z=0, column combs
/// in plane z=1, risers on the diagonal.
MinorModel clique_minor_cubic(int n);

}  // namespace gw
