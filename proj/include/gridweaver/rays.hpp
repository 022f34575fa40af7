#pragma once

#include <optional>
#include <variant>

#include "gridweaver/flow.hpp"
#include "gridweaver/graphcore.hpp"
#include "gridweaver/planar.hpp"

namespace gw {

/// Deterministic extension rule for a ray beyond its materialized prefix.
/// Rules: "axis" (params dx, dy[, dz] / di, dz for cylinder), "tree_deepen"
/// (params letter). Absent extender = explicit prefix only (truncated).
struct Extender {
    std::string rule;
    nlohmann::json params;
};

struct Ray {
    std::vector<Token> prefix;
    std::optional<Extender> extender;

    static Ray explicit_ray(std::vector<Token> prefix) { return Ray{std::move(prefix), {}}; }
};

/// First depth+1 vertices of the ray; extends via the rule when needed.
/// Throws WindowExhausted for explicit rays that are too short.
std::vector<Token> materialize(const LazyGraph& g, const Ray& r, int depth);

/// Like materialize, but an explicit ray shorter than depth+1 is returned
/// whole instead of throwing.
std::vector<Token> materialize_upto(const LazyGraph& g, const Ray& r, int depth);

/// Canonical geodesic ray of a builtin family, pointed either way.
/// positive=true gives the "east" ray from the root; false the opposite one
/// from the root's western neighbor (so the pair is vertex-disjoint).
Ray canonical_ray(const LazyGraph& g, bool positive);

struct DoubleRay {
    Ray negative;
    Ray positive;
    std::vector<Token> center_path;  // joins negative origin to positive origin, exclusive ends
};

struct Comb {
    Ray spine;
    // Each tooth path runs from a spine vertex to its tooth on the target ray.
    std::vector<std::vector<Token>> teeth_paths;
    std::vector<Token> teeth;  // final vertices, on the target ray
};

/// Scale-indexed divergence certificate: row (n, i, j, window_radius) claims
/// the tails r1[i:], r2[j:] have pairwise distance > n as far as materialized.
struct DivergenceCertificate {
    struct Row {
        int n, i, j, window_radius;
    };
    std::vector<Row> rows;
};

struct FailureWitness {
    int n;
    Token u, v;  // tail vertices at distance <= n however far the tails advance
    int d;
};

using DivergenceOutcome = std::variant<DivergenceCertificate, FailureWitness>;

struct DivergingPair {
    Ray r1, r2;
    DivergenceCertificate cert;
};

struct EquivalenceResult {
    bool found = false;
    std::vector<std::vector<Token>> paths;  // k disjoint connecting paths
    std::vector<Token> separator;           // Menger witness when !found
};

/// k pairwise vertex-disjoint rays from starts near the root, disjoint over
/// their first `depth` vertices. Throws NotFound when the window max-flow
/// certifies no such bundle exists in the window.
std::vector<Ray> disjoint_rays(const LazyGraph& g, int k, int depth);

/// k vertex-disjoint connecting paths between two rays, or a Menger separator.
EquivalenceResult equivalent(const LazyGraph& g, const Ray& r1, const Ray& r2, int k, int depth,
                             int margin = 6);

/// Two rays plus a certificate reaching n = scale. Throws NotFound on search
/// exhaustion (never a nonexistence proof).
DivergingPair diverging_pair(const LazyGraph& g, int scale, int effort);

/// Certificate reaching n = scale, or a witness pair that stays close however
/// far the tails advance within the materialized depth.
DivergenceOutcome check_divergence(const LazyGraph& g, const Ray& r1, const Ray& r2, int scale);

struct CombResult {
    Comb comb;
    bool complete = false;  // found all t requested teeth
};

/// Comb with up to t disjoint teeth from a spine inside `sub` to the target ray.
CombResult comb_from(const LazyGraph& g, const Subgraph& sub, const Ray& target, int t,
                     int target_depth);

}  // namespace gw
