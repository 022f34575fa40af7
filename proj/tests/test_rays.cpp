#include <algorithm>
#include <set>

#include <doctest.h>

#include "gridweaver/rays.hpp"
#include "gridweaver/verify.hpp"

using namespace gw;

namespace {

bool is_path(const LazyGraph& g, const std::vector<Token>& p) {
    std::set<Token> seen(p.begin(), p.end());
    if (seen.size() != p.size()) return false;
    for (std::size_t i = 0; i + 1 < p.size(); ++i)
        if (!g.adjacent(p[i], p[i + 1])) return false;
    return true;
}

bool pairwise_disjoint(const std::vector<std::vector<Token>>& paths) {
    std::set<Token> seen;
    for (const auto& p : paths)
        for (const auto& t : p)
            if (!seen.insert(t).second) return false;
    return true;
}

}  // namespace

TEST_CASE("canonical rays are geodesic paths") {
    for (const std::string& name : {"hex", "square", "triangular", "cubic", "cylinder:5",
                                    "regular_tree:3", "two_storey"}) {
        LazyGraph g = make_graph(name);
        auto mp = materialize(g, canonical_ray(g, true), 12);
        auto mm = materialize(g, canonical_ray(g, false), 12);
        CHECK(mp.size() == 13);
        CHECK(is_path(g, mp));
        CHECK(is_path(g, mm));
        CHECK(pairwise_disjoint({mp, mm}));
    }
}

TEST_CASE("materialize_upto truncates explicit rays instead of throwing") {
    LazyGraph g = make_square();
    Ray r = Ray::explicit_ray({"0,0", "1,0", "2,0"});
    CHECK_THROWS_AS(materialize(g, r, 10), WindowExhausted);
    CHECK(materialize_upto(g, r, 10).size() == 3);
    CHECK(materialize_upto(g, r, 1).size() == 2);
}

TEST_CASE("disjoint rays in the hex lattice") {
    LazyGraph g = make_hex();
    auto rays = disjoint_rays(g, 3, 10);
    REQUIRE(rays.size() == 3);
    std::vector<std::vector<Token>> mats;
    for (const auto& r : rays) {
        mats.push_back(materialize_upto(g, r, 10));
        CHECK(mats.back().size() >= 10);
        CHECK(is_path(g, mats.back()));
    }
    CHECK(pairwise_disjoint(mats));
}

TEST_CASE("k=1 returns the canonical geodesic") {
    LazyGraph g = make_square();
    auto rays = disjoint_rays(g, 1, 5);
    REQUIRE(rays.size() == 1);
    CHECK(rays[0].prefix == materialize(g, canonical_ray(g, true), 5));
}

TEST_CASE("apex hub keeps many disjoint rays") {
    LazyGraph g = make_apex_hub();
    for (int k = 2; k <= 8; k += 3) {
        auto rays = disjoint_rays(g, k, 20);
        std::vector<std::vector<Token>> mats;
        for (const auto& r : rays) mats.push_back(materialize_upto(g, r, 20));
        CHECK(pairwise_disjoint(mats));
    }
}

TEST_CASE("parallel square rows are equivalent with many rungs") {
    LazyGraph g = make_square();
    Ray r1{{"0,0"}, Extender{"axis", {{"dx", 1}}}};
    Ray r2{{"0,1"}, Extender{"axis", {{"dx", 1}}}};
    auto res = equivalent(g, r1, r2, 5, 20);
    REQUIRE(res.found);
    CHECK(res.paths.size() == 5);
    CHECK(pairwise_disjoint(res.paths));
}

TEST_CASE("tree rays are separated by the root") {
    LazyGraph g = make_regular_tree(3);
    Ray r1{{"1"}, Extender{"tree_deepen", {{"letter", "1"}}}};
    Ray r2{{"2"}, Extender{"tree_deepen", {{"letter", "1"}}}};
    auto res = equivalent(g, r1, r2, 2, 10);
    CHECK_FALSE(res.found);
    CHECK(res.separator == std::vector<Token>{"e"});
}

TEST_CASE("hex rows 0 and 4 are equivalent") {
    LazyGraph g = make_hex();
    Ray r1{{"0,0"}, Extender{"axis", {{"dx", 1}}}};
    Ray r2{{"0,4"}, Extender{"axis", {{"dx", 1}}}};
    auto res = equivalent(g, r1, r2, 4, 30);
    CHECK(res.found);
    CHECK(res.paths.size() == 4);
}

TEST_CASE("diverging pair on the square lattice certifies scale 24") {
    LazyGraph g = make_square();
    DivergingPair dp = diverging_pair(g, 24, 10000);
    REQUIRE_FALSE(dp.cert.rows.empty());
    CHECK(dp.cert.rows.back().n == 24);
    CHECK(verify_divergence_cert(g, dp.r1, dp.r2, dp.cert).ok());
}

TEST_CASE("apex hub admits no divergence certificate at scale 5") {
    LazyGraph g = make_apex_hub();
    CHECK_THROWS_AS(diverging_pair(g, 5, 2000), NotFound);
}

TEST_CASE("certificate rows are monotone with nested tails") {
    LazyGraph g = make_hex();
    DivergingPair dp = diverging_pair(g, 12, 10000);
    int pn = 0, pi = -1, pj = -1;
    for (const auto& row : dp.cert.rows) {
        CHECK(row.n > pn);
        CHECK(row.i >= pi);
        CHECK(row.j >= pj);
        pn = row.n;
        pi = row.i;
        pj = row.j;
    }
}

TEST_CASE("matched storey rows never diverge") {
    LazyGraph g = make_two_storey();
    Ray r1{{"0|0,0"}, Extender{"axis", {{"dx", 1}}}};
    Ray r2{{"1|0,0"}, Extender{"axis", {{"dx", 1}}}};
    auto outcome = check_divergence(g, r1, r2, 3);
    auto* w = std::get_if<FailureWitness>(&outcome);
    REQUIRE(w != nullptr);
    CHECK(w->d == 1);
}

TEST_CASE("a ray shifted by one vertex fails against itself") {
    LazyGraph g = make_square();
    auto m = materialize(g, canonical_ray(g, true), 40);
    Ray r1 = Ray::explicit_ray(m);
    Ray r2 = Ray::explicit_ray({m.begin() + 1, m.end()});
    auto outcome = check_divergence(g, r1, r2, 2);
    CHECK(std::holds_alternative<FailureWitness>(outcome));
}

TEST_CASE("comb from the y=1 strip onto the x-axis") {
    LazyGraph g = make_square();
    Subgraph sub;
    for (long long x = -10; x <= 10; ++x) {
        sub.vertices.insert(xy_token(x, 1));
        if (x > -10) sub.edges.insert(norm_edge(xy_token(x - 1, 1), xy_token(x, 1)));
    }
    Ray target{{"0,0"}, Extender{"axis", {{"dx", 1}}}};
    auto res = comb_from(g, sub, target, 5, 30);
    CHECK(res.complete);
    CHECK(res.comb.teeth.size() >= 5);
    CHECK(verify_comb(g, res.comb, target).ok());

    auto bare = comb_from(g, sub, target, 0, 30);
    CHECK(bare.complete);
    CHECK(bare.comb.teeth.empty());
    CHECK(is_path(g, bare.comb.spine.prefix));
}

TEST_CASE("comb teeth land on distinct increasing target vertices") {
    LazyGraph g = make_hex();
    SideMap sm(g, materialize(g, Ray{{"-14,0"}, Extender{"axis", {{"dx", 1}}}}, 28), 16);
    std::vector<Token> seg;
    for (long long x = 0; x <= 6; ++x) seg.push_back(xy_token(x, 0));
    Subgraph sub = incident_face_subgraph(g, sm, seg);
    Ray target{{"-14,0"}, Extender{"axis", {{"dx", 1}}}};
    auto res = comb_from(g, sub, target, 3, 28);
    CHECK(res.comb.teeth.size() >= 3);
    CHECK(verify_comb(g, res.comb, target).ok());
}
