#include <iterator>
#include <variant>

#include <doctest.h>

#include "gridweaver/transfer.hpp"
#include "gridweaver/verify.hpp"
#include "gridweaver/weaver.hpp"

using namespace gw;

namespace {

bool has_rule(const CheckReport& rep, const std::string& rule) {
    for (const auto& v : rep.violations)
        if (v.rule == rule) return true;
    return false;
}

}  // namespace

TEST_CASE("subdivision checker flags the classic breakages") {
    LazyGraph g = make_hex();
    SubdivisionMap m = identity_subdivision(3, 3);
    REQUIRE(verify_subdivision(g, m).ok());

    SUBCASE("shared branch image") {
        auto bad = m;
        bad.branch["1,0"] = bad.branch.at("0,0");
        CHECK(has_rule(verify_subdivision(g, bad), "branch-injective"));
    }
    SUBCASE("missing edge path") {
        auto bad = m;
        bad.edge_paths.erase(bad.edge_paths.begin());
        CHECK(has_rule(verify_subdivision(g, bad), "pattern-coverage"));
    }
    SUBCASE("path through a non-edge") {
        auto bad = m;
        auto& p = bad.edge_paths.begin()->second;
        p = {p.front(), "5,5", p.back()};
        CHECK(has_rule(verify_subdivision(g, bad), "edge-path-valid"));
    }
    SUBCASE("shared internal vertex") {
        auto bad = m;
        auto it = bad.edge_paths.begin();
        auto& p1 = it->second;
        auto& p2 = std::next(it)->second;
        Token mid = "9,9";
        p1 = {p1.front(), mid, p1.back()};
        p2 = {p2.front(), mid, p2.back()};
        CHECK(has_rule(verify_subdivision(g, bad), "internal-disjointness"));
    }
}

TEST_CASE("minor checker flags overlap, disconnection and fake witnesses") {
    LazyGraph g = make_cylinder(9);
    MinorModel m = chain_minor(6, 9, 4);
    REQUIRE(verify_minor(g, m).ok());

    SUBCASE("overlapping branch sets") {
        auto bad = m;
        bad.branch_sets["0,0"].insert(*bad.branch_sets.at("1,0").begin());
        CHECK(has_rule(verify_minor(g, bad), "branch-disjointness"));
    }
    SUBCASE("disconnected branch set") {
        auto bad = m;
        bad.branch_sets["0,0"].insert("3,3");
        CHECK(has_rule(verify_minor(g, bad), "branch-connected"));
    }
    SUBCASE("witness outside its branch set") {
        auto bad = m;
        auto& wit = bad.edge_witness.begin()->second;
        wit.first = "2,2";
        CHECK(has_rule(verify_minor(g, bad), "witness-membership"));
    }
    SUBCASE("witness pair not an edge") {
        auto bad = m;
        TokenPair e = norm_edge("0,0", "0,1");
        REQUIRE(bad.edge_witness.count(e));
        bad.edge_witness[e] = {"0,0", "0,2"};
        auto rep = verify_minor(g, bad);
        CHECK_FALSE(rep.ok());
    }
}

TEST_CASE("divergence checker recomputes every bound") {
    LazyGraph g = make_square();
    Ray east{{"0,0"}, Extender{"axis", {{"dx", 1}}}};
    Ray west{{"-1,0"}, Extender{"axis", {{"dx", -1}}}};
    auto outcome = check_divergence(g, east, west, 10);
    auto* cert = std::get_if<DivergenceCertificate>(&outcome);
    REQUIRE(cert != nullptr);
    REQUIRE(verify_divergence_cert(g, east, west, *cert).ok());

    SUBCASE("inflating one row breaks the bound") {
        auto bad = *cert;
        bad.rows.back().n = 500;
        bad.rows.back().i = 0;
        bad.rows.back().j = 0;
        CHECK(has_rule(verify_divergence_cert(g, east, west, bad), "cert-bound"));
    }
    SUBCASE("breaking monotonicity is caught") {
        auto bad = *cert;
        std::swap(bad.rows.front(), bad.rows.back());
        CHECK(has_rule(verify_divergence_cert(g, east, west, bad), "cert-monotone"));
    }
    SUBCASE("empty table is vacuously fine") {
        CHECK(verify_divergence_cert(g, east, west, DivergenceCertificate{}).ok());
    }
}

TEST_CASE("comb checker spots duplicate teeth") {
    LazyGraph g = make_square();
    Comb comb;
    comb.spine = Ray::explicit_ray({"0,1", "1,1", "2,1", "3,1"});
    comb.teeth_paths = {{"0,1", "0,0"}, {"2,1", "2,0"}};
    comb.teeth = {"0,0", "2,0"};
    Ray target{{"0,0"}, Extender{"axis", {{"dx", 1}}}};
    REQUIRE(verify_comb(g, comb, target).ok());

    auto bad = comb;
    bad.teeth_paths.push_back({"1,1", "0,1", "0,0"});
    bad.teeth.push_back("0,0");
    auto rep = verify_comb(g, bad, target);
    CHECK_FALSE(rep.ok());
    CHECK(has_rule(rep, "tooth-disjoint"));
}

TEST_CASE("tree separations are tight, crossing edges are not allowed") {
    LazyGraph g = make_regular_tree(3);
    FiniteWindow w = ball(g, "e", 4);
    Separation sep;
    for (const auto& v : w.vertices)
        if (v != "e" && v[0] == '1')
            sep.b.insert(v);
        else
            sep.a.insert(v);
    sep.a.insert("1");
    sep.b.insert("1");
    CHECK(sep.order() == 1);
    auto rep = verify_separation_tight(g, sep, w);
    CHECK(rep.ok());
    CHECK(rep.stats.at("tight-a") == 1);
    CHECK(rep.stats.at("tight-b") == 1);

    SUBCASE("a crossing edge is reported") {
        auto bad = sep;
        bad.b.erase("1");  // now e -- 1 crosses from A\B to B\A
        auto r2 = verify_separation_tight(g, bad, w);
        CHECK(has_rule(r2, "separation-edge"));
    }
    SUBCASE("uncovered vertices are reported") {
        auto bad = sep;
        bad.a.erase("2");
        auto r2 = verify_separation_tight(g, bad, w);
        CHECK(has_rule(r2, "separation-cover"));
    }
}

TEST_CASE("reports are deterministic and sorted") {
    LazyGraph g = make_hex();
    SubdivisionMap m = identity_subdivision(3, 3);
    m.branch["0,0"] = m.branch.at("2,0");
    m.edge_paths.erase(m.edge_paths.begin());
    auto r1 = verify_subdivision(g, m);
    auto r2 = verify_subdivision(g, m);
    REQUIRE_FALSE(r1.ok());
    CHECK(r1.violations.size() == r2.violations.size());
    for (std::size_t i = 0; i + 1 < r1.violations.size(); ++i) {
        CHECK(r1.violations[i].rule <= r1.violations[i + 1].rule);
    }
    for (std::size_t i = 0; i < r1.violations.size(); ++i) {
        CHECK(r1.violations[i].rule == r2.violations[i].rule);
        CHECK(r1.violations[i].witness == r2.violations[i].witness);
    }
}
