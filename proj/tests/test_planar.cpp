#include <algorithm>

#include <doctest.h>

#include "gridweaver/planar.hpp"

using namespace gw;

namespace {

std::vector<Token> row_segment(long long x_from, long long x_to, long long y) {
    std::vector<Token> out;
    for (long long x = x_from; x <= x_to; ++x) out.push_back(xy_token(x, y));
    return out;
}

}  // namespace

TEST_CASE("face lengths match the lattice co-degrees") {
    auto faces_ok = [](const LazyGraph& g, int count, int len) {
        auto fw = face_walks_at(g, g.root);
        REQUIRE(fw.size() == static_cast<std::size_t>(count));
        for (const auto& f : fw) CHECK(f.length() == len);
    };
    faces_ok(make_hex(), 3, 6);
    faces_ok(make_square(), 4, 4);
    faces_ok(make_triangular(), 6, 3);
}

TEST_CASE("every vertex lies on deg(v) faces") {
    for (const std::string& name : {"hex", "square", "triangular"}) {
        LazyGraph g = make_graph(name);
        for (const auto& v : ball(g, g.root, 4).vertices)
            CHECK(face_walks_at(g, v).size() == g.neighbors(v).size());
    }
}

TEST_CASE("rotation is a permutation of the neighbors") {
    for (const std::string& name : {"hex", "square", "triangular", "half_grid"}) {
        LazyGraph g = make_graph(name);
        for (const auto& v : ball(g, g.root, 3).vertices) {
            auto rot = g.rotation(v);
            std::sort(rot.begin(), rot.end());
            CHECK(rot == g.neighbors(v));
        }
    }
}

TEST_CASE("face tracing without a rotation fails") {
    CHECK_THROWS_AS(face_walks_at(make_cubic(), "0,0,0"), NoRotation);
}

TEST_CASE("side map splits the square lattice along the x-axis") {
    LazyGraph g = make_square();
    SideMap sm(g, row_segment(-12, 12, 0), 16);
    CHECK(sm.side_of("2,5") == Side::A);
    CHECK(sm.side_of("2,-5") == Side::B);
    CHECK(sm.side_of("7,0") == Side::On);
}

TEST_CASE("side map on hex row 0") {
    LazyGraph g = make_hex();
    SideMap sm(g, row_segment(-14, 14, 0), 16);
    CHECK(sm.side_of("0,3") == Side::A);
    CHECK(sm.side_of("0,-3") == Side::B);
    CHECK(sm.side_of("3,0") == Side::On);
}

TEST_CASE("side labels are constant on ray-avoiding components") {
    LazyGraph g = make_square();
    SideMap sm(g, row_segment(-14, 14, 0), 16);
    for (const auto& v : ball(g, "0,0", 5).vertices) {
        Side s = sm.side_of(v);
        if (s == Side::On) continue;
        auto [x, y] = parse_xy(v);
        CHECK(s == (y > 0 ? Side::A : Side::B));
    }
}

TEST_CASE("incident faces of a square axis segment form the upper strip") {
    LazyGraph g = make_square();
    SideMap sm(g, row_segment(-12, 12, 0), 16);
    Subgraph sub = incident_face_subgraph(g, sm, row_segment(0, 5, 0));
    CHECK(sub.vertices.size() == 16);  // x in [-1, 6], y in {0, 1}
    for (const auto& v : sub.vertices) {
        auto [x, y] = parse_xy(v);
        CHECK((y == 0 || y == 1));
        CHECK(x >= -1);
        CHECK(x <= 6);
    }
    for (const auto& [a, b] : sub.edges) {
        CHECK(sub.vertices.count(a) == 1);
        CHECK(sub.vertices.count(b) == 1);
        CHECK(g.adjacent(a, b));
    }
}

TEST_CASE("incident faces of a hex row segment are the hexagons above it") {
    LazyGraph g = make_hex();
    SideMap sm(g, row_segment(-14, 14, 0), 16);
    Subgraph sub = incident_face_subgraph(g, sm, row_segment(0, 5, 0));
    CHECK_FALSE(sub.vertices.empty());
    for (const auto& v : sub.vertices) {
        auto [x, y] = parse_xy(v);
        CHECK((y == 0 || y == 1));
    }
    // side B instead gives the hexagons below
    Subgraph below = incident_face_subgraph(g, sm, row_segment(0, 5, 0), Side::B);
    for (const auto& v : below.vertices) {
        auto [x, y] = parse_xy(v);
        CHECK((y == 0 || y == -1));
    }
}

TEST_CASE("empty segment yields an empty subgraph") {
    LazyGraph g = make_square();
    SideMap sm(g, row_segment(-10, 10, 0), 16);
    Subgraph sub = incident_face_subgraph(g, sm, {});
    CHECK(sub.vertices.empty());
    CHECK(sub.edges.empty());
}
