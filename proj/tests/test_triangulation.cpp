#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "topskit/triangulation.hpp"

using namespace topskit;
using oracle::pts;
using oracle::vec;

namespace {

LatticePolytope cube() {
    std::vector<IntVector> v;
    for (long x : {-1, 1})
        for (long y : {-1, 1})
            for (long z : {-1, 1}) v.push_back(vec({x, y, z}));
    return convex_hull(v);
}

LatticePolytope octahedron() {
    return convex_hull(
        pts({{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}}));
}

} // namespace

TEST_CASE("octahedron boundary: one triangle per facet") {
    auto t = triangulate_boundary(octahedron(), BoundaryVariant::maximal);
    CHECK(t.simplices.size() == 8);
    CHECK(t.points.size() == 7); // 6 boundary points + origin pool entry
    CHECK(t.points.back() == vec({0, 0, 0}));
    CHECK(is_valid(t));
    CHECK(is_unimodular(t));
    CHECK(certificate_projects(t));
    std::size_t interior = 0;
    for (const auto& l : ridge_links(t))
        if (l.interior) ++interior;
    CHECK(interior == 12);
}

TEST_CASE("2d simplex boundary: three segments") {
    auto simplex = convex_hull(pts({{1, 0}, {0, 1}, {-1, -1}}));
    auto t = triangulate_boundary(simplex, BoundaryVariant::maximal);
    CHECK(t.simplices.size() == 3);
    for (const auto& s : t.simplices) CHECK(s.size() == 2);
    CHECK(is_valid(t));
    CHECK(certificate_projects(t));
}

TEST_CASE("cube boundary: vertices-only vs maximal") {
    auto tv = triangulate_boundary(cube(), BoundaryVariant::vertices_only);
    CHECK(tv.simplices.size() == 12);
    CHECK(is_valid(tv));
    CHECK_FALSE(is_unimodular(tv)); // corner triangles have determinant 2 cones
    CHECK(certificate_projects(tv));
    std::size_t interior = 0;
    for (const auto& l : ridge_links(tv))
        if (l.interior) ++interior;
    CHECK(interior == 18); // Euler: 8 - 18 + 12 = 2

    auto tm = triangulate_boundary(cube(), BoundaryVariant::maximal);
    CHECK(tm.simplices.size() == 48);
    CHECK(tm.points.size() == 27); // 26 boundary points + origin
    CHECK(is_valid(tm));
    CHECK(is_unimodular(tm));
    CHECK(certificate_projects(tm));
    // every boundary lattice point is used
    std::set<std::size_t> used;
    for (const auto& s : tm.simplices) used.insert(s.begin(), s.end());
    CHECK(used.size() == 26);
    // V - E + F = 2 on the boundary sphere
    std::set<std::vector<std::size_t>> edges;
    for (const auto& l : ridge_links(tm)) {
        CHECK(l.interior);
    }
    for (const auto& s : tm.simplices)
        for (std::size_t i = 0; i < s.size(); ++i)
            for (std::size_t j = i + 1; j < s.size(); ++j)
                edges.insert({std::min(s[i], s[j]), std::max(s[i], s[j])});
    CHECK(long(used.size()) - long(edges.size()) + long(tm.simplices.size()) == 2);
}

TEST_CASE("is_valid rejects broken collections") {
    // two overlapping triangles sharing interior
    Triangulation bad;
    bad.points = pts({{0, 0}, {2, 0}, {0, 2}, {2, 2}});
    bad.simplices = {{0, 1, 2}, {0, 1, 3}};
    CHECK_FALSE(is_valid(bad));

    // covering failure: half the square
    Triangulation half;
    half.points = pts({{0, 0}, {2, 0}, {0, 2}, {2, 2}});
    half.simplices = {{0, 1, 2}};
    CHECK_FALSE(is_valid(half));

    // affine dependence
    Triangulation dep;
    dep.points = pts({{0, 0}, {1, 0}, {2, 0}});
    dep.simplices = {{0, 1, 2}};
    CHECK_FALSE(is_valid(dep));

    // valid full triangulation of the square for contrast
    Triangulation good;
    good.points = pts({{0, 0}, {2, 0}, {0, 2}, {2, 2}});
    good.simplices = {{0, 1, 2}, {1, 2, 3}};
    CHECK(is_valid(good));
}

TEST_CASE("single simplex has no interior ridges") {
    Triangulation t;
    t.points = pts({{0, 0}, {1, 0}, {0, 1}});
    t.simplices = {{0, 1, 2}};
    std::size_t interior = 0;
    for (const auto& l : ridge_links(t))
        if (l.interior) ++interior;
    CHECK(interior == 0);
}

TEST_CASE("standard simplex boundary is unimodular") {
    auto s = convex_hull(pts({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, -1, -1}}));
    auto t = triangulate_boundary(s, BoundaryVariant::maximal);
    CHECK(t.simplices.size() == 4);
    CHECK(is_unimodular(t));
    CHECK(is_valid(t));
}

TEST_CASE("maximal boundary triangulation of a 4d reflexive polytope") {
    // cross-polytope in 4d: 16 unimodular facets
    std::vector<IntVector> v;
    for (std::size_t i = 0; i < 4; ++i)
        for (long s : {-1, 1}) {
            IntVector x(4, Int(0));
            x[i] = s;
            v.push_back(x);
        }
    auto p = convex_hull(v);
    auto t = triangulate_boundary(p, BoundaryVariant::maximal);
    CHECK(t.simplices.size() == 16);
    CHECK(is_valid(t));
    CHECK(is_unimodular(t));
    CHECK(certificate_projects(t));
}
