#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "topskit/polytope.hpp"

using namespace topskit;
using oracle::pts;
using oracle::vec;

namespace {

std::vector<IntVector> cube_pts() {
    std::vector<IntVector> v;
    for (long x : {-1, 1})
        for (long y : {-1, 1})
            for (long z : {-1, 1}) v.push_back(vec({x, y, z}));
    return v;
}

std::vector<IntVector> octahedron_pts() {
    return pts({{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}});
}

// Membership via Caratheodory over all (d+1)-subsets; independent of the facet route.
bool in_hull_bruteforce(const std::vector<IntVector>& gens, const IntVector& x) {
    LatticePolytope dummy; // use the library type only to size things
    (void)dummy;
    const std::size_t r = gens[0].size();
    std::vector<std::size_t> comb;
    std::function<bool(std::size_t)> rec = [&](std::size_t start) -> bool {
        if (comb.size() == r + 1) {
            // solve sum l_i g_i = x, sum l_i = 1, l_i >= 0 exactly
            std::vector<std::vector<Rat>> m(r + 1, std::vector<Rat>(comb.size() + 1));
            for (std::size_t i = 0; i < r; ++i) {
                for (std::size_t j = 0; j < comb.size(); ++j) m[i][j] = Rat(gens[comb[j]][i]);
                m[i][comb.size()] = Rat(x[i]);
            }
            for (std::size_t j = 0; j < comb.size(); ++j) m[r][j] = 1;
            m[r][comb.size()] = 1;
            std::size_t rr = 0;
            std::vector<long> piv(r + 1, -1);
            for (std::size_t c = 0; c < comb.size() && rr < r + 1; ++c) {
                std::size_t p = rr;
                while (p < r + 1 && m[p][c] == 0) ++p;
                if (p == r + 1) continue;
                std::swap(m[rr], m[p]);
                for (std::size_t i = 0; i < r + 1; ++i) {
                    if (i == rr || m[i][c] == 0) continue;
                    Rat f = m[i][c] / m[rr][c];
                    for (std::size_t j = c; j <= comb.size(); ++j) m[i][j] -= f * m[rr][j];
                }
                piv[rr] = long(c);
                ++rr;
            }
            bool consistent = true;
            for (std::size_t i = rr; i < r + 1; ++i)
                if (m[i][comb.size()] != 0) consistent = false;
            if (consistent) {
                bool nonneg = true;
                for (std::size_t i = 0; i < rr; ++i) {
                    Rat l = m[i][comb.size()] / m[i][std::size_t(piv[i])];
                    if (l < 0) nonneg = false;
                }
                if (nonneg) return true;
            }
            return false;
        }
        for (std::size_t g = start; g < gens.size(); ++g) {
            comb.push_back(g);
            if (rec(g + 1)) {
                comb.pop_back();
                return true;
            }
            comb.pop_back();
        }
        return false;
    };
    return rec(0);
}

} // namespace

TEST_CASE("convex_hull pinned examples") {
    auto sq = convex_hull(pts({{0, 0}, {1, 0}, {0, 1}, {1, 1}, {0, 0}}));
    CHECK(sq.vertices().size() == 4);
    CHECK(sq.dim() == 2);

    auto cube = convex_hull(cube_pts());
    CHECK(cube.vertices().size() == 8);
    CHECK(cube.facets().size() == 6);
    for (const auto& f : cube.facets()) CHECK(f.offset == -1);

    auto tri = convex_hull(pts({{1, 0}, {0, 1}, {-1, -1}, {0, 0}}));
    CHECK(tri.vertices().size() == 3);

    CHECK_THROWS_AS(convex_hull({}), ArgumentError);
}

TEST_CASE("convex_hull extreme points match the brute-force oracle") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<long> coord(-4, 4);
    std::uniform_int_distribution<std::size_t> rankdist(2, 4);
    std::uniform_int_distribution<std::size_t> count(4, 12);
    for (int t = 0; t < 60; ++t) {
        std::size_t r = rankdist(rng);
        std::size_t n = count(rng);
        std::vector<IntVector> gens;
        for (std::size_t i = 0; i < n; ++i) {
            IntVector v(r);
            for (std::size_t j = 0; j < r; ++j) v[j] = Int(coord(rng));
            gens.push_back(v);
        }
        std::sort(gens.begin(), gens.end());
        gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
        auto p = convex_hull(gens);
        if (!p.full_dimensional()) continue;
        // every input point lies in the hull, every claimed vertex is extreme
        for (const auto& g : gens) CHECK(p.contains(g));
        std::set<IntVector> vset(p.vertices().begin(), p.vertices().end());
        for (const auto& g : gens) {
            std::vector<IntVector> others;
            for (const auto& h : gens)
                if (h != g) others.push_back(h);
            bool extreme = !in_hull_bruteforce(others, g);
            CHECK(extreme == (vset.count(g) > 0));
        }
    }
}

TEST_CASE("polar duality on the cube and octahedron") {
    auto cube = convex_hull(cube_pts());
    auto oct = convex_hull(octahedron_pts());

    QPolytope cp = polar(cube);
    REQUIRE(cp.is_integral());
    auto cpl = cp.to_lattice();
    CHECK(cpl.vertices() == oct.vertices());

    QPolytope op = polar(oct);
    REQUIRE(op.is_integral());
    CHECK(op.to_lattice().vertices() == cube.vertices());

    auto sq = convex_hull(pts({{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}));
    auto sp = polar(sq).to_lattice();
    CHECK(sp.vertices() == convex_hull(pts({{1, 0}, {-1, 0}, {0, 1}, {0, -1}})).vertices());

    auto off = convex_hull(pts({{0, 0}, {2, 0}, {0, 2}, {2, 2}}));
    CHECK_THROWS_AS(polar(off), DomainError);
}

TEST_CASE("is_reflexive") {
    CHECK(is_reflexive(convex_hull(cube_pts())));
    CHECK(is_reflexive(convex_hull(pts({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, -1, -1}}))));
    CHECK_FALSE(is_reflexive(convex_hull(pts({{0, 0}, {2, 0}, {0, 2}, {2, 2}}))));
    // segment: lower-dimensional input is simply false
    CHECK_FALSE(is_reflexive(convex_hull(pts({{-1, 0}, {1, 0}}))));
}

TEST_CASE("lattice_points") {
    CHECK(lattice_points(convex_hull(octahedron_pts())).size() == 7);
    CHECK(lattice_points(convex_hull(cube_pts())).size() == 27);
    CHECK(lattice_points(convex_hull(pts({{-1, 0}, {1, 0}}))).size() == 3);
    CHECK(interior_lattice_points(convex_hull(cube_pts())).size() == 1);
    CHECK(boundary_lattice_points(convex_hull(cube_pts())).size() == 26);
}

TEST_CASE("faces counts for cube and octahedron") {
    auto cube = convex_hull(cube_pts());
    CHECK(faces(cube, 0).size() == 8);
    CHECK(faces(cube, 1).size() == 12);
    CHECK(faces(cube, 2).size() == 6);
    CHECK(faces(cube, 3).size() == 1);
    auto oct = convex_hull(octahedron_pts());
    CHECK(faces(oct, 1).size() == 12);
    CHECK(faces(oct, 2).size() == 8);
    CHECK_THROWS_AS(faces(cube, 4), ArgumentError);
    for (const auto& f : faces(cube, 1)) {
        CHECK(f.vertex_indices.size() == 2);
        CHECK(f.facet_indices.size() == 2);
    }
}

TEST_CASE("minimal_face_containing") {
    auto cube = convex_hull(cube_pts());
    auto f = minimal_face_containing(cube, vec({1, 1, 1}));
    CHECK(f.dim == 0);
    auto e = minimal_face_containing(cube, vec({1, 1, 0}));
    CHECK(e.dim == 1);
    auto c = minimal_face_containing(cube, vec({0, 0, 0}));
    CHECK(c.dim == 3);
}

TEST_CASE("is_smooth_fano") {
    CHECK(is_smooth_fano(convex_hull(octahedron_pts())));
    CHECK(is_smooth_fano(
        convex_hull(pts({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, 0, 0}, {0, -1, -1}}))));
    CHECK_FALSE(is_smooth_fano(convex_hull(cube_pts())));
    CHECK_THROWS_AS(is_smooth_fano(convex_hull(pts({{0, 0}, {2, 0}, {0, 2}}))), DomainError);
}

TEST_CASE("normalized volume") {
    CHECK(normalized_volume(convex_hull(cube_pts())) == 48); // 3! * 8
    CHECK(normalized_volume(convex_hull(octahedron_pts())) == 8);
    CHECK(normalized_volume(convex_hull(pts({{0, 0}, {1, 0}, {0, 1}}))) == 1);
    CHECK(normalized_volume(convex_hull(pts({{-1, 0}, {2, 0}}))) == 3);
}

TEST_CASE("normal_form separates and identifies") {
    auto cube = convex_hull(cube_pts());
    // a unimodular image of the cube
    std::vector<IntVector> img;
    for (const auto& v : cube.vertices()) {
        IntVector w(3);
        w[0] = v[0] + 2 * v[1];
        w[1] = v[1];
        w[2] = v[0] + v[2] - v[1];
        img.push_back(w);
    }
    CHECK(normal_form(cube) == normal_form(convex_hull(img)));
    CHECK_FALSE(normal_form(cube) == normal_form(convex_hull(octahedron_pts())));
    CHECK_THROWS_AS(normal_form(convex_hull(pts({{0, 0}, {1, 0}}))), DomainError);
}

TEST_CASE("sixteen reflexive polygons") {
    auto polys = enumerate_reflexive_polygons();
    CHECK(polys.size() == 16);
    std::set<NormalFormKey> keys;
    for (const auto& p : polys) {
        CHECK(is_reflexive(p));
        keys.insert(normal_form(p));
        // polar involution on every class
        auto pp = polar(p).to_lattice();
        CHECK(polar(pp).to_lattice().vertices() == p.vertices());
        CHECK(p.facets().size() == polar(p).vertices.size());
        CHECK(interior_lattice_points(p) == std::vector<IntVector>{vec({0, 0})});
    }
    CHECK(keys.size() == 16);
    keys.insert(normal_form(convex_hull(pts({{1, 0}, {0, 1}, {-1, -1}}))));
    CHECK(keys.size() == 16); // the standard simplex is one of them

    // normal_form agreement with the brute-force isomorphism search
    for (std::size_t i = 0; i < polys.size(); ++i)
        for (std::size_t j = 0; j < polys.size(); ++j) {
            bool same_key = normal_form(polys[i]) == normal_form(polys[j]);
            CHECK(same_key == oracle::isomorphic_2d_bruteforce(polys[i], polys[j]));
        }
}
