#include <algorithm>
#include <map>
#include <set>

#include "topskit/triangulation.hpp"

namespace topskit {

namespace {

Int norm2(const IntVector& x) {
    Int s = 0;
    for (const auto& c : x) s += c * c;
    return s;
}

// Cells of the lower hull of facet points lifted by the given heights,
// as lists of positions into fpts.
std::vector<std::vector<std::size_t>> lower_hull_cells(const std::vector<IntVector>& fpts,
                                                       const std::vector<Int>& lift) {
    AffineChart chart = affine_chart(fpts);
    const std::size_t d = chart.basis.size();
    std::vector<IntVector> lifted;
    for (std::size_t i = 0; i < fpts.size(); ++i) {
        IntVector y = chart.to_chart(fpts[i]);
        y.push_back(lift[i]);
        lifted.push_back(std::move(y));
    }
    LatticePolytope lh = convex_hull(lifted);
    std::vector<std::vector<std::size_t>> cells;
    if (!lh.full_dimensional()) {
        // all points lifted onto one hyperplane: a single cell
        std::vector<std::size_t> all(fpts.size());
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
        cells.push_back(std::move(all));
        return cells;
    }
    for (const auto& f : lh.facets()) {
        if (f.normal[d] <= 0) continue; // keep lower facets only
        std::vector<std::size_t> cell;
        for (std::size_t i = 0; i < lifted.size(); ++i)
            if (dot(f.normal, lifted[i]) == f.offset) cell.push_back(i);
        cells.push_back(std::move(cell));
    }
    return cells;
}

struct PoolIndex {
    std::map<IntVector, std::size_t> pos;
    std::size_t operator()(const IntVector& p) const {
        auto it = pos.find(p);
        if (it == pos.end()) throw StructureError("point missing from pool");
        return it->second;
    }
};

} // namespace

Triangulation triangulate_boundary(const LatticePolytope& p, BoundaryVariant variant) {
    if (!p.full_dimensional() || !p.origin_interior())
        throw DomainError("triangulate_boundary: need full dimension and interior origin");
    const std::size_t r = p.rank();

    std::vector<IntVector> pool = variant == BoundaryVariant::maximal
                                      ? boundary_lattice_points(p)
                                      : p.vertices();
    std::sort(pool.begin(), pool.end()); // insertion order: lexicographic
    PoolIndex index;
    for (std::size_t i = 0; i < pool.size(); ++i) index.pos[pool[i]] = i;
    const std::size_t q = pool.size();

    // Composite lifting: convex part K|x|^2 plus lexicographic pulls -M^(q-i).
    // K and M grow until the certificate reprojects exactly.
    Int M = 4;
    for (int attempt = 0; attempt < 40; ++attempt) {
        std::vector<Int> weight(q);
        Int w = M;
        for (std::size_t i = 0; i < q; ++i) {
            weight[q - 1 - i] = w;
            w *= M;
        }
        Int K = w * M; // M^(q+1)
        std::vector<Int> eta(q);
        for (std::size_t i = 0; i < q; ++i) eta[i] = K * norm2(pool[i]) - weight[i];

        Triangulation t;
        t.points = pool;
        t.points.push_back(IntVector(r, Int(0))); // origin closes the pool, used by no simplex
        t.heights = eta;
        t.heights.push_back(Int(0));

        bool consistent = true;
        std::set<std::vector<std::size_t>> simplices;
        for (const auto& f : p.facets()) {
            std::vector<IntVector> fpts;
            std::vector<Int> flift;
            for (std::size_t i = 0; i < q; ++i)
                if (dot(f.normal, pool[i]) == f.offset) {
                    fpts.push_back(pool[i]);
                    flift.push_back(eta[i]);
                }
            // Cells by the convex part alone, refined by the pulls: computing
            // with eta directly realizes both at once.
            auto cells = lower_hull_cells(fpts, flift);
            std::set<std::size_t> used;
            for (const auto& cell : cells) {
                if (cell.size() == std::size_t(p.dim())) {
                    std::vector<std::size_t> s;
                    for (std::size_t ci : cell) {
                        s.push_back(index(fpts[ci]));
                        used.insert(ci);
                    }
                    std::sort(s.begin(), s.end());
                    simplices.insert(std::move(s));
                } else {
                    consistent = false; // a non-simplicial lower cell: pulls too weak
                    break;
                }
            }
            // every facet point must be a lower-hull vertex
            if (used.size() != fpts.size()) consistent = false;
            if (!consistent) break;
        }
        if (consistent) {
            t.simplices.assign(simplices.begin(), simplices.end());
            return t;
        }
        M *= 8;
    }
    throw Error("triangulate_boundary: lifting refinement failed to separate");
}

bool certificate_projects(const Triangulation& t) {
    if (!t.has_certificate() || t.heights.size() != t.points.size()) return false;
    LatticePolytope hull = convex_hull(t.points);
    if (!hull.full_dimensional() || !hull.origin_interior()) return false;
    std::set<std::vector<std::size_t>> expected(t.simplices.begin(), t.simplices.end());
    std::set<std::vector<std::size_t>> projected;
    for (const auto& f : hull.facets()) {
        std::vector<IntVector> fpts;
        std::vector<Int> flift;
        std::vector<std::size_t> fidx;
        for (std::size_t i = 0; i < t.points.size(); ++i)
            if (dot(f.normal, t.points[i]) == f.offset) {
                fpts.push_back(t.points[i]);
                flift.push_back(t.heights[i]);
                fidx.push_back(i);
            }
        for (const auto& cell : lower_hull_cells(fpts, flift)) {
            std::vector<std::size_t> s;
            for (std::size_t ci : cell) s.push_back(fidx[ci]);
            std::sort(s.begin(), s.end());
            projected.insert(std::move(s));
        }
    }
    return projected == expected;
}

bool is_regular(const Triangulation& t) {
    if (t.has_certificate()) return certificate_projects(t);
    LatticePolytope hull = convex_hull(t.points);
    if (!hull.full_dimensional() || !hull.origin_interior()) return false;
    const std::size_t q = t.points.size();

    // Strict lifting conditions, scaled to >= 1: for each facet, each simplex
    // on it, and each other facet point, the lifted point lies strictly above
    // the simplex's lifted hyperplane.
    std::vector<std::pair<std::vector<Int>, Int>> rows; // coeffs . eta >= rhs
    for (const auto& f : hull.facets()) {
        std::vector<std::size_t> fpts;
        for (std::size_t i = 0; i < q; ++i)
            if (dot(f.normal, t.points[i]) == f.offset) fpts.push_back(i);
        std::vector<IntVector> fvals;
        for (std::size_t i : fpts) fvals.push_back(t.points[i]);
        AffineChart chart = affine_chart(fvals);
        const std::size_t d = chart.basis.size();

        for (const auto& s : t.simplices) {
            bool on = true;
            for (std::size_t i : s)
                if (dot(f.normal, t.points[i]) != f.offset) {
                    on = false;
                    break;
                }
            if (!on) continue;
            std::set<std::size_t> sset(s.begin(), s.end());
            for (std::size_t x : fpts) {
                if (sset.count(x)) continue;
                // determinant rows: [chart(s_i) | eta | 1] and [chart(x) | eta | 1]
                std::vector<std::size_t> all(s.begin(), s.end());
                all.push_back(x);
                const std::size_t n = all.size(); // d + 2
                std::vector<Int> coeff(q, Int(0));
                std::vector<IntVector> skel;
                for (std::size_t i : all) {
                    IntVector r = chart.to_chart(t.points[i]);
                    r.push_back(Int(1));
                    skel.push_back(std::move(r));
                }
                Int cof_x = 0;
                for (std::size_t i = 0; i < n; ++i) {
                    IntMatrix minor(n - 1, d + 1);
                    std::size_t rr = 0;
                    for (std::size_t r = 0; r < n; ++r) {
                        if (r == i) continue;
                        for (std::size_t c = 0; c <= d; ++c) minor.at(rr, c) = skel[r][c];
                        ++rr;
                    }
                    Int m = determinant(minor);
                    Int cf = ((i + d) % 2 == 0) ? m : -m;
                    coeff[all[i]] += cf;
                    if (i + 1 == n) cof_x = cf;
                }
                if (cof_x == 0) return false; // degenerate simplex on the facet
                if (cof_x < 0)
                    for (auto& c : coeff) c = -c;
                rows.push_back({std::move(coeff), Int(1)});
            }
        }
    }

    // Fourier-Motzkin elimination.
    for (std::size_t v = 0; v < q; ++v) {
        std::vector<std::pair<std::vector<Int>, Int>> pos, neg, zero;
        for (auto& r : rows) {
            if (r.first[v] > 0)
                pos.push_back(std::move(r));
            else if (r.first[v] < 0)
                neg.push_back(std::move(r));
            else
                zero.push_back(std::move(r));
        }
        rows = std::move(zero);
        for (const auto& p : pos)
            for (const auto& ng : neg) {
                std::vector<Int> c(q);
                Int a = -ng.first[v], b = p.first[v];
                for (std::size_t i = 0; i < q; ++i) c[i] = a * p.first[i] + b * ng.first[i];
                Int rhs = a * p.second + b * ng.second;
                Int g = content(c);
                mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), rhs.get_mpz_t());
                if (g > 1) {
                    for (auto& e : c) e /= g;
                    rhs /= g;
                }
                bool allzero = true;
                for (const auto& e : c)
                    if (e != 0) allzero = false;
                if (allzero) {
                    if (rhs > 0) return false;
                    continue;
                }
                rows.push_back({std::move(c), std::move(rhs)});
                if (rows.size() > 200000) throw Error("is_regular: elimination too large");
            }
    }
    for (const auto& r : rows)
        if (r.second > 0) return false;
    return true;
}

namespace {

// Barycentric coordinates of x w.r.t. affinely independent points c; nullopt
// when x is outside their affine hull.
std::optional<std::vector<Rat>> barycentric(const std::vector<IntVector>& c, const RatVector& x) {
    const std::size_t r = x.size(), k = c.size();
    std::vector<std::vector<Rat>> m(r + 1, std::vector<Rat>(k + 1));
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < k; ++j) m[i][j] = Rat(c[j][i]);
        m[i][k] = x[i];
    }
    for (std::size_t j = 0; j < k; ++j) m[r][j] = 1;
    m[r][k] = 1;
    std::size_t rr = 0;
    std::vector<long> piv(r + 1, -1);
    for (std::size_t col = 0; col < k && rr < r + 1; ++col) {
        std::size_t p = rr;
        while (p < r + 1 && m[p][col] == 0) ++p;
        if (p == r + 1) continue;
        std::swap(m[rr], m[p]);
        for (std::size_t i = 0; i < r + 1; ++i) {
            if (i == rr || m[i][col] == 0) continue;
            Rat f = m[i][col] / m[rr][col];
            for (std::size_t j = col; j <= k; ++j) m[i][j] -= f * m[rr][j];
        }
        piv[rr] = long(col);
        ++rr;
    }
    for (std::size_t i = rr; i < r + 1; ++i)
        if (m[i][k] != 0) return std::nullopt;
    std::vector<Rat> lam(k, Rat(0));
    for (std::size_t i = 0; i < rr; ++i) lam[std::size_t(piv[i])] = m[i][k] / m[i][piv[i]];
    return lam;
}

// conv(a) and conv(b) (simplices, point values) intersect exactly in the face
// spanned by their common points?
bool proper_pair(const std::vector<IntVector>& a, const std::vector<IntVector>& b) {
    const std::size_t r = a[0].size();
    std::vector<IntVector> common;
    for (const auto& p : a)
        if (std::find(b.begin(), b.end(), p) != b.end()) common.push_back(p);

    // Parametrize x = a0 + U s (simplex a) and require x in aff(b): solve the
    // joint system in (s, u) with x = b0 + W u.
    const std::size_t na = a.size() - 1, nb = b.size() - 1;
    // rows: r equations a0 + U s = b0 + W u
    std::vector<std::vector<Rat>> sys(r, std::vector<Rat>(na + nb + 1));
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < na; ++j) sys[i][j] = Rat(a[j + 1][i] - a[0][i]);
        for (std::size_t j = 0; j < nb; ++j) sys[i][na + j] = Rat(-(b[j + 1][i] - b[0][i]));
        sys[i][na + nb] = Rat(b[0][i] - a[0][i]);
    }
    // Gaussian elimination to find the affine solution set in (s,u)-space.
    std::size_t rr = 0;
    std::vector<long> piv_col(r, -1);
    const std::size_t nvar = na + nb;
    for (std::size_t col = 0; col < nvar && rr < r; ++col) {
        std::size_t p = rr;
        while (p < r && sys[p][col] == 0) ++p;
        if (p == r) continue;
        std::swap(sys[rr], sys[p]);
        for (std::size_t i = 0; i < r; ++i) {
            if (i == rr || sys[i][col] == 0) continue;
            Rat f = sys[i][col] / sys[rr][col];
            for (std::size_t j = col; j <= nvar; ++j) sys[i][j] -= f * sys[rr][j];
        }
        piv_col[rr] = long(col);
        ++rr;
    }
    for (std::size_t i = rr; i < r; ++i)
        if (sys[i][nvar] != 0) return common.empty(); // affine hulls disjoint

    // Solution: particular + kernel basis in the free variables.
    std::vector<std::size_t> free_cols;
    {
        std::set<long> pivs(piv_col.begin(), piv_col.end());
        for (std::size_t c = 0; c < nvar; ++c)
            if (!pivs.count(long(c))) free_cols.push_back(c);
    }
    const std::size_t e = free_cols.size();
    // var(t) = part + sum t_f dir_f
    std::vector<std::vector<Rat>> dirs(e, std::vector<Rat>(nvar, Rat(0)));
    std::vector<Rat> part(nvar, Rat(0));
    for (std::size_t i = 0; i < rr; ++i)
        part[std::size_t(piv_col[i])] = sys[i][nvar] / sys[i][std::size_t(piv_col[i])];
    for (std::size_t f = 0; f < e; ++f) {
        dirs[f][free_cols[f]] = 1;
        for (std::size_t i = 0; i < rr; ++i)
            dirs[f][std::size_t(piv_col[i])] =
                -sys[i][free_cols[f]] / sys[i][std::size_t(piv_col[i])];
    }

    // Inequalities: barycentric coords of both simplices nonnegative. With
    // lambda_a = (1 - sum s, s...) and lambda_b = (1 - sum u, u...).
    // Build rows: ineq(t) = c0 + c . t >= 0.
    std::vector<std::vector<Rat>> ineqs; // last entry = constant
    auto add_ineq = [&](const std::vector<Rat>& coeff_vars, const Rat& cst) {
        std::vector<Rat> row(e + 1);
        row[e] = cst;
        for (std::size_t f = 0; f < e; ++f) {
            Rat s(0);
            for (std::size_t v = 0; v < nvar; ++v) s += coeff_vars[v] * dirs[f][v];
            row[f] = s;
        }
        for (std::size_t v = 0; v < nvar; ++v) row[e] += coeff_vars[v] * part[v];
        ineqs.push_back(std::move(row));
    };
    for (std::size_t j = 0; j < na; ++j) {
        std::vector<Rat> cv(nvar, Rat(0));
        cv[j] = 1;
        add_ineq(cv, Rat(0));
    }
    {
        std::vector<Rat> cv(nvar, Rat(0));
        for (std::size_t j = 0; j < na; ++j) cv[j] = -1;
        add_ineq(cv, Rat(1));
    }
    for (std::size_t j = 0; j < nb; ++j) {
        std::vector<Rat> cv(nvar, Rat(0));
        cv[na + j] = 1;
        add_ineq(cv, Rat(0));
    }
    {
        std::vector<Rat> cv(nvar, Rat(0));
        for (std::size_t j = 0; j < nb; ++j) cv[na + j] = -1;
        add_ineq(cv, Rat(1));
    }

    // Vertex-enumerate the (bounded) feasible region in t-space.
    std::vector<RatVector> verts;
    std::vector<std::size_t> comb;
    std::function<void(std::size_t)> enumerate = [&](std::size_t start) {
        if (comb.size() == e) {
            std::vector<std::vector<Rat>> m(e, std::vector<Rat>(e + 1));
            for (std::size_t i = 0; i < e; ++i) {
                for (std::size_t j = 0; j < e; ++j) m[i][j] = ineqs[comb[i]][j];
                m[i][e] = -ineqs[comb[i]][e];
            }
            // solve m t = rhs
            std::size_t r2 = 0;
            for (std::size_t c = 0; c < e && r2 < e; ++c) {
                std::size_t p = r2;
                while (p < e && m[p][c] == 0) ++p;
                if (p == e) return;
                std::swap(m[r2], m[p]);
                for (std::size_t i = 0; i < e; ++i) {
                    if (i == r2 || m[i][c] == 0) continue;
                    Rat f = m[i][c] / m[r2][c];
                    for (std::size_t j = c; j <= e; ++j) m[i][j] -= f * m[r2][j];
                }
                ++r2;
            }
            if (r2 < e) return;
            RatVector t(e);
            for (std::size_t i = 0; i < e; ++i) t[i] = m[i][e] / m[i][i];
            for (const auto& iq : ineqs) {
                Rat s = iq[e];
                for (std::size_t f = 0; f < e; ++f) s += iq[f] * t[f];
                if (s < 0) return;
            }
            verts.push_back(std::move(t));
            return;
        }
        for (std::size_t i = start; i < ineqs.size(); ++i) {
            comb.push_back(i);
            enumerate(i + 1);
            comb.pop_back();
        }
    };
    if (e == 0) {
        // single candidate point: feasibility of part
        RatVector t;
        bool ok = true;
        for (const auto& iq : ineqs)
            if (iq[e] < 0) ok = false;
        if (ok) verts.push_back(t);
    } else {
        enumerate(0);
    }

    if (verts.empty()) return true; // empty intersection is the empty common face
    if (common.empty()) return false;

    for (const auto& t : verts) {
        // x = a0 + U s with s from (part, dirs)
        RatVector x(r);
        std::vector<Rat> var(nvar);
        for (std::size_t v = 0; v < nvar; ++v) {
            var[v] = part[v];
            for (std::size_t f = 0; f < e; ++f) var[v] += dirs[f][v] * t[f];
        }
        for (std::size_t i = 0; i < r; ++i) {
            x[i] = Rat(a[0][i]);
            for (std::size_t j = 0; j < na; ++j) x[i] += var[j] * Rat(a[j + 1][i] - a[0][i]);
        }
        auto lam = barycentric(common, x);
        if (!lam) return false;
        for (const auto& l : *lam)
            if (l < 0) return false;
    }
    return true;
}

} // namespace

bool is_valid(const Triangulation& t) {
    if (t.simplices.empty() || t.points.empty()) return false;
    for (const auto& s : t.simplices) {
        if (s.empty()) return false;
        for (std::size_t i : s)
            if (i >= t.points.size()) return false;
    }
    LatticePolytope hull = convex_hull(t.points);
    const long d = hull.dim();
    const std::size_t ssize = t.simplices[0].size();
    for (const auto& s : t.simplices)
        if (s.size() != ssize) return false;

    bool boundary_mode;
    if (ssize == std::size_t(d) + 1) {
        boundary_mode = false;
    } else if (ssize == std::size_t(d) && hull.full_dimensional() && hull.origin_interior()) {
        boundary_mode = true;
    } else {
        return false;
    }

    // affine independence
    for (const auto& s : t.simplices) {
        std::vector<IntVector> diffs;
        for (std::size_t i = 1; i < s.size(); ++i)
            diffs.push_back(sub(t.points[s[i]], t.points[s[0]]));
        if (rank(IntMatrix::from_rows(diffs)) != diffs.size()) return false;
    }

    // covering by exact volume
    Int total = 0;
    if (boundary_mode) {
        for (const auto& s : t.simplices) {
            IntMatrix m(ssize, ssize);
            for (std::size_t i = 0; i < ssize; ++i)
                for (std::size_t j = 0; j < ssize; ++j) m.at(i, j) = t.points[s[i]][j];
            total += abs(determinant(m));
        }
    } else {
        AffineChart chart = affine_chart(hull.vertices());
        for (const auto& s : t.simplices) {
            IntMatrix m(ssize - 1, chart.basis.size());
            IntVector base = chart.to_chart(t.points[s[0]]);
            for (std::size_t i = 1; i < ssize; ++i) {
                IntVector c = sub(chart.to_chart(t.points[s[i]]), base);
                for (std::size_t j = 0; j < c.size(); ++j) m.at(i - 1, j) = c[j];
            }
            total += abs(determinant(m));
        }
    }
    if (total != normalized_volume(hull)) return false;

    // pairwise intersections are common faces
    for (std::size_t i = 0; i < t.simplices.size(); ++i)
        for (std::size_t j = i + 1; j < t.simplices.size(); ++j) {
            std::vector<IntVector> a, b;
            for (std::size_t v : t.simplices[i]) a.push_back(t.points[v]);
            for (std::size_t v : t.simplices[j]) b.push_back(t.points[v]);
            if (!proper_pair(a, b)) return false;
        }
    return true;
}

bool is_unimodular(const Triangulation& t) {
    LatticePolytope hull = convex_hull(t.points);
    if (!hull.full_dimensional() || !hull.origin_interior()) return false;
    const std::size_t r = hull.rank();
    for (const auto& s : t.simplices) {
        if (s.size() != r) return false;
        IntMatrix m(r, r);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j) m.at(i, j) = t.points[s[i]][j];
        Int d = determinant(m);
        if (d != 1 && d != -1) return false;
    }
    return true;
}

std::vector<RidgeLink> ridge_links(const Triangulation& t) {
    std::map<std::vector<std::size_t>, std::vector<std::size_t>> inc;
    for (std::size_t si = 0; si < t.simplices.size(); ++si) {
        const auto& s = t.simplices[si];
        for (std::size_t omit = 0; omit < s.size(); ++omit) {
            std::vector<std::size_t> ridge;
            for (std::size_t i = 0; i < s.size(); ++i)
                if (i != omit) ridge.push_back(s[i]);
            inc[ridge].push_back(si);
        }
    }
    std::vector<RidgeLink> out;
    for (const auto& [ridge, ss] : inc) {
        if (ss.size() > 2) throw StructureError("ridge_links: ridge with more than two simplices");
        RidgeLink l;
        l.ridge = ridge;
        l.simplex_a = ss[0];
        l.simplex_b = ss.size() == 2 ? ss[1] : ss[0];
        l.interior = ss.size() == 2;
        out.push_back(std::move(l));
    }
    return out;
}

std::vector<std::vector<std::size_t>> simplices_on_hyperplane(const Triangulation& t,
                                                              const IntVector& normal,
                                                              const Int& offset) {
    std::vector<std::vector<std::size_t>> out;
    for (const auto& s : t.simplices) {
        bool on = true;
        for (std::size_t i : s)
            if (dot(normal, t.points[i]) != offset) {
                on = false;
                break;
            }
        if (on) out.push_back(s);
    }
    return out;
}

} // namespace topskit
