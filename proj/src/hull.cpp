#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "topskit/polytope.hpp"

namespace topskit {

namespace {

// Normal n to the hyperplane spanned by rows[1..]-rows[0], via the generalized
// cross product: n . w = det([rows[1]-rows[0]; ...; rows[r-1]-rows[0]; w - rows[0]]).
IntVector hyperplane_normal(const std::vector<IntVector>& pts) {
    const std::size_t r = pts[0].size();
    std::vector<IntVector> diffs;
    for (std::size_t i = 1; i < pts.size(); ++i) diffs.push_back(sub(pts[i], pts[0]));
    IntVector n(r, Int(0));
    // n_j = det of diffs with column j replaced by e_j contribution, i.e. the
    // signed (r-1)x(r-1) minor omitting column j.
    for (std::size_t j = 0; j < r; ++j) {
        IntMatrix minor(r - 1, r - 1);
        for (std::size_t i = 0; i < r - 1; ++i) {
            std::size_t cc = 0;
            for (std::size_t c = 0; c < r; ++c) {
                if (c == j) continue;
                minor.at(i, cc++) = diffs[i][c];
            }
        }
        Int d = determinant(minor);
        n[j] = ((r - 1 + j) % 2 == 0) ? d : -d;
    }
    return n;
}

struct SimplicialFacet {
    IntVector normal; // primitive, inward
    Int offset;
    std::vector<std::size_t> verts; // r point indices, sorted
    bool alive = true;
};

} // namespace

bool LatticePolytope::contains(const IntVector& p) const {
    if (dim_ < 0) return false;
    if (full_dimensional()) {
        for (const auto& f : facets_)
            if (dot(f.normal, p) < f.offset) return false;
        return true;
    }
    RatVector q(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) q[i] = Rat(p[i]);
    return contains(q);
}

bool LatticePolytope::contains(const RatVector& p) const {
    if (dim_ < 0) return false;
    if (full_dimensional()) {
        for (const auto& f : facets_) {
            Rat s(0);
            for (std::size_t i = 0; i < p.size(); ++i) s += Rat(f.normal[i]) * p[i];
            if (s < Rat(f.offset)) return false;
        }
        return true;
    }
    // Lower-dimensional: exact membership via Caratheodory over vertex subsets.
    const std::size_t r = rank_;
    std::vector<std::size_t> idx(vertices_.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    const std::size_t k = std::size_t(dim_) + 1;
    std::vector<std::size_t> comb(k);
    std::function<bool(std::size_t, std::size_t)> rec = [&](std::size_t start,
                                                            std::size_t depth) -> bool {
        if (depth == k) {
            // solve barycentric coords: sum l_i v_i = p, sum l_i = 1, l_i >= 0
            std::vector<std::vector<Rat>> m(r + 1, std::vector<Rat>(k + 1));
            for (std::size_t i = 0; i < r; ++i) {
                for (std::size_t j = 0; j < k; ++j) m[i][j] = Rat(vertices_[comb[j]][i]);
                m[i][k] = p[i];
            }
            for (std::size_t j = 0; j < k; ++j) m[r][j] = 1;
            m[r][k] = 1;
            // Gaussian elimination; consistent + nonnegative solution?
            std::size_t rr = 0;
            std::vector<long> pivot_col(r + 1, -1);
            for (std::size_t c = 0; c < k && rr < r + 1; ++c) {
                std::size_t pv = rr;
                while (pv < r + 1 && m[pv][c] == 0) ++pv;
                if (pv == r + 1) continue;
                std::swap(m[rr], m[pv]);
                for (std::size_t i = 0; i < r + 1; ++i) {
                    if (i == rr || m[i][c] == 0) continue;
                    Rat f = m[i][c] / m[rr][c];
                    for (std::size_t j = c; j <= k; ++j) m[i][j] -= f * m[rr][j];
                }
                pivot_col[rr] = long(c);
                ++rr;
            }
            for (std::size_t i = rr; i < r + 1; ++i)
                if (m[i][k] != 0) return false; // inconsistent
            std::vector<Rat> lam(k, Rat(0));
            for (std::size_t i = 0; i < rr; ++i)
                lam[std::size_t(pivot_col[i])] = m[i][k] / m[i][pivot_col[i]];
            for (const auto& l : lam)
                if (l < 0) return false;
            return true;
        }
        for (std::size_t i = start; i + (k - depth) <= idx.size(); ++i) {
            comb[depth] = idx[i];
            if (rec(i + 1, depth + 1)) return true;
        }
        return false;
    };
    return rec(0, 0);
}

bool LatticePolytope::strictly_contains(const IntVector& p) const {
    if (!full_dimensional()) return false;
    for (const auto& f : facets_)
        if (dot(f.normal, p) <= f.offset) return false;
    return true;
}

bool LatticePolytope::origin_interior() const {
    if (!full_dimensional()) return false;
    for (const auto& f : facets_)
        if (f.offset >= 0) return false;
    return true;
}

AffineChart affine_chart(const std::vector<IntVector>& points) {
    if (points.empty()) throw ArgumentError("affine_chart: empty point set");
    AffineChart ch;
    ch.origin = points[0];
    std::vector<IntVector> diffs;
    for (std::size_t i = 1; i < points.size(); ++i) diffs.push_back(sub(points[i], ch.origin));
    if (diffs.empty()) return ch;
    IntMatrix m = IntMatrix::from_rows(diffs);
    SnfDecomposition s = smith_normal_form(m);
    std::size_t r = 0;
    for (std::size_t i = 0; i < s.diag.size(); ++i)
        if (s.diag[i] != 0) ++r;
    for (std::size_t i = 0; i < r; ++i) ch.basis.push_back(s.v.row(i));
    return ch;
}

IntVector AffineChart::to_chart(const IntVector& ambient) const {
    // solve c with ambient - origin = sum c_i basis_i; basis spans the saturated
    // lattice so integral coordinates exist for lattice points of the hull.
    IntVector d = sub(ambient, origin);
    const std::size_t r = basis.size();
    if (r == 0) {
        if (!is_zero(d)) throw ArgumentError("to_chart: point outside affine hull");
        return {};
    }
    // Solve the full-rank system via rational elimination on basis^T c = d.
    const std::size_t n = origin.size();
    std::vector<std::vector<Rat>> m(n, std::vector<Rat>(r + 1));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < r; ++j) m[i][j] = Rat(basis[j][i]);
        m[i][r] = Rat(d[i]);
    }
    std::size_t rr = 0;
    std::vector<long> pivot_col(n, -1);
    for (std::size_t c = 0; c < r && rr < n; ++c) {
        std::size_t pv = rr;
        while (pv < n && m[pv][c] == 0) ++pv;
        if (pv == n) continue;
        std::swap(m[rr], m[pv]);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == rr || m[i][c] == 0) continue;
            Rat f = m[i][c] / m[rr][c];
            for (std::size_t j = c; j <= r; ++j) m[i][j] -= f * m[rr][j];
        }
        pivot_col[rr] = long(c);
        ++rr;
    }
    for (std::size_t i = rr; i < n; ++i)
        if (m[i][r] != 0) throw ArgumentError("to_chart: point outside affine hull");
    IntVector c(r, Int(0));
    for (std::size_t i = 0; i < rr; ++i) {
        Rat v = m[i][r] / m[i][std::size_t(pivot_col[i])];
        v.canonicalize();
        if (v.get_den() != 1) throw ArgumentError("to_chart: non-integral chart coordinate");
        c[std::size_t(pivot_col[i])] = v.get_num();
    }
    return c;
}

IntVector AffineChart::to_ambient(const IntVector& chart) const {
    IntVector p = origin;
    for (std::size_t i = 0; i < basis.size(); ++i) p = add(p, scale(basis[i], chart[i]));
    return p;
}

LatticePolytope convex_hull(const std::vector<IntVector>& points) {
    if (points.empty()) throw ArgumentError("convex_hull: empty point set");
    const std::size_t rank = points[0].size();
    for (const auto& p : points)
        if (p.size() != rank) throw ArgumentError("convex_hull: mixed ranks");

    std::vector<IntVector> pts = points;
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    LatticePolytope poly;
    poly.rank_ = rank;

    // Affine dimension via a greedy independent subset.
    std::vector<std::size_t> simplex = {0};
    std::vector<IntVector> diffs;
    for (std::size_t i = 1; i < pts.size() && diffs.size() < rank; ++i) {
        diffs.push_back(sub(pts[i], pts[0]));
        if (topskit::rank(IntMatrix::from_rows(diffs)) == diffs.size()) {
            simplex.push_back(i);
        } else {
            diffs.pop_back();
        }
    }
    const std::size_t afr = diffs.size();
    poly.dim_ = long(afr);

    if (afr == 0) {
        poly.vertices_ = {pts[0]};
        return poly;
    }
    if (afr < rank) {
        // Lower-dimensional: hull in chart coordinates, vertices mapped back.
        std::vector<IntVector> chosen;
        for (std::size_t i : simplex) chosen.push_back(pts[i]);
        AffineChart ch = affine_chart(chosen);
        std::vector<IntVector> local;
        local.reserve(pts.size());
        for (const auto& p : pts) local.push_back(ch.to_chart(p));
        LatticePolytope inner = convex_hull(local);
        poly.vertices_.clear();
        for (const auto& v : inner.vertices()) poly.vertices_.push_back(ch.to_ambient(v));
        std::sort(poly.vertices_.begin(), poly.vertices_.end());
        return poly;
    }

    const std::size_t r = rank;
    std::vector<SimplicialFacet> fs;
    // Interior reference: sum of the initial simplex corners (divide by r+1 implicitly).
    IntVector inner(r, Int(0));
    for (std::size_t i : simplex) inner = add(inner, pts[i]);
    const Int inner_den = Int(r + 1);

    auto make_facet = [&](std::vector<std::size_t> vids) -> SimplicialFacet {
        std::vector<IntVector> fp;
        for (std::size_t id : vids) fp.push_back(pts[id]);
        IntVector n = primitive(hyperplane_normal(fp));
        Int c = dot(n, fp[0]);
        // orient inward: inner/(r+1) strictly satisfies n.x > c
        if (dot(n, inner) < c * inner_den) {
            n = negate(n);
            c = -c;
        } else if (dot(n, inner) == c * inner_den) {
            throw Error("convex_hull: degenerate interior reference");
        }
        std::sort(vids.begin(), vids.end());
        return SimplicialFacet{std::move(n), std::move(c), std::move(vids), true};
    };

    for (std::size_t omit = 0; omit < simplex.size(); ++omit) {
        std::vector<std::size_t> vids;
        for (std::size_t i = 0; i < simplex.size(); ++i)
            if (i != omit) vids.push_back(simplex[i]);
        fs.push_back(make_facet(vids));
    }

    std::set<std::size_t> in_simplex(simplex.begin(), simplex.end());
    for (std::size_t pi = 0; pi < pts.size(); ++pi) {
        if (in_simplex.count(pi)) continue;
        const IntVector& p = pts[pi];
        std::vector<std::size_t> visible;
        for (std::size_t f = 0; f < fs.size(); ++f)
            if (fs[f].alive && dot(fs[f].normal, p) < fs[f].offset) visible.push_back(f);
        if (visible.empty()) continue; // inside or on the boundary of the current hull

        std::set<std::size_t> vis(visible.begin(), visible.end());
        // ridge -> incident alive facets
        std::map<std::vector<std::size_t>, std::vector<std::size_t>> ridges;
        for (std::size_t f = 0; f < fs.size(); ++f) {
            if (!fs[f].alive) continue;
            const auto& vv = fs[f].verts;
            for (std::size_t omit = 0; omit < vv.size(); ++omit) {
                std::vector<std::size_t> ridge;
                for (std::size_t i = 0; i < vv.size(); ++i)
                    if (i != omit) ridge.push_back(vv[i]);
                ridges[ridge].push_back(f);
            }
        }
        std::vector<std::vector<std::size_t>> horizon;
        for (const auto& [ridge, inc] : ridges) {
            if (inc.size() != 2) throw Error("convex_hull: open ridge in facet surface");
            bool v0 = vis.count(inc[0]) > 0, v1 = vis.count(inc[1]) > 0;
            if (v0 != v1) horizon.push_back(ridge);
        }
        for (std::size_t f : visible) fs[f].alive = false;
        for (auto ridge : horizon) {
            ridge.push_back(pi);
            fs.push_back(make_facet(std::move(ridge)));
        }
    }

    // Group simplicial pieces into true facets and extract true vertices.
    std::map<std::pair<IntVector, Int>, std::set<std::size_t>> groups;
    for (const auto& f : fs) {
        if (!f.alive) continue;
        auto& g = groups[{f.normal, f.offset}];
        g.insert(f.verts.begin(), f.verts.end());
    }
    std::set<std::size_t> used;
    for (const auto& [key, g] : groups) used.insert(g.begin(), g.end());

    std::vector<IntVector> final_verts;
    for (std::size_t id : used) {
        std::vector<IntVector> tight_normals;
        for (const auto& [key, g] : groups)
            if (dot(key.first, pts[id]) == key.second) tight_normals.push_back(key.first);
        if (topskit::rank(IntMatrix::from_rows(tight_normals)) == r)
            final_verts.push_back(pts[id]);
    }
    std::sort(final_verts.begin(), final_verts.end());
    poly.vertices_ = final_verts;

    for (const auto& [key, g] : groups) {
        Facet fac;
        fac.normal = key.first;
        fac.offset = key.second;
        for (std::size_t vi = 0; vi < final_verts.size(); ++vi)
            if (dot(fac.normal, final_verts[vi]) == fac.offset) fac.vertex_indices.push_back(vi);
        poly.facets_.push_back(std::move(fac));
    }
    std::sort(poly.facets_.begin(), poly.facets_.end(),
              [](const Facet& a, const Facet& b) {
                  return std::tie(a.normal, a.offset) < std::tie(b.normal, b.offset);
              });
    return poly;
}

std::pair<LatticePolytope, AffineChart> restricted(const LatticePolytope& p) {
    AffineChart ch = affine_chart(p.vertices());
    std::vector<IntVector> local;
    for (const auto& v : p.vertices()) local.push_back(ch.to_chart(v));
    return {convex_hull(local), ch};
}

std::vector<IntVector> lattice_points(const LatticePolytope& p) {
    if (p.dim() < 0) return {};
    if (!p.full_dimensional()) {
        auto [inner, ch] = restricted(p);
        std::vector<IntVector> out;
        for (const auto& q : lattice_points(inner)) out.push_back(ch.to_ambient(q));
        std::sort(out.begin(), out.end());
        return out;
    }
    const std::size_t r = p.rank();
    IntVector lo = p.vertices()[0], hi = p.vertices()[0];
    for (const auto& v : p.vertices())
        for (std::size_t i = 0; i < r; ++i) {
            if (v[i] < lo[i]) lo[i] = v[i];
            if (v[i] > hi[i]) hi[i] = v[i];
        }
    std::vector<IntVector> out;
    IntVector cur = lo;
    for (;;) {
        if (p.contains(cur)) out.push_back(cur);
        std::size_t i = 0;
        while (i < r) {
            ++cur[i];
            if (cur[i] <= hi[i]) break;
            cur[i] = lo[i];
            ++i;
        }
        if (i == r) break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<IntVector> boundary_lattice_points(const LatticePolytope& p) {
    std::vector<IntVector> out;
    for (const auto& q : lattice_points(p))
        if (!p.strictly_contains(q)) out.push_back(q);
    return out;
}

std::vector<IntVector> interior_lattice_points(const LatticePolytope& p) {
    std::vector<IntVector> out;
    for (const auto& q : lattice_points(p))
        if (p.strictly_contains(q)) out.push_back(q);
    return out;
}

Int normalized_volume(const LatticePolytope& p) {
    if (p.dim() <= 0) return p.dim() == 0 ? Int(1) : Int(0);
    LatticePolytope q = p;
    if (!p.full_dimensional()) q = restricted(p).first;
    if (q.dim() == 1) {
        return abs(q.vertices()[1][0] - q.vertices()[0][0]);
    }
    const IntVector& v0 = q.vertices()[0];
    Int total = 0;
    for (const auto& f : q.facets()) {
        Int dist = dot(f.normal, v0) - f.offset;
        if (dist == 0) continue;
        std::vector<IntVector> fverts;
        for (std::size_t i : f.vertex_indices) fverts.push_back(q.vertices()[i]);
        total += dist * normalized_volume(convex_hull(fverts));
    }
    return total;
}

} // namespace topskit
