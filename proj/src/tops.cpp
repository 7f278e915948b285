#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "topskit/tops.hpp"

namespace topskit {

LinForm& LinForm::operator+=(const LinForm& o) {
    constant += o.constant;
    for (const auto& [i, c] : o.coeffs) {
        coeffs[i] += c;
        if (coeffs[i] == 0) coeffs.erase(i);
    }
    return *this;
}

LinForm& LinForm::operator-=(const LinForm& o) {
    constant -= o.constant;
    for (const auto& [i, c] : o.coeffs) {
        coeffs[i] -= c;
        if (coeffs[i] == 0) coeffs.erase(i);
    }
    return *this;
}

LinForm LinForm::operator*(const Int& s) const {
    LinForm r;
    if (s == 0) return r;
    r.constant = constant * s;
    for (const auto& [i, c] : coeffs) r.coeffs[i] = c * s;
    return r;
}

Int LinForm::evaluate(const std::vector<Int>& params) const {
    Int v = constant;
    for (const auto& [i, c] : coeffs) {
        if (i >= params.size()) throw ArgumentError("LinForm: parameter out of range");
        v += c * params[i];
    }
    return v;
}

bool LinForm::is_zero() const { return constant == 0 && coeffs.empty(); }

std::string LinForm::str() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [i, c] : coeffs) {
        if (!first && c > 0) os << "+";
        if (c == -1)
            os << "-";
        else if (c != 1)
            os << c.get_str() << "*";
        os << "a" << (i + 1);
        first = false;
    }
    if (constant != 0 || first) {
        if (!first && constant > 0) os << "+";
        os << constant.get_str();
    }
    return os.str();
}

QPolytope slice_polytope(const LatticePolytope& p, const IntVector& normal, const Int& c) {
    if (!p.full_dimensional()) throw DomainError("slice_polytope: not full-dimensional");
    QPolytope q;
    q.rank = p.rank();
    std::set<RatVector> verts;
    for (const auto& v : p.vertices())
        if (dot(normal, v) == c) {
            RatVector x(v.size());
            for (std::size_t i = 0; i < v.size(); ++i) x[i] = Rat(v[i]);
            verts.insert(std::move(x));
        }
    for (const auto& e : faces(p, 1)) {
        const IntVector& a = p.vertices()[e.vertex_indices[0]];
        const IntVector& b = p.vertices()[e.vertex_indices[1]];
        Int da = dot(normal, a) - c, db = dot(normal, b) - c;
        if ((da < 0 && db > 0) || (da > 0 && db < 0)) {
            // a + da/(da-db) (b-a)
            Rat t(da, da - db);
            t.canonicalize();
            RatVector x(a.size());
            for (std::size_t i = 0; i < a.size(); ++i) x[i] = Rat(a[i]) + t * Rat(b[i] - a[i]);
            verts.insert(std::move(x));
        }
    }
    q.vertices.assign(verts.begin(), verts.end());
    return q;
}

namespace {

// p truncated to the side normal.x >= c, as a rational polytope.
QPolytope truncate_polytope(const LatticePolytope& p, const IntVector& normal, const Int& c) {
    QPolytope q;
    q.rank = p.rank();
    std::set<RatVector> verts;
    for (const auto& v : p.vertices())
        if (dot(normal, v) >= c) {
            RatVector x(v.size());
            for (std::size_t i = 0; i < v.size(); ++i) x[i] = Rat(v[i]);
            verts.insert(std::move(x));
        }
    for (const auto& e : faces(p, 1)) {
        const IntVector& a = p.vertices()[e.vertex_indices[0]];
        const IntVector& b = p.vertices()[e.vertex_indices[1]];
        Int da = dot(normal, a) - c, db = dot(normal, b) - c;
        if ((da < 0 && db > 0) || (da > 0 && db < 0)) {
            Rat t(da, da - db);
            t.canonicalize();
            RatVector x(a.size());
            for (std::size_t i = 0; i < a.size(); ++i) x[i] = Rat(a[i]) + t * Rat(b[i] - a[i]);
            verts.insert(std::move(x));
        }
    }
    q.vertices.assign(verts.begin(), verts.end());
    return q;
}

LatticePolytope apply_unimodular(const LatticePolytope& p, const IntMatrix& u) {
    std::vector<IntVector> vs;
    for (const auto& v : p.vertices()) vs.push_back(multiply(u, v));
    return convex_hull(vs);
}

LatticePolytope drop_last_coordinate(const std::vector<IntVector>& pts) {
    std::vector<IntVector> out;
    for (const auto& p : pts) out.push_back(IntVector(p.begin(), p.end() - 1));
    return convex_hull(out);
}

} // namespace

std::optional<Top> is_top(const LatticePolytope& p) {
    if (!p.full_dimensional()) return std::nullopt;
    const std::size_t k = p.rank();
    const Facet* boundary_facet = nullptr;
    for (const auto& f : p.facets()) {
        if (f.offset == 0) {
            if (boundary_facet) return std::nullopt; // two facets through the origin
            boundary_facet = &f;
        } else if (f.offset != -1) {
            return std::nullopt;
        }
    }
    if (!boundary_facet) return std::nullopt;
    if (!p.contains(IntVector(k, Int(0)))) return std::nullopt;

    IntVector ek_inward(k, Int(0));
    ek_inward[k - 1] = 1;
    LatticePolytope q = boundary_facet->normal == ek_inward
                            ? p
                            : apply_unimodular(p, unimodular_with_last_row(boundary_facet->normal));

    Top t;
    std::vector<IntVector> base_pts;
    for (const auto& v : q.vertices())
        if (v.back() == 0) base_pts.push_back(v);
    if (base_pts.size() < k) return std::nullopt;
    t.reflexive_boundary = drop_last_coordinate(base_pts);
    if (!is_reflexive(t.reflexive_boundary)) return std::nullopt;

    t.summit_hull = truncate_polytope(q, ek_inward, Int(1));
    t.all_lattice_points = lattice_points(q);
    t.polytope = std::move(q);
    for (const auto& x : t.all_lattice_points)
        if (x.back() >= 1) t.summit_lattice_points.push_back(x);
    if (t.summit_lattice_points.empty()) return std::nullopt;
    return t;
}

bool is_short_top(const Top& t) {
    bool by_points = true;
    for (const auto& x : t.summit_lattice_points)
        if (x.back() != 1) by_points = false;
    // dual criterion: (0,...,0,-1) in the polar, i.e. every vertex height <= 1
    bool by_dual = true;
    for (const auto& v : t.polytope.vertices())
        if (v.back() > 1) by_dual = false;
    if (by_points != by_dual) throw Error("is_short_top: primary and dual criteria disagree");
    return by_points;
}

DualTop dual_top_of(const Top& t) {
    if (!is_short_top(t)) throw DomainError("dual_top_of: top is not short");
    const std::size_t k = t.rank();
    DualTop d;
    d.base = polar(t.reflexive_boundary).to_lattice();

    std::vector<IntVector> summit_vertices;
    for (const auto& v : t.polytope.vertices())
        if (v.back() == 1) summit_vertices.push_back(v);

    for (const auto& v : lattice_points(d.base)) {
        Int a;
        bool first = true;
        for (const auto& s : summit_vertices) {
            Int bound = -1 - dot(IntVector(s.begin(), s.end() - 1), v);
            if (first || bound > a) a = bound;
            first = false;
        }
        d.heights[v] = a;
    }
    for (const auto& s : summit_vertices) {
        DualTopFacet f;
        f.normal = s;
        for (const auto& [v, a] : d.heights) {
            IntVector lift = v;
            lift.push_back(a);
            if (dot(s, lift) == -1) f.tight_points.push_back(lift);
        }
        d.bounded_facets.push_back(std::move(f));
    }
    (void)k;
    return d;
}

std::pair<bool, std::optional<IntVector>> facet_divisibility(const IntMatrix& facet_vertices,
                                                             const IntVector& heights) {
    if (facet_vertices.rows() != facet_vertices.cols() ||
        facet_vertices.rows() != heights.size())
        throw DimensionError("facet_divisibility: shape mismatch");
    if (determinant(facet_vertices) == 0)
        throw SingularError("facet_divisibility: degenerate facet");
    IntVector abar(heights.size());
    for (std::size_t i = 0; i < heights.size(); ++i) abar[i] = heights[i] + 1;
    auto x = solve_unimodular_system(facet_vertices, abar);
    if (!x) return {false, std::nullopt};
    // The facet hyperplane is x.y = -1 through the lifted vertices and
    // (0,...,0,-1), which forces x = (-B^{-1}(a+1), 1): row_i . x' + a_i = -1.
    IntVector normal = negate(*x);
    normal.push_back(Int(1));
    return {true, normal};
}

namespace {

// Symbolic orientation determinant for one ridge: rows are the k lifted points
// [coords | height | 1] followed by [0 | -1 | 1], expanded along the height
// column; normalized so that raising the opposite vertex increases the form.
LinForm ridge_form(const std::vector<IntVector>& pts, const std::vector<LinForm>& hts,
                   std::size_t opposite_row) {
    const std::size_t n = pts.size() + 1; // plus the w row
    const std::size_t dim = pts[0].size();
    // assemble rows of the minor skeleton [coords | 1]
    std::vector<IntVector> skel;
    for (const auto& p : pts) {
        IntVector r = p;
        r.push_back(Int(1));
        skel.push_back(std::move(r));
    }
    IntVector wrow(dim, Int(0));
    wrow.push_back(Int(1));
    skel.push_back(wrow);

    std::vector<LinForm> heights = hts;
    heights.push_back(LinForm::constant_form(Int(-1))); // w height

    LinForm d;
    std::vector<Int> cof(n);
    for (std::size_t i = 0; i < n; ++i) {
        IntMatrix minor(n - 1, dim + 1);
        std::size_t rr = 0;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == i) continue;
            for (std::size_t c = 0; c <= dim; ++c) minor.at(rr, c) = skel[r][c];
            ++rr;
        }
        Int m = determinant(minor);
        // cofactor sign for entry (i, dim) in an n x n matrix with n = dim + 2
        cof[i] = ((i + dim) % 2 == 0) ? m : -m;
        d += heights[i] * cof[i];
    }
    if (cof[opposite_row] == 0) throw StructureError("ridge_form: degenerate ridge");
    if (cof[opposite_row] < 0) d = d * Int(-1);
    return d;
}

std::vector<IntVector> simplex_points(const Triangulation& t, const std::vector<std::size_t>& s) {
    std::vector<IntVector> out;
    for (std::size_t i : s) out.push_back(t.points[i]);
    return out;
}

} // namespace

TopFamily build_short_top_family(const LatticePolytope& base, const Triangulation& t) {
    if (!is_reflexive(base)) throw DomainError("build_short_top_family: base not reflexive");
    const std::size_t k = base.rank() + 1;

    TopFamily fam;
    fam.base = base;
    fam.triangulation = t;
    fam.k = k;

    const IntVector origin(base.rank(), Int(0));
    bool have_origin = false;
    for (std::size_t i = 0; i < t.points.size(); ++i)
        if (t.points[i] == origin) {
            fam.origin_index = i;
            have_origin = true;
        }
    if (!have_origin)
        throw ArgumentError("build_short_top_family: origin missing from the point pool");

    for (const auto& s : t.simplices) {
        if (s.size() != k - 1)
            throw ArgumentError("build_short_top_family: not a boundary triangulation");
        for (std::size_t i : s)
            if (i == fam.origin_index)
                throw ArgumentError("build_short_top_family: simplex uses the origin");
    }
    {
        LatticePolytope hull = convex_hull(t.points);
        if (hull.vertices() != base.vertices())
            throw ArgumentError("build_short_top_family: triangulation does not match base");
    }
    if (!is_valid(t)) throw ArgumentError("build_short_top_family: invalid triangulation");
    if (t.has_certificate()) {
        if (!certificate_projects(t))
            throw ArgumentError("build_short_top_family: height certificate does not reproject");
    } else if (!is_regular(t)) {
        throw ArgumentError("build_short_top_family: triangulation is not regular");
    }

    // Gauge: the lexicographically least facet of the triangulation is pinned.
    std::size_t pinned = 0;
    std::vector<IntVector> best;
    for (std::size_t si = 0; si < t.simplices.size(); ++si) {
        auto pts = simplex_points(t, t.simplices[si]);
        std::sort(pts.begin(), pts.end());
        if (si == 0 || pts < best) {
            best = pts;
            pinned = si;
        }
    }
    fam.pinned_points = t.simplices[pinned];

    fam.height_forms.assign(t.points.size(), LinForm{});
    std::set<std::size_t> pinned_set(fam.pinned_points.begin(), fam.pinned_points.end());
    for (std::size_t i = 0; i < t.points.size(); ++i) {
        if (i == fam.origin_index || pinned_set.count(i)) {
            fam.height_forms[i] = LinForm::constant_form(Int(-1));
        } else {
            fam.height_forms[i] = LinForm::parameter(fam.free_points.size());
            fam.free_points.push_back(i);
        }
    }

    // One divisibility record per facet of the triangulation.
    for (std::size_t si = 0; si < t.simplices.size(); ++si) {
        const auto& s = t.simplices[si];
        IntMatrix b(k - 1, k - 1);
        for (std::size_t i = 0; i < k - 1; ++i)
            for (std::size_t j = 0; j < k - 1; ++j) b.at(i, j) = t.points[s[i]][j];
        if (determinant(b) == 0)
            throw StructureError("build_short_top_family: facet through the origin");
        auto snf = smith_normal_form(b);
        DivisibilityCondition cond;
        cond.facet_id = si;
        cond.moduli = snf.diag;
        for (std::size_t i = 0; i < k - 1; ++i) {
            LinForm row;
            for (std::size_t j = 0; j < k - 1; ++j) {
                LinForm abar = fam.height_forms[s[j]];
                abar += LinForm::constant_form(Int(1));
                row += abar * snf.u_inv.at(i, j);
            }
            cond.forms.push_back(std::move(row));
        }
        fam.divisibility.push_back(std::move(cond));
    }

    // One convexity inequality per interior ridge.
    for (const auto& link : ridge_links(t)) {
        if (!link.interior) continue;
        ConvexityInequality ineq;
        ineq.ridge = link.ridge;
        ineq.facet_a = link.simplex_a;
        ineq.facet_b = link.simplex_b;

        std::vector<std::size_t> rows = link.ridge;
        std::set<std::size_t> ridge_set(link.ridge.begin(), link.ridge.end());
        std::size_t extra_a = 0, extra_b = 0;
        for (std::size_t i : t.simplices[link.simplex_a])
            if (!ridge_set.count(i)) extra_a = i;
        for (std::size_t i : t.simplices[link.simplex_b])
            if (!ridge_set.count(i)) extra_b = i;
        rows.push_back(extra_a);
        rows.push_back(extra_b);

        std::vector<IntVector> pts;
        std::vector<LinForm> hts;
        for (std::size_t i : rows) {
            pts.push_back(t.points[i]);
            hts.push_back(fam.height_forms[i]);
        }
        ineq.form = ridge_form(pts, hts, rows.size() - 1);
        fam.convexity.push_back(std::move(ineq));
    }

    // The all-(-1) assignment satisfies every divisibility condition.
    std::vector<Int> all_minus_one(fam.free_points.size(), Int(-1));
    for (const auto& cond : fam.divisibility)
        for (const auto& form : cond.forms)
            if (form.evaluate(all_minus_one) != 0)
                throw Error("build_short_top_family: all-(-1) gauge check failed");
    return fam;
}

LinForm ridge_convexity_form(const TopFamily& family, const ConvexityInequality& ridge) {
    const Triangulation& t = family.triangulation;
    std::set<std::size_t> ridge_set(ridge.ridge.begin(), ridge.ridge.end());
    std::size_t extra_a = 0, extra_b = 0;
    bool found_a = false, found_b = false;
    for (std::size_t i : t.simplices.at(ridge.facet_a))
        if (!ridge_set.count(i)) {
            extra_a = i;
            found_a = true;
        }
    for (std::size_t i : t.simplices.at(ridge.facet_b))
        if (!ridge_set.count(i)) {
            extra_b = i;
            found_b = true;
        }
    if (!found_a || !found_b)
        throw StructureError("ridge_convexity_form: ridge does not separate two facets");
    std::vector<std::size_t> rows = ridge.ridge;
    rows.push_back(extra_a);
    rows.push_back(extra_b);
    std::vector<IntVector> pts;
    std::vector<LinForm> hts;
    for (std::size_t i : rows) {
        pts.push_back(t.points[i]);
        hts.push_back(family.height_forms[i]);
    }
    return ridge_form(pts, hts, rows.size() - 1);
}

std::pair<DualTop, Top> instantiate(const TopFamily& f, const ParameterAssignment& s) {
    if (s.values.size() != f.parameter_count())
        throw ArgumentError("instantiate: wrong number of parameters");

    for (const auto& cond : f.divisibility)
        for (std::size_t i = 0; i < cond.forms.size(); ++i) {
            Int v = cond.forms[i].evaluate(s.values);
            const Int& d = cond.moduli[i];
            bool ok = (d == 0) ? (v == 0) : mpz_divisible_p(v.get_mpz_t(), d.get_mpz_t());
            if (!ok) {
                std::ostringstream os;
                os << "instantiate: divisibility violated at facet " << cond.facet_id << ": "
                   << d.get_str() << " does not divide " << cond.forms[i].str() << " = "
                   << v.get_str();
                throw ConstraintError(os.str());
            }
        }
    for (std::size_t ri = 0; ri < f.convexity.size(); ++ri) {
        Int v = f.convexity[ri].form.evaluate(s.values);
        if (v < 0) {
            std::ostringstream os;
            os << "instantiate: convexity violated at ridge " << ri << ": "
               << f.convexity[ri].form.str() << " = " << v.get_str() << " < 0";
            throw ConstraintError(os.str());
        }
    }

    const Triangulation& t = f.triangulation;
    const std::size_t k = f.k;
    std::vector<Int> heights(t.points.size());
    for (std::size_t i = 0; i < t.points.size(); ++i)
        heights[i] = f.height_forms[i].evaluate(s.values);

    // Dual lattice point per facet; coplanar lifted facets share it.
    std::map<IntVector, std::set<std::size_t>> merged; // normal -> pool points on it
    for (const auto& simplex : t.simplices) {
        IntMatrix b(k - 1, k - 1);
        IntVector h(k - 1);
        for (std::size_t i = 0; i < k - 1; ++i) {
            for (std::size_t j = 0; j < k - 1; ++j) b.at(i, j) = t.points[simplex[i]][j];
            h[i] = heights[simplex[i]];
        }
        auto [ok, normal] = facet_divisibility(b, h);
        if (!ok) throw Error("instantiate: divisibility recheck failed");
        auto& pts = merged[*normal];
        for (std::size_t i : simplex) pts.insert(i);
    }

    DualTop dual;
    dual.base = f.base;
    for (std::size_t i = 0; i < t.points.size(); ++i)
        if (i != f.origin_index) dual.heights[t.points[i]] = heights[i];
    for (auto& [normal, pool_pts] : merged) {
        if (normal.back() != 1)
            throw Error("instantiate: bounded facet normal without height-1 last coordinate");
        DualTopFacet df;
        df.normal = normal;
        for (std::size_t i : pool_pts) {
            IntVector lift = t.points[i];
            lift.push_back(heights[i]);
            if (dot(normal, lift) != -1)
                throw Error("instantiate: lifted point misses its facet plane");
            df.tight_points.push_back(lift);
        }
        std::sort(df.tight_points.begin(), df.tight_points.end());
        // Lemma invariant: every bounded facet contains w = (0,...,0,-1).
        IntVector w(k, Int(0));
        w[k - 1] = -1;
        if (dot(normal, w) != -1) throw Error("instantiate: bounded facet misses w");
        dual.bounded_facets.push_back(std::move(df));
    }

    // Reconstruct the top: boundary polytope at height 0 plus the facet normals.
    LatticePolytope boundary = polar(f.base).to_lattice();
    std::vector<IntVector> top_pts;
    for (const auto& v : boundary.vertices()) {
        IntVector x = v;
        x.push_back(Int(0));
        top_pts.push_back(std::move(x));
    }
    for (const auto& bf : dual.bounded_facets) top_pts.push_back(bf.normal);
    auto top = is_top(convex_hull(top_pts));
    if (!top) throw Error("instantiate: reconstruction is not a top");
    if (!is_short_top(*top)) throw Error("instantiate: reconstruction is not short");

    // Round trip: the polar of the reconstructed top reproduces the heights.
    DualTop check = dual_top_of(*top);
    for (const auto& [v, a] : dual.heights) {
        auto it = check.heights.find(v);
        if (it == check.heights.end() || it->second != a)
            throw Error("instantiate: polar round trip does not reproduce heights");
    }
    return {std::move(dual), std::move(*top)};
}

std::pair<TopFamily, Top> classify_simplex_tops(std::size_t k) {
    if (k < 2 || k > 6) throw ArgumentError("classify_simplex_tops: k out of range");
    const std::size_t r = k - 1;
    std::vector<IntVector> verts;
    for (std::size_t i = 0; i < r; ++i) {
        IntVector e(r, Int(0));
        e[i] = 1;
        verts.push_back(std::move(e));
    }
    verts.push_back(IntVector(r, Int(-1)));
    LatticePolytope base = convex_hull(verts);
    Triangulation t = triangulate_boundary(base, BoundaryVariant::maximal);
    TopFamily fam = build_short_top_family(base, t);

    // Exceptional top: the boundary polytope at height 0 with the single summit
    // vertex (-1,...,-1,k).
    LatticePolytope boundary = polar(base).to_lattice();
    std::vector<IntVector> top_pts;
    for (const auto& v : boundary.vertices()) {
        IntVector x = v;
        x.push_back(Int(0));
        top_pts.push_back(std::move(x));
    }
    IntVector apex(k, Int(-1));
    apex[k - 1] = Int(k);
    top_pts.push_back(apex);
    auto top = is_top(convex_hull(top_pts));
    if (!top) throw Error("classify_simplex_tops: exceptional polytope is not a top");
    return {std::move(fam), std::move(*top)};
}

std::optional<SplitWitness> admits_case2_split(const LatticePolytope& base) {
    if (base.rank() != 3) throw ArgumentError("admits_case2_split: rank must be 3");
    if (!is_reflexive(base)) throw DomainError("admits_case2_split: base not reflexive");

    std::vector<IntVector> pts;
    for (const auto& x : lattice_points(base))
        if (!is_zero(x)) pts.push_back(x);

    std::set<IntVector> normals;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            IntVector c(3);
            c[0] = pts[i][1] * pts[j][2] - pts[i][2] * pts[j][1];
            c[1] = pts[i][2] * pts[j][0] - pts[i][0] * pts[j][2];
            c[2] = pts[i][0] * pts[j][1] - pts[i][1] * pts[j][0];
            if (is_zero(c)) continue;
            c = primitive(c);
            for (const auto& e : c) {
                if (e > 0) break;
                if (e < 0) {
                    c = negate(c);
                    break;
                }
            }
            normals.insert(c);
        }

    for (const auto& n : normals) {
        QPolytope slice = slice_polytope(base, n, Int(0));
        if (slice.vertices.size() < 3 || !slice.is_integral()) continue;
        // express in the hyperplane lattice and test reflexivity there
        AffineChart chart;
        chart.origin = IntVector(3, Int(0));
        chart.basis = hyperplane_lattice_basis(n);
        std::vector<IntVector> local;
        bool ok = true;
        for (const auto& v : slice.vertices) {
            IntVector x(3);
            for (std::size_t i = 0; i < 3; ++i) x[i] = v[i].get_num();
            try {
                local.push_back(chart.to_chart(x));
            } catch (const ArgumentError&) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        LatticePolytope polygon = convex_hull(local);
        if (!is_reflexive(polygon)) continue;
        return SplitWitness{n, polygon};
    }
    return std::nullopt;
}

std::optional<std::pair<IntVector, IntVector>> origin_interior_segment(
    const LatticePolytope& base) {
    std::vector<IntVector> pts;
    for (const auto& x : lattice_points(base))
        if (!is_zero(x)) pts.push_back(x);
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            // antiparallel: p x q = 0 with p.q < 0
            bool parallel = true;
            const IntVector &p = pts[i], &q = pts[j];
            for (std::size_t a = 0; a < p.size() && parallel; ++a)
                for (std::size_t b = a + 1; b < p.size(); ++b)
                    if (p[a] * q[b] != p[b] * q[a]) {
                        parallel = false;
                        break;
                    }
            if (parallel && dot(p, q) < 0) return std::make_pair(p, q);
        }
    return std::nullopt;
}

namespace {

// Vertex cycle of a 2-dimensional polytope (in chart coordinates).
std::vector<std::size_t> polygon_cycle(const LatticePolytope& poly2d) {
    auto edges = faces(poly2d, 1);
    std::map<std::size_t, std::vector<std::size_t>> adj;
    for (const auto& e : edges) {
        adj[e.vertex_indices[0]].push_back(e.vertex_indices[1]);
        adj[e.vertex_indices[1]].push_back(e.vertex_indices[0]);
    }
    std::vector<std::size_t> cycle = {0};
    std::set<std::size_t> seen = {0};
    while (cycle.size() < poly2d.vertices().size()) {
        bool advanced = false;
        for (std::size_t nxt : adj[cycle.back()])
            if (!seen.count(nxt)) {
                cycle.push_back(nxt);
                seen.insert(nxt);
                advanced = true;
                break;
            }
        if (!advanced) throw StructureError("polygon_cycle: broken edge cycle");
    }
    return cycle;
}

} // namespace

std::optional<Triangulation> case3a_triangulation_exists(const LatticePolytope& base) {
    if (base.rank() != 3) throw ArgumentError("case3a_triangulation_exists: rank must be 3");

    std::vector<IntVector> pts;
    for (const auto& x : lattice_points(base))
        if (!is_zero(x)) pts.push_back(x);

    std::vector<std::pair<IntVector, IntVector>> segments;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            bool parallel = true;
            const IntVector &p = pts[i], &q = pts[j];
            for (std::size_t a = 0; a < 3 && parallel; ++a)
                for (std::size_t b = a + 1; b < 3; ++b)
                    if (p[a] * q[b] != p[b] * q[a]) {
                        parallel = false;
                        break;
                    }
            if (parallel && dot(p, q) < 0) segments.push_back({p, q});
        }

    for (const auto& [p, q] : segments) {
        bool covered = true;
        for (const auto& f : base.facets())
            if (dot(f.normal, p) != f.offset && dot(f.normal, q) != f.offset) {
                covered = false;
                break;
            }
        if (!covered) continue;

        // Fan every facet from whichever segment endpoint it contains, then
        // cone the triangles avoiding q from q.
        std::set<std::vector<IntVector>> tets;
        bool degenerate = false;
        for (const auto& f : base.facets()) {
            const IntVector& apex = dot(f.normal, p) == f.offset ? p : q;
            std::vector<IntVector> fverts;
            for (std::size_t vi : f.vertex_indices) fverts.push_back(base.vertices()[vi]);
            auto [poly2d, chart] = restricted(convex_hull(fverts));
            auto cycle = polygon_cycle(poly2d);
            for (std::size_t i = 0; i < cycle.size(); ++i) {
                IntVector a = chart.to_ambient(poly2d.vertices()[cycle[i]]);
                IntVector b =
                    chart.to_ambient(poly2d.vertices()[cycle[(i + 1) % cycle.size()]]);
                std::vector<IntVector> tri = {apex, a, b};
                std::vector<IntVector> diffs = {sub(a, apex), sub(b, apex)};
                if (rank(IntMatrix::from_rows(diffs)) < 2) continue; // flat fan triangle
                if (std::find(tri.begin(), tri.end(), q) != tri.end()) continue;
                std::vector<IntVector> tet = tri;
                tet.push_back(q);
                std::vector<IntVector> tdiffs;
                for (std::size_t d = 1; d < 4; ++d) tdiffs.push_back(sub(tet[d], tet[0]));
                if (rank(IntMatrix::from_rows(tdiffs)) < 3) {
                    degenerate = true;
                    break;
                }
                std::sort(tet.begin(), tet.end());
                tets.insert(std::move(tet));
            }
            if (degenerate) break;
        }
        if (degenerate || tets.empty()) continue;

        std::set<IntVector> pool_set;
        for (const auto& tet : tets) pool_set.insert(tet.begin(), tet.end());
        Triangulation t;
        t.points.assign(pool_set.begin(), pool_set.end());
        std::map<IntVector, std::size_t> index;
        for (std::size_t i = 0; i < t.points.size(); ++i) index[t.points[i]] = i;
        for (const auto& tet : tets) {
            std::vector<std::size_t> s;
            for (const auto& v : tet) s.push_back(index[v]);
            std::sort(s.begin(), s.end());
            t.simplices.push_back(std::move(s));
        }
        std::sort(t.simplices.begin(), t.simplices.end());
        if (is_valid(t)) return t;
    }
    return std::nullopt;
}

} // namespace topskit
