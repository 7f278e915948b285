#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "topskit/polytope.hpp"
#include "topskit/triangulation.hpp"

namespace topskit {

// A k-dimensional top in normalized coordinates: the reflexive boundary lies
// in x_k = 0, the body in x_k >= 0, and every other facet at lattice distance 1.
struct Top {
    LatticePolytope polytope;           // rank k
    LatticePolytope reflexive_boundary; // rank k-1 (last coordinate dropped)
    QPolytope summit_hull;              // slice x_k >= 1; rational for non-short tops
    std::vector<IntVector> summit_lattice_points;
    std::vector<IntVector> all_lattice_points;

    std::size_t rank() const { return polytope.rank(); }
    Int height(const IntVector& lattice_point) const { return lattice_point.back(); }
};

struct DualTopFacet {
    IntVector normal;                     // point of N with last coordinate 1
    std::vector<IntVector> tight_points;  // lifted lattice points on the facet
};

// Polar of a top: base polytope plus lifted facet data; recession is +y_k.
struct DualTop {
    LatticePolytope base;                    // the dual reflexive boundary, rank k-1
    std::map<IntVector, Int> heights;        // base lattice point -> minimum y_k
    std::vector<DualTopFacet> bounded_facets;
};

// Integer affine-linear form in the family parameters.
struct LinForm {
    Int constant;
    std::map<std::size_t, Int> coeffs;

    static LinForm constant_form(Int c) { return LinForm{std::move(c), {}}; }
    static LinForm parameter(std::size_t i) { return LinForm{Int(0), {{i, Int(1)}}}; }

    LinForm& operator+=(const LinForm& o);
    LinForm& operator-=(const LinForm& o);
    LinForm operator*(const Int& s) const;
    Int evaluate(const std::vector<Int>& params) const;
    bool is_zero() const;
    std::string str() const; // for condition naming in errors
};

struct DivisibilityCondition {
    std::size_t facet_id;        // simplex index in the triangulation
    std::vector<Int> moduli;     // invariant factors d_1..d_{k-1}
    std::vector<LinForm> forms;  // rows of U^{-1} (a+1); condition d_i | form_i
};

struct ConvexityInequality {
    std::vector<std::size_t> ridge; // pool indices of the shared boundary ridge
    std::size_t facet_a, facet_b;   // incident simplex ids
    LinForm form;                   // >= 0 means locally convex; == 0 merges facets
};

// Symbolic output of the short-top construction algorithm for (base, T).
struct TopFamily {
    LatticePolytope base;      // the dual reflexive boundary Delta-dual, rank k-1
    Triangulation triangulation;
    std::size_t k = 0;         // rank of the produced tops
    std::size_t origin_index = 0;
    std::vector<std::size_t> pinned_points; // gauge facet vertices, height -1
    std::vector<std::size_t> free_points;   // pool index of parameter i
    std::vector<LinForm> height_forms;      // per pool point
    std::vector<DivisibilityCondition> divisibility;
    std::vector<ConvexityInequality> convexity;

    std::size_t parameter_count() const { return free_points.size(); }
};

struct ParameterAssignment {
    std::vector<Int> values; // by parameter index
};

// Recognize a top in arbitrary coordinates; returns it in normalized
// coordinates (reflexive boundary at x_k = 0) or nullopt.
std::optional<Top> is_top(const LatticePolytope& p);

// Every summit lattice point at height 1; cross-checked against the polar
// criterion (the dual contains (0,...,0,-1)).
bool is_short_top(const Top& t);

// Polar of a short top as base + heights + bounded facets.
DualTop dual_top_of(const Top& t);

// The construction algorithm: gauge-fix, emit one divisibility record per
// triangulation facet and one convexity inequality per interior ridge.
TopFamily build_short_top_family(const LatticePolytope& base, const Triangulation& t);

// Divisibility test for a single facet: when satisfiable returns the dual
// lattice point (B^{-1}(a+1), 1). Throws SingularError for degenerate facets.
std::pair<bool, std::optional<IntVector>> facet_divisibility(const IntMatrix& facet_vertices,
                                                             const IntVector& heights);

// The orientation form deciding local convexity across one ridge, normalized
// so that form >= 0 means locally convex.
LinForm ridge_convexity_form(const TopFamily& family, const ConvexityInequality& ridge);

// Instantiate a family member; errors name the first violated record.
std::pair<DualTop, Top> instantiate(const TopFamily& f, const ParameterAssignment& s);

// The one-parameter family over the standard simplex base plus the
// exceptional top with summit vertex (-1,...,-1,k). 2 <= k <= 6.
std::pair<TopFamily, Top> classify_simplex_tops(std::size_t k);

struct SplitWitness {
    IntVector hyperplane_normal;
    LatticePolytope slice; // in the induced rank-2 lattice
};

// Hyperplane slicing the rank-3 base into two tops glued along a reflexive
// polygon, when one exists.
std::optional<SplitWitness> admits_case2_split(const LatticePolytope& base);

// A pair of lattice points of base with the origin strictly between them.
std::optional<std::pair<IntVector, IntVector>> origin_interior_segment(
    const LatticePolytope& base);

// A lattice-point triangulation of the rank-3 base in which every maximal
// simplex contains a common origin-through segment, when one exists.
std::optional<Triangulation> case3a_triangulation_exists(const LatticePolytope& base);

// Slice of p by the hyperplane normal.x == c (rational vertices in general).
QPolytope slice_polytope(const LatticePolytope& p, const IntVector& normal, const Int& c);

} // namespace topskit
