#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "topskit/linalg.hpp"

namespace topskit {

// One facet inequality normal . x >= offset with primitive inward normal.
struct Facet {
    IntVector normal;
    Int offset;
    std::vector<std::size_t> vertex_indices; // polytope vertices tight on this facet, sorted

    bool operator==(const Facet& o) const = default;
};

struct FaceDescriptor {
    long dim = -1;
    std::vector<std::size_t> vertex_indices;  // sorted
    std::vector<std::size_t> facet_indices;   // supporting facets, sorted

    bool operator==(const FaceDescriptor& o) const = default;
};

// Exact lattice polytope in Z^rank: irredundant vertices plus, when
// full-dimensional, the complete primitive facet description.
class LatticePolytope {
  public:
    LatticePolytope() = default;

    std::size_t rank() const { return rank_; }
    long dim() const { return dim_; }
    bool full_dimensional() const { return dim_ >= 0 && std::size_t(dim_) == rank_; }

    const std::vector<IntVector>& vertices() const { return vertices_; }
    const std::vector<Facet>& facets() const { return facets_; } // empty unless full-dimensional

    bool contains(const IntVector& p) const;
    bool contains(const RatVector& p) const;
    bool strictly_contains(const IntVector& p) const; // interior membership
    bool origin_interior() const;

    friend LatticePolytope convex_hull(const std::vector<IntVector>& points);

  private:
    std::size_t rank_ = 0;
    long dim_ = -1;
    std::vector<IntVector> vertices_;
    std::vector<Facet> facets_;
};

// Exact hull; throws ArgumentError on an empty point set or mixed ranks.
LatticePolytope convex_hull(const std::vector<IntVector>& points);

// Polytope with rational vertices; arises as the polar of a lattice polytope.
struct QPolytope {
    std::size_t rank = 0;
    std::vector<RatVector> vertices;
    std::vector<Facet> facets; // normal . x >= offset, integral data

    bool is_integral() const;
    LatticePolytope to_lattice() const; // requires is_integral
};

// {y : v . y >= -1 for all v in p}; requires the origin strictly interior.
QPolytope polar(const LatticePolytope& p);

// True iff p is full-dimensional with interior origin and every polar vertex is integral.
bool is_reflexive(const LatticePolytope& p);

// All lattice points of p, by exact bounding-box scan with facet filtering; sorted lex.
std::vector<IntVector> lattice_points(const LatticePolytope& p);
std::vector<IntVector> boundary_lattice_points(const LatticePolytope& p);
std::vector<IntVector> interior_lattice_points(const LatticePolytope& p);

// All d-faces with incidence data; 0 <= d <= dim(p).
std::vector<FaceDescriptor> faces(const LatticePolytope& p, long d);

// The smallest face of p containing x, as a descriptor (x need not be a vertex).
FaceDescriptor minimal_face_containing(const LatticePolytope& p, const IntVector& x);

// True iff every facet of the reflexive polytope p has exactly rank vertices
// forming a lattice basis. Throws DomainError on non-reflexive input.
bool is_smooth_fano(const LatticePolytope& p);

// Normalized volume (the r!-scaled lattice volume, a nonnegative integer).
Int normalized_volume(const LatticePolytope& p);

// Affine-hull data for a (possibly lower-dimensional) polytope: points map to
// integer coordinates origin + sum c_i basis_i with the basis spanning the
// saturated direction lattice.
struct AffineChart {
    IntVector origin;
    std::vector<IntVector> basis; // dim rows of length rank
    IntVector to_chart(const IntVector& ambient) const;
    IntVector to_ambient(const IntVector& chart) const;
};
AffineChart affine_chart(const std::vector<IntVector>& points);

// Full-dimensional model of p inside its affine hull, with the chart used.
std::pair<LatticePolytope, AffineChart> restricted(const LatticePolytope& p);

struct NormalFormKey {
    IntMatrix canonical_vertex_matrix;
    std::string hash;

    bool operator==(const NormalFormKey& o) const {
        return canonical_vertex_matrix == o.canonical_vertex_matrix;
    }
    bool operator<(const NormalFormKey& o) const;
};

// Canonical key: equal keys iff the polytopes are related by a lattice-preserving
// linear isomorphism. Requires full-dimensional input.
NormalFormKey normal_form(const LatticePolytope& p);

// The 16 isomorphism classes of reflexive polygons, one representative each.
std::vector<LatticePolytope> enumerate_reflexive_polygons();

// Closure search over isomorphism classes: starting from the seeds, repeatedly
// (a) drop one vertex and rehull the remaining lattice points, keeping results
// with the origin interior, and (b) jump to the polar of reflexive states.
// Returns one representative per reflexive class found.
std::vector<LatticePolytope> reflexive_closure(const std::vector<LatticePolytope>& seeds,
                                               bool verbose = false);

} // namespace topskit
