#pragma once

#include <optional>
#include <vector>

#include "topskit/polytope.hpp"

namespace topskit {

// Lattice-point triangulation of a region (polytope boundary or full polytope).
// points is the vertex pool; simplices hold sorted indices into it. Boundary
// triangulations of a d-polytope use d points per simplex, full ones d+1.
// For triangulations built by lifting, heights stores the certificate.
struct Triangulation {
    std::vector<IntVector> points;
    std::vector<std::vector<std::size_t>> simplices;
    std::vector<Int> heights; // empty when no certificate is attached

    bool has_certificate() const { return !heights.empty(); }
};

struct RidgeLink {
    std::vector<std::size_t> ridge; // sorted point indices
    std::size_t simplex_a = 0;
    std::size_t simplex_b = 0; // == simplex_a for boundary ridges
    bool interior = true;
};

enum class BoundaryVariant {
    vertices_only, // pool = polytope vertices
    maximal        // pool = all boundary lattice points
};

// Regular lattice-point triangulation of the boundary of p (origin interior),
// produced facet by facet from a global convex lifting with lexicographic
// pull refinement; deterministic. The pool ends with the origin, which is
// used by no simplex (it is the star apex for family construction).
Triangulation triangulate_boundary(const LatticePolytope& p,
                                   BoundaryVariant variant = BoundaryVariant::maximal);

// Exact validity: affine independence, covering of the region, and pairwise
// intersection in a common face.
bool is_valid(const Triangulation& t);

// For a boundary triangulation of a polytope with interior origin: every
// maximal simplex spans, with the origin, a cone of determinant +-1.
bool is_unimodular(const Triangulation& t);

// Every ridge with its incident maximal simplices; interior ridges have
// exactly two. Throws StructureError if a ridge has more than two.
std::vector<RidgeLink> ridge_links(const Triangulation& t);

// Check that the lower hull of the stored lifting reprojects exactly onto the
// stored simplices (per facet of the region). False when no certificate.
bool certificate_projects(const Triangulation& t);

// Slow exact regularity test for boundary triangulations without a
// certificate: Fourier-Motzkin feasibility of the strict lifting inequalities.
bool is_regular(const Triangulation& t);

// Simplices of t whose points all lie on the hyperplane normal.x == offset
// (the induced triangulation of that face of the region).
std::vector<std::vector<std::size_t>> simplices_on_hyperplane(const Triangulation& t,
                                                              const IntVector& normal,
                                                              const Int& offset);

} // namespace topskit
