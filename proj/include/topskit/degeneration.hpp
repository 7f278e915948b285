#pragma once

#include <string>
#include <vector>

#include "topskit/tops.hpp"

namespace topskit {

// Dimension class of the summit / position of w in the dual, for rank 4 or 5.
struct SummitCase {
    long summit_dim = -1;    // affine dimension of the summit
    long dual_face_dim = -1; // dimension of the dual face containing w in its
                             // relative interior (= rank - 1 - summit_dim)
    std::string label;       // "1", "2", "3(a)", "3(b)" / "1".."4(b)"
};

struct DualGraphNode {
    IntVector point;
    int component = 1; // 1 or 2; 2 only for split points
};

// Dual complex of the singular fiber: nodes with multiplicity bookkeeping,
// edges with triangulation provenance, and the higher cells needed to check
// the claimed topological support.
struct DualGraph {
    std::vector<DualGraphNode> nodes;
    std::vector<std::pair<std::size_t, std::size_t>> edges; // multiset of node pairs
    std::vector<std::pair<IntVector, IntVector>> edge_provenance; // triangulation edge
    std::vector<std::vector<std::size_t>> cells2; // triangles (node indices)
    std::vector<std::vector<std::size_t>> cells3; // tetrahedra (rank-5 cases)
};

enum class SupportKind { point, chain, disk, sphere, three_sphere };

struct SupportVerdict {
    SupportKind claimed = SupportKind::point;
    bool pass = false;
    long euler = 0;
    bool connected = false;
    bool closed = false;         // every codim-1 cell in exactly two top cells
    bool boundary_cycle = false; // disk check: boundary edges form one cycle
    std::string detail;
};

enum class SmoothnessAttestation { unimodular_certified, not_unimodular, unknown };

struct DegenerationReport {
    std::size_t rank = 0;
    SummitCase summit_case;
    DualGraph graph;
    std::size_t component_count = 0;
    SupportVerdict support;
    bool monodromy_maximal = false; // rank 5: N^3 nontrivial
    SmoothnessAttestation smoothness = SmoothnessAttestation::unknown;
    std::string description;
};

// Case from the affine dimension of the summit, cross-validated against the
// face of the dual containing w. Requires a short top of rank 4 or 5.
SummitCase summit_case(const Top& t);

// Component count (1 or 2) of the divisor at a summit lattice point: 2 iff the
// point is interior to a (k-2)-face whose dual edge has interior lattice points.
int splits(const Top& t, const IntVector& point);

// Dual complex of X_0 from the summit case and the induced triangulation.
DualGraph dual_graph(const Top& t, const Triangulation& tri);

// Combinatorial certificate for the claimed topological support.
SupportVerdict support_verdict(const DualGraph& g, const SummitCase& c);

// Full report for a rank-4 short top (semistable K3 degeneration).
DegenerationReport classify_k3(const Top& t, const Triangulation& tri);

// Full report for a rank-5 short top (Calabi-Yau threefold degeneration);
// smoothness is attested through is_unimodular unless skipped.
DegenerationReport classify_cy3(const Top& t, const Triangulation& tri,
                                bool check_smoothness = true);

} // namespace topskit
