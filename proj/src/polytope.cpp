#include <algorithm>
#include <map>
#include <set>

#include "topskit/polytope.hpp"

namespace topskit {

bool QPolytope::is_integral() const {
    for (const auto& v : vertices)
        for (const auto& c : v)
            if (c.get_den() != 1) return false;
    return true;
}

LatticePolytope QPolytope::to_lattice() const {
    if (!is_integral()) throw DomainError("to_lattice: polytope has non-integral vertices");
    std::vector<IntVector> pts;
    for (const auto& v : vertices) {
        IntVector p(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) p[i] = v[i].get_num();
        pts.push_back(std::move(p));
    }
    return convex_hull(pts);
}

QPolytope polar(const LatticePolytope& p) {
    if (!p.full_dimensional() || !p.origin_interior())
        throw DomainError("polar: origin not strictly interior");
    QPolytope q;
    q.rank = p.rank();
    // Facets of p map to polar vertices n/|offset|; vertices of p to polar facets.
    for (const auto& f : p.facets()) {
        RatVector v(q.rank);
        for (std::size_t i = 0; i < q.rank; ++i) {
            v[i] = Rat(f.normal[i], -f.offset);
            v[i].canonicalize();
        }
        q.vertices.push_back(std::move(v));
    }
    std::sort(q.vertices.begin(), q.vertices.end());
    for (const auto& v : p.vertices()) {
        Facet f;
        f.normal = v;
        f.offset = -1;
        for (std::size_t i = 0; i < q.vertices.size(); ++i) {
            Rat s(0);
            for (std::size_t j = 0; j < q.rank; ++j) s += Rat(v[j]) * q.vertices[i][j];
            if (s == Rat(-1)) f.vertex_indices.push_back(i);
        }
        q.facets.push_back(std::move(f));
    }
    return q;
}

bool is_reflexive(const LatticePolytope& p) {
    if (!p.full_dimensional() || !p.origin_interior()) return false;
    for (const auto& f : p.facets())
        if (f.offset != -1) return false; // primitive inward normals: polar vertex n/|c|
    return true;
}

namespace {

std::vector<std::size_t> intersect_sorted(const std::vector<std::size_t>& a,
                                          const std::vector<std::size_t>& b) {
    std::vector<std::size_t> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

long affine_dim_of(const LatticePolytope& p, const std::vector<std::size_t>& vidx) {
    if (vidx.empty()) return -1;
    std::vector<IntVector> diffs;
    for (std::size_t i = 1; i < vidx.size(); ++i)
        diffs.push_back(sub(p.vertices()[vidx[i]], p.vertices()[vidx[0]]));
    if (diffs.empty()) return 0;
    return long(rank(IntMatrix::from_rows(diffs)));
}

} // namespace

std::vector<FaceDescriptor> faces(const LatticePolytope& p, long d) {
    if (!p.full_dimensional()) throw DomainError("faces: polytope not full-dimensional");
    if (d < 0 || d > p.dim()) throw ArgumentError("faces: dimension out of range");

    std::vector<std::size_t> all;
    for (std::size_t i = 0; i < p.vertices().size(); ++i) all.push_back(i);

    if (d == p.dim()) {
        FaceDescriptor whole;
        whole.dim = p.dim();
        whole.vertex_indices = all;
        return {whole};
    }

    // Faces are the intersections of facet vertex sets; close under intersection.
    std::set<std::vector<std::size_t>> seen;
    std::vector<std::vector<std::size_t>> queue;
    for (const auto& f : p.facets()) {
        if (seen.insert(f.vertex_indices).second) queue.push_back(f.vertex_indices);
    }
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        auto cur = queue[qi];
        for (const auto& f : p.facets()) {
            auto nxt = intersect_sorted(cur, f.vertex_indices);
            if (nxt.empty() || nxt == cur) continue;
            if (seen.insert(nxt).second) queue.push_back(nxt);
        }
    }

    std::vector<FaceDescriptor> out;
    for (const auto& vs : queue) {
        long fd = affine_dim_of(p, vs);
        if (fd != d) continue;
        FaceDescriptor fdsc;
        fdsc.dim = fd;
        fdsc.vertex_indices = vs;
        for (std::size_t fi = 0; fi < p.facets().size(); ++fi) {
            const auto& fv = p.facets()[fi].vertex_indices;
            if (std::includes(fv.begin(), fv.end(), vs.begin(), vs.end()))
                fdsc.facet_indices.push_back(fi);
        }
        out.push_back(std::move(fdsc));
    }
    std::sort(out.begin(), out.end(), [](const FaceDescriptor& a, const FaceDescriptor& b) {
        return a.vertex_indices < b.vertex_indices;
    });
    return out;
}

FaceDescriptor minimal_face_containing(const LatticePolytope& p, const IntVector& x) {
    if (!p.full_dimensional()) throw DomainError("minimal_face_containing: not full-dimensional");
    if (!p.contains(x)) throw ArgumentError("minimal_face_containing: point outside polytope");
    FaceDescriptor f;
    std::vector<std::size_t> tight;
    for (std::size_t fi = 0; fi < p.facets().size(); ++fi)
        if (dot(p.facets()[fi].normal, x) == p.facets()[fi].offset) tight.push_back(fi);
    f.facet_indices = tight;
    if (tight.empty()) {
        f.dim = p.dim();
        for (std::size_t i = 0; i < p.vertices().size(); ++i) f.vertex_indices.push_back(i);
        return f;
    }
    f.vertex_indices = p.facets()[tight[0]].vertex_indices;
    for (std::size_t i = 1; i < tight.size(); ++i)
        f.vertex_indices = intersect_sorted(f.vertex_indices, p.facets()[tight[i]].vertex_indices);
    f.dim = affine_dim_of(p, f.vertex_indices);
    return f;
}

bool is_smooth_fano(const LatticePolytope& p) {
    if (!is_reflexive(p)) throw DomainError("is_smooth_fano: input not reflexive");
    const std::size_t r = p.rank();
    for (const auto& f : p.facets()) {
        if (f.vertex_indices.size() != r) return false;
        IntMatrix m(r, r);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j) m.at(i, j) = p.vertices()[f.vertex_indices[i]][j];
        Int d = determinant(m);
        if (d != 1 && d != -1) return false;
    }
    return true;
}

} // namespace topskit
