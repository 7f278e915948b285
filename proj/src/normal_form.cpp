#include <algorithm>
#include <cstdio>
#include <deque>
#include <map>
#include <set>
#include <unordered_set>

#include "topskit/polytope.hpp"

namespace topskit {

bool NormalFormKey::operator<(const NormalFormKey& o) const {
    const IntMatrix& a = canonical_vertex_matrix;
    const IntMatrix& b = o.canonical_vertex_matrix;
    if (a.rows() != b.rows()) return a.rows() < b.rows();
    if (a.cols() != b.cols()) return a.cols() < b.cols();
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            int c = cmp(a.at(i, j), b.at(i, j));
            if (c != 0) return c < 0;
        }
    return false;
}

namespace {

// Row-sorted view of the pairing submatrix restricted to the chosen columns;
// canonical under row permutations for a fixed column choice.
std::vector<std::vector<Int>> sorted_rows(const std::vector<std::vector<Int>>& pm,
                                          const std::vector<std::size_t>& cols) {
    std::vector<std::vector<Int>> rows;
    rows.reserve(pm.size());
    for (const auto& r : pm) {
        std::vector<Int> x;
        x.reserve(cols.size());
        for (std::size_t c : cols) x.push_back(r[c]);
        rows.push_back(std::move(x));
    }
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
        for (std::size_t i = 0; i < a.size(); ++i) {
            int c = cmp(a[i], b[i]);
            if (c != 0) return c > 0; // descending
        }
        return false;
    });
    return rows;
}

int compare_keys(const std::vector<std::vector<Int>>& a, const std::vector<std::vector<Int>>& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j) {
            int c = cmp(a[i][j], b[i][j]);
            if (c != 0) return c;
        }
    return 0;
}

} // namespace

NormalFormKey normal_form(const LatticePolytope& p) {
    if (!p.full_dimensional()) throw DomainError("normal_form: polytope not full-dimensional");
    const std::size_t r = p.rank();
    const std::size_t m = p.vertices().size();
    const std::size_t nf = p.facets().size();

    // Facet-vertex pairing matrix (lattice-isomorphism invariant up to permutations).
    std::vector<std::vector<Int>> pm(nf, std::vector<Int>(m));
    for (std::size_t i = 0; i < nf; ++i)
        for (std::size_t j = 0; j < m; ++j)
            pm[i][j] = dot(p.facets()[i].normal, p.vertices()[j]) - p.facets()[i].offset;

    // Progressive argmax over column orderings: at each depth keep exactly the
    // orderings whose row-sorted submatrix is maximal.
    std::vector<std::vector<std::size_t>> cands = {{}};
    for (std::size_t depth = 0; depth < m; ++depth) {
        std::vector<std::vector<std::size_t>> next;
        std::vector<std::vector<Int>> best;
        for (const auto& pref : cands) {
            std::set<std::size_t> used(pref.begin(), pref.end());
            for (std::size_t c = 0; c < m; ++c) {
                if (used.count(c)) continue;
                auto ext = pref;
                ext.push_back(c);
                auto key = sorted_rows(pm, ext);
                if (next.empty()) {
                    best = std::move(key);
                    next = {std::move(ext)};
                    continue;
                }
                int cc = compare_keys(key, best);
                if (cc > 0) {
                    best = std::move(key);
                    next.clear();
                    next.push_back(std::move(ext));
                } else if (cc == 0) {
                    next.push_back(std::move(ext));
                }
            }
        }
        cands = std::move(next);
        if (cands.size() > 50000) throw Error("normal_form: symmetry candidate explosion");
    }

    // Finish with the Hermite form of the vertex matrix, minimized over the
    // canonical orderings; this quotients out the GL(rank, Z) action exactly.
    std::optional<IntMatrix> best;
    for (const auto& ord : cands) {
        IntMatrix x(r, m);
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t i = 0; i < r; ++i) x.at(i, j) = p.vertices()[ord[j]][i];
        IntMatrix h = hnf_row_canonical(x);
        if (!best) {
            best = std::move(h);
            continue;
        }
        bool less = false;
        for (std::size_t i = 0; i < r && !less; ++i)
            for (std::size_t j = 0; j < m; ++j) {
                int c = cmp(h.at(i, j), best->at(i, j));
                if (c != 0) {
                    less = c < 0;
                    i = r - 1;
                    break;
                }
            }
        if (less) best = std::move(h);
    }

    NormalFormKey key;
    key.canonical_vertex_matrix = std::move(*best);
    std::string s;
    s.reserve(key.canonical_vertex_matrix.rows() * key.canonical_vertex_matrix.cols() * 4);
    for (std::size_t i = 0; i < key.canonical_vertex_matrix.rows(); ++i)
        for (std::size_t j = 0; j < key.canonical_vertex_matrix.cols(); ++j) {
            s += key.canonical_vertex_matrix.at(i, j).get_str();
            s += ',';
        }
    key.hash = std::to_string(std::hash<std::string>{}(s));
    return key;
}

namespace {

std::string canonical_string(const LatticePolytope& p) {
    NormalFormKey k = normal_form(p);
    std::string s;
    const IntMatrix& m = k.canonical_vertex_matrix;
    s.reserve(m.rows() * m.cols() * 4);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            s += m.at(i, j).get_str();
            s += ',';
        }
    return s;
}

} // namespace

std::vector<LatticePolytope> reflexive_closure(const std::vector<LatticePolytope>& seeds,
                                               bool verbose) {
    std::unordered_set<std::string> seen;
    std::vector<std::vector<IntVector>> reflexive_reps;
    std::deque<std::vector<IntVector>> queue; // vertex lists only

    auto push = [&](const LatticePolytope& p) {
        if (!p.full_dimensional() || !p.origin_interior()) return;
        if (!seen.insert(canonical_string(p)).second) return;
        if (is_reflexive(p)) reflexive_reps.push_back(p.vertices());
        queue.push_back(p.vertices());
    };

    for (const auto& s : seeds) push(s);

    std::size_t processed = 0;
    while (!queue.empty()) {
        LatticePolytope p = convex_hull(queue.front());
        queue.pop_front();
        ++processed;
        if (verbose && processed % 2000 == 0)
            std::fprintf(stderr, "closure: %zu states, %zu reflexive, %zu queued\n", processed,
                         reflexive_reps.size(), queue.size());

        std::vector<IntVector> pts = lattice_points(p);
        for (const auto& v : p.vertices()) {
            std::vector<IntVector> rest;
            rest.reserve(pts.size() - 1);
            for (const auto& q : pts)
                if (q != v) rest.push_back(q);
            if (rest.size() <= p.rank()) continue;
            push(convex_hull(rest));
        }
        if (is_reflexive(p)) push(polar(p).to_lattice());
    }
    if (verbose)
        std::fprintf(stderr, "closure done: %zu states, %zu reflexive\n", processed,
                     reflexive_reps.size());

    std::vector<LatticePolytope> out;
    out.reserve(reflexive_reps.size());
    for (const auto& vs : reflexive_reps) out.push_back(convex_hull(vs));
    return out;
}

std::vector<LatticePolytope> enumerate_reflexive_polygons() {
    // Closure from the standard simplex under vertex drops and polar jumps.
    // Every state is a subhull of a reflexive polygon, so the origin stays the
    // unique interior lattice point and the search space remains tiny.
    std::vector<IntVector> simplex = {IntVector{Int(1), Int(0)}, IntVector{Int(0), Int(1)},
                                      IntVector{Int(-1), Int(-1)}};
    auto out = reflexive_closure({convex_hull(simplex)});
    // Representatives stay inside the spec's [-4,4]^2 search box.
    for (const auto& p : out)
        for (const auto& v : p.vertices())
            for (const auto& c : v)
                if (abs(c) > 4) throw Error("enumerate_reflexive_polygons: out of box");
    return out;
}

} // namespace topskit
