// One-shot generator for data/reflexive3d.txt: enumerates the isomorphism
// classes of three-dimensional reflexive polytopes by closure search (vertex
// drops + polar jumps from reflexive seeds) and writes them as vertex matrices
// in normal form, one record per class.
#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "topskit/polytope.hpp"

using namespace topskit;

namespace {

IntVector vec3(long x, long y, long z) { return IntVector{Int(x), Int(y), Int(z)}; }

std::vector<LatticePolytope> seeds() {
    std::vector<std::vector<IntVector>> vss;
    // standard simplex
    vss.push_back({vec3(1, 0, 0), vec3(0, 1, 0), vec3(0, 0, 1), vec3(-1, -1, -1)});
    // cube and octahedron
    {
        std::vector<IntVector> cube;
        for (long x : {-1, 1})
            for (long y : {-1, 1})
                for (long z : {-1, 1}) cube.push_back(vec3(x, y, z));
        vss.push_back(cube);
    }
    vss.push_back({vec3(1, 0, 0), vec3(-1, 0, 0), vec3(0, 1, 0), vec3(0, -1, 0), vec3(0, 0, 1),
                   vec3(0, 0, -1)});
    // weighted-projective simplices (Newton polytopes for weights
    // (1,1,1,3), (1,1,2,4), (1,2,3,6), (1,1,4,6))
    vss.push_back({vec3(-1, -1, -1), vec3(5, -1, -1), vec3(-1, 5, -1), vec3(-1, -1, 1)});
    vss.push_back({vec3(-1, -1, -1), vec3(7, -1, -1), vec3(-1, 3, -1), vec3(-1, -1, 1)});
    vss.push_back({vec3(-1, -1, -1), vec3(5, -1, -1), vec3(-1, 3, -1), vec3(-1, -1, 1)});
    vss.push_back({vec3(-1, -1, -1), vec3(11, -1, -1), vec3(-1, 2, -1), vec3(-1, -1, 1)});
    // hexagonal prism
    {
        std::vector<IntVector> prism;
        for (long z : {-1, 1})
            for (auto [x, y] : std::vector<std::pair<long, long>>{
                     {1, 0}, {0, 1}, {-1, 1}, {-1, 0}, {0, -1}, {1, -1}})
                prism.push_back(vec3(x, y, z));
        vss.push_back(prism);
    }

    std::vector<LatticePolytope> out;
    for (const auto& vs : vss) {
        LatticePolytope p = convex_hull(vs);
        if (!is_reflexive(p)) {
            std::fprintf(stderr, "seed rejected (not reflexive)\n");
            continue;
        }
        out.push_back(std::move(p));
    }
    return out;
}

} // namespace

int main(int argc, char** argv) {
    std::string out_path = argc > 1 ? argv[1] : "data/reflexive3d.txt";

    std::vector<LatticePolytope> classes = reflexive_closure(seeds(), /*verbose=*/true);

    // Deterministic order: vertex count, then lattice point count, then the
    // canonical vertex matrix.
    std::vector<std::pair<NormalFormKey, std::size_t>> order;
    for (std::size_t i = 0; i < classes.size(); ++i) order.push_back({normal_form(classes[i]), i});
    std::sort(order.begin(), order.end(), [&](const auto& a, const auto& b) {
        const IntMatrix& ma = a.first.canonical_vertex_matrix;
        const IntMatrix& mb = b.first.canonical_vertex_matrix;
        if (ma.cols() != mb.cols()) return ma.cols() < mb.cols();
        return a.first < b.first;
    });

    std::ofstream out(out_path);
    if (!out) {
        std::cerr << "cannot open " << out_path << "\n";
        return 2;
    }
    out << "# three-dimensional reflexive polytopes, one vertex matrix per class\n";
    out << "# " << classes.size() << " classes; rows = 3, columns = vertices\n";
    for (const auto& [key, idx] : order) {
        const IntMatrix& m = key.canonical_vertex_matrix;
        out << m.rows() << " " << m.cols() << "\n";
        for (std::size_t i = 0; i < m.rows(); ++i) {
            for (std::size_t j = 0; j < m.cols(); ++j) {
                if (j) out << " ";
                out << m.at(i, j).get_str();
            }
            out << "\n";
        }
    }
    std::cout << "classes: " << classes.size() << "\n";
    return 0;
}
