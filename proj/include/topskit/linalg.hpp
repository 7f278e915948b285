#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <vector>

#include "topskit/errors.hpp"

namespace topskit {

using Int = mpz_class;
using Rat = mpq_class;

// Dense integer vector in a rank-n lattice.
using IntVector = std::vector<Int>;
using RatVector = std::vector<Rat>;

Int dot(const IntVector& a, const IntVector& b);
IntVector add(const IntVector& a, const IntVector& b);
IntVector sub(const IntVector& a, const IntVector& b);
IntVector scale(const IntVector& a, const Int& s);
IntVector negate(const IntVector& a);
bool is_zero(const IntVector& a);

// gcd of all entries (nonnegative); 0 for the zero vector.
Int content(const IntVector& a);
// divide by the content; zero vector stays zero.
IntVector primitive(const IntVector& a);

// Row-major arbitrary-precision integer matrix.
class IntMatrix {
  public:
    IntMatrix() : rows_(0), cols_(0) {}
    IntMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), e_(rows * cols, Int(0)) {}
    IntMatrix(std::size_t rows, std::size_t cols, std::vector<Int> entries);

    static IntMatrix identity(std::size_t n);
    static IntMatrix from_rows(const std::vector<IntVector>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& at(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    const Int& at(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

    IntVector row(std::size_t i) const;
    IntVector col(std::size_t j) const;
    IntMatrix transposed() const;

    bool operator==(const IntMatrix& o) const = default;

    void swap_rows(std::size_t i, std::size_t j);
    void swap_cols(std::size_t i, std::size_t j);
    // row i += c * row j
    void add_row(std::size_t i, std::size_t j, const Int& c);
    // col i += c * col j
    void add_col(std::size_t i, std::size_t j, const Int& c);
    void negate_row(std::size_t i);
    void negate_col(std::size_t j);

  private:
    std::size_t rows_, cols_;
    std::vector<Int> e_;
};

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);
IntVector multiply(const IntMatrix& a, const IntVector& x);

// Exact determinant, fraction-free (Bareiss). Throws DimensionError on non-square input.
Int determinant(const IntMatrix& m);

// Rank over Q, fraction-free.
std::size_t rank(const IntMatrix& m);

struct SnfDecomposition {
    IntMatrix u;      // unimodular
    IntMatrix d;      // diagonal, nonnegative, d_i | d_{i+1}
    IntMatrix v;      // unimodular
    IntMatrix u_inv;  // cached inverse of u
    IntMatrix v_inv;  // cached inverse of v
    std::vector<Int> diag;
};

// B = U D V with U, V unimodular; reconstruction is verified before returning.
SnfDecomposition smith_normal_form(const IntMatrix& b);

// Integer solution of b x = a for nonsingular b, decided through the SNF
// divisibility conditions d_i | (U^{-1} a)_i. Throws SingularError.
std::optional<IntVector> solve_unimodular_system(const IntMatrix& b, const IntVector& a);

// Unique rational solution of b x = a for nonsingular square b.
RatVector solve_rational(const IntMatrix& b, const RatVector& a);

// Canonical representative of the left GL(n,Z)-orbit {A X}: row-style Hermite
// form (staircase pivots positive, entries above a pivot reduced into [0, pivot)).
// Requires full row rank.
IntMatrix hnf_row_canonical(const IntMatrix& x);

// Basis of the sublattice {x in Z^n : n . x = 0} for a nonzero normal, as rows.
std::vector<IntVector> hyperplane_lattice_basis(const IntVector& normal);

// A unimodular matrix whose last row is the given primitive vector.
IntMatrix unimodular_with_last_row(const IntVector& primitive_row);

} // namespace topskit
