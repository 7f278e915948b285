#include "topskit/linalg.hpp"

#include <algorithm>
#include <cstdlib>

namespace topskit {

Int dot(const IntVector& a, const IntVector& b) {
    if (a.size() != b.size()) throw DimensionError("dot: size mismatch");
    Int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

IntVector add(const IntVector& a, const IntVector& b) {
    if (a.size() != b.size()) throw DimensionError("add: size mismatch");
    IntVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

IntVector sub(const IntVector& a, const IntVector& b) {
    if (a.size() != b.size()) throw DimensionError("sub: size mismatch");
    IntVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

IntVector scale(const IntVector& a, const Int& s) {
    IntVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * s;
    return r;
}

IntVector negate(const IntVector& a) {
    IntVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
    return r;
}

bool is_zero(const IntVector& a) {
    for (const auto& x : a)
        if (x != 0) return false;
    return true;
}

Int content(const IntVector& a) {
    Int g = 0;
    for (const auto& x : a) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

IntVector primitive(const IntVector& a) {
    Int g = content(a);
    if (g == 0 || g == 1) return a;
    IntVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] / g;
    return r;
}

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, std::vector<Int> entries)
    : rows_(rows), cols_(cols), e_(std::move(entries)) {
    if (e_.size() != rows_ * cols_) throw DimensionError("IntMatrix: entry count mismatch");
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows) {
    if (rows.empty()) return IntMatrix(0, 0);
    IntMatrix m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != m.cols()) throw DimensionError("from_rows: ragged rows");
        for (std::size_t j = 0; j < m.cols(); ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

IntVector IntMatrix::row(std::size_t i) const {
    IntVector r(cols_);
    for (std::size_t j = 0; j < cols_; ++j) r[j] = at(i, j);
    return r;
}

IntVector IntMatrix::col(std::size_t j) const {
    IntVector c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = at(i, j);
    return c;
}

IntMatrix IntMatrix::transposed() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

void IntMatrix::swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap(at(i, c), at(j, c));
}

void IntMatrix::swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < rows_; ++r) std::swap(at(r, i), at(r, j));
}

void IntMatrix::add_row(std::size_t i, std::size_t j, const Int& c) {
    for (std::size_t k = 0; k < cols_; ++k) at(i, k) += c * at(j, k);
}

void IntMatrix::add_col(std::size_t i, std::size_t j, const Int& c) {
    for (std::size_t k = 0; k < rows_; ++k) at(k, i) += c * at(k, j);
}

void IntMatrix::negate_row(std::size_t i) {
    for (std::size_t k = 0; k < cols_; ++k) at(i, k) = -at(i, k);
}

void IntMatrix::negate_col(std::size_t j) {
    for (std::size_t k = 0; k < rows_; ++k) at(k, j) = -at(k, j);
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols() != b.rows()) throw DimensionError("multiply: shape mismatch");
    IntMatrix r(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Int& aik = a.at(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) r.at(i, j) += aik * b.at(k, j);
        }
    return r;
}

IntVector multiply(const IntMatrix& a, const IntVector& x) {
    if (a.cols() != x.size()) throw DimensionError("multiply: shape mismatch");
    IntVector r(a.rows(), Int(0));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r[i] += a.at(i, j) * x[j];
    return r;
}

Int determinant(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw DimensionError("determinant: non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    IntMatrix a = m;
    Int sign = 1;
    Int prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a.at(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && a.at(p, k) == 0) ++p;
            if (p == n) return 0;
            a.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Int t = a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j);
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                a.at(i, j) = t;
            }
            a.at(i, k) = 0;
        }
        prev = a.at(k, k);
    }
    return sign * a.at(n - 1, n - 1);
}

std::size_t rank(const IntMatrix& m) {
    IntMatrix a = m;
    const std::size_t rows = a.rows(), cols = a.cols();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a.at(p, c) == 0) ++p;
        if (p == rows) continue;
        a.swap_rows(r, p);
        for (std::size_t i = r + 1; i < rows; ++i) {
            if (a.at(i, c) == 0) continue;
            Int f = a.at(i, c), g = a.at(r, c);
            for (std::size_t j = c; j < cols; ++j) a.at(i, j) = a.at(i, j) * g - f * a.at(r, j);
        }
        ++r;
    }
    return r;
}

namespace {

// Position of the entry with minimal nonzero |value| in the trailing block of a
// starting at (k,k); nullopt when the block is zero.
std::optional<std::pair<std::size_t, std::size_t>> min_abs_pivot(const IntMatrix& a,
                                                                 std::size_t k) {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    Int best_abs = 0;
    for (std::size_t i = k; i < a.rows(); ++i)
        for (std::size_t j = k; j < a.cols(); ++j) {
            if (a.at(i, j) == 0) continue;
            Int v = abs(a.at(i, j));
            if (!best || v < best_abs) {
                best = {i, j};
                best_abs = v;
            }
        }
    return best;
}

} // namespace

SnfDecomposition smith_normal_form(const IntMatrix& b) {
    const std::size_t rows = b.rows(), cols = b.cols();
    IntMatrix d = b;
    // Maintain d = u_inv * b * v_inv throughout; u and v accumulate the inverse ops.
    IntMatrix u = IntMatrix::identity(rows), u_inv = IntMatrix::identity(rows);
    IntMatrix v = IntMatrix::identity(cols), v_inv = IntMatrix::identity(cols);

    const std::size_t n = std::min(rows, cols);
    for (std::size_t k = 0; k < n; ++k) {
        for (;;) {
            auto piv = min_abs_pivot(d, k);
            if (!piv) break;
            auto [pi, pj] = *piv;
            if (pi != k) {
                d.swap_rows(k, pi);
                u_inv.swap_rows(k, pi);
                u.swap_cols(k, pi);
            }
            if (pj != k) {
                d.swap_cols(k, pj);
                v_inv.swap_cols(k, pj);
                v.swap_rows(k, pj);
            }
            bool clean = true;
            for (std::size_t i = k + 1; i < rows; ++i) {
                if (d.at(i, k) == 0) continue;
                Int q = d.at(i, k) / d.at(k, k); // C++ truncated division
                if (q != 0) {
                    d.add_row(i, k, -q);
                    u_inv.add_row(i, k, -q);
                    u.add_col(k, i, q);
                }
                if (d.at(i, k) != 0) clean = false;
            }
            for (std::size_t j = k + 1; j < cols; ++j) {
                if (d.at(k, j) == 0) continue;
                Int q = d.at(k, j) / d.at(k, k);
                if (q != 0) {
                    d.add_col(j, k, -q);
                    v_inv.add_col(j, k, -q);
                    v.add_row(k, j, q);
                }
                if (d.at(k, j) != 0) clean = false;
            }
            if (clean && !(d.at(k, k) == 0)) {
                // Pivot divides remainder-free; check it also divides the trailing block,
                // otherwise fold an offending row in and continue reducing.
                bool divides_all = true;
                for (std::size_t i = k + 1; i < rows && divides_all; ++i)
                    for (std::size_t j = k + 1; j < cols; ++j)
                        if (!mpz_divisible_p(d.at(i, j).get_mpz_t(), d.at(k, k).get_mpz_t())) {
                            d.add_row(k, i, 1);
                            u_inv.add_row(k, i, 1);
                            u.add_col(i, k, -1);
                            divides_all = false;
                            break;
                        }
                if (divides_all) break;
            }
        }
        if (d.at(k, k) < 0) {
            d.negate_row(k);
            u_inv.negate_row(k);
            u.negate_col(k);
        }
    }

    SnfDecomposition s;
    s.diag.resize(n);
    for (std::size_t k = 0; k < n; ++k) s.diag[k] = d.at(k, k);
    s.u = std::move(u);
    s.d = std::move(d);
    s.v = std::move(v);
    s.u_inv = std::move(u_inv);
    s.v_inv = std::move(v_inv);

    if (multiply(multiply(s.u, s.d), s.v) != b)
        throw Error("smith_normal_form: reconstruction check failed");
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (s.diag[k] == 0 && s.diag[k + 1] != 0)
            throw Error("smith_normal_form: zero before nonzero invariant factor");
        if (s.diag[k] != 0 && !mpz_divisible_p(s.diag[k + 1].get_mpz_t(), s.diag[k].get_mpz_t()))
            throw Error("smith_normal_form: divisibility chain violated");
    }
    return s;
}

std::optional<IntVector> solve_unimodular_system(const IntMatrix& b, const IntVector& a) {
    if (b.rows() != b.cols()) throw DimensionError("solve_unimodular_system: non-square matrix");
    if (b.rows() != a.size()) throw DimensionError("solve_unimodular_system: size mismatch");
    SnfDecomposition s = smith_normal_form(b);
    const std::size_t n = b.rows();
    for (std::size_t i = 0; i < n; ++i)
        if (s.diag[i] == 0) throw SingularError("solve_unimodular_system: singular matrix");
    // b x = a  <=>  D (V x) = U^{-1} a; integral iff d_i | (U^{-1} a)_i.
    IntVector rhs = multiply(s.u_inv, a);
    IntVector y(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!mpz_divisible_p(rhs[i].get_mpz_t(), s.diag[i].get_mpz_t())) return std::nullopt;
        y[i] = rhs[i] / s.diag[i];
    }
    return multiply(s.v_inv, y);
}

RatVector solve_rational(const IntMatrix& b, const RatVector& a) {
    if (b.rows() != b.cols() || b.rows() != a.size())
        throw DimensionError("solve_rational: shape mismatch");
    const std::size_t n = b.rows();
    std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n + 1));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) m[i][j] = Rat(b.at(i, j));
        m[i][n] = a[i];
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m[p][c] == 0) ++p;
        if (p == n) throw SingularError("solve_rational: singular matrix");
        std::swap(m[c], m[p]);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || m[i][c] == 0) continue;
            Rat f = m[i][c] / m[c][c];
            for (std::size_t j = c; j <= n; ++j) m[i][j] -= f * m[c][j];
        }
    }
    RatVector x(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = m[i][n] / m[i][i];
        x[i].canonicalize();
    }
    return x;
}

IntMatrix hnf_row_canonical(const IntMatrix& x) {
    const std::size_t rows = x.rows(), cols = x.cols();
    IntMatrix h = x;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        // gcd-reduce rows r.. on column c
        for (;;) {
            std::size_t p = rows;
            for (std::size_t i = r; i < rows; ++i)
                if (h.at(i, c) != 0 && (p == rows || abs(h.at(i, c)) < abs(h.at(p, c)))) p = i;
            if (p == rows) break; // column zero below r
            h.swap_rows(r, p);
            bool done = true;
            for (std::size_t i = r + 1; i < rows; ++i) {
                if (h.at(i, c) == 0) continue;
                Int q = h.at(i, c) / h.at(r, c);
                h.add_row(i, r, -q);
                if (h.at(i, c) != 0) done = false;
            }
            if (done) break;
        }
        if (h.at(r, c) == 0) continue;
        if (h.at(r, c) < 0) h.negate_row(r);
        for (std::size_t i = 0; i < r; ++i) {
            // reduce entries above the pivot into [0, pivot)
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), h.at(i, c).get_mpz_t(), h.at(r, c).get_mpz_t());
            if (q != 0) h.add_row(i, r, -q);
        }
        ++r;
    }
    if (r != rows) throw DimensionError("hnf_row_canonical: matrix not of full row rank");
    return h;
}

std::vector<IntVector> hyperplane_lattice_basis(const IntVector& normal) {
    if (is_zero(normal)) throw ArgumentError("hyperplane_lattice_basis: zero normal");
    const std::size_t n = normal.size();
    IntMatrix m(1, n);
    for (std::size_t j = 0; j < n; ++j) m.at(0, j) = normal[j];
    SnfDecomposition s = smith_normal_form(m);
    // n . x = 0  <=>  (V x)_1 = 0; basis vectors are columns 2..n of V^{-1}.
    std::vector<IntVector> basis;
    for (std::size_t j = 1; j < n; ++j) basis.push_back(s.v_inv.col(j));
    return basis;
}

IntMatrix unimodular_with_last_row(const IntVector& primitive_row) {
    if (content(primitive_row) != 1)
        throw ArgumentError("unimodular_with_last_row: row not primitive");
    const std::size_t n = primitive_row.size();
    IntMatrix m(1, n);
    for (std::size_t j = 0; j < n; ++j) m.at(0, j) = primitive_row[j];
    SnfDecomposition s = smith_normal_form(m);
    // primitive_row = u * (1,0,...,0) * v = +-(first row of v); reorder v.
    Int u0 = s.u.at(0, 0);
    IntMatrix p(n, n);
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t j = 0; j < n; ++j) p.at(i, j) = s.v.at(i + 1, j);
    for (std::size_t j = 0; j < n; ++j) p.at(n - 1, j) = u0 * s.v.at(0, j);
    return p;
}

} // namespace topskit
