#pragma once

// Exact integer linear algebra over Z: primitive vectors, Smith and Hermite
// normal forms, saturations, kernels, basis-extension tests. Everything here
// is arbitrary precision; no floating point is used anywhere in the library.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "toritrans/errors.hpp"

namespace toritrans {

using Int = boost::multiprecision::cpp_int;
using IntVector = std::vector<Int>;

inline Int abs_int(const Int& a) { return a < 0 ? Int(-a) : a; }

inline Int gcd_int(const Int& a, const Int& b) {
    return boost::multiprecision::gcd(a, b);
}

// Floor division, e.g. floor_div(-3, 2) == -2. cpp_int division truncates
// toward zero, so negative mixed signs need the usual correction.
inline Int floor_div(const Int& a, const Int& b) {
    Int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

inline bool is_zero_vector(const IntVector& v) {
    return std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
}

inline Int dot(const IntVector& u, const IntVector& v) {
    if (u.size() != v.size()) throw RankMismatch("dot: length mismatch");
    Int s = 0;
    for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
    return s;
}

inline IntVector add(const IntVector& u, const IntVector& v) {
    if (u.size() != v.size()) throw RankMismatch("add: length mismatch");
    IntVector w(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) w[i] = u[i] + v[i];
    return w;
}

inline IntVector sub(const IntVector& u, const IntVector& v) {
    if (u.size() != v.size()) throw RankMismatch("sub: length mismatch");
    IntVector w(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) w[i] = u[i] - v[i];
    return w;
}

inline IntVector scale(const Int& c, const IntVector& v) {
    IntVector w(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) w[i] = c * v[i];
    return w;
}

inline IntVector negate(const IntVector& v) { return scale(-1, v); }

// Lexicographic order; the canonical order for generator and basis lists.
inline bool lex_less(const IntVector& a, const IntVector& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

inline void canonical_sort(std::vector<IntVector>& vs) {
    std::sort(vs.begin(), vs.end(), lex_less);
}

inline std::string to_string(const IntVector& v) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ',';
        os << v[i];
    }
    os << ')';
    return os.str();
}

// v divided by the gcd of its coordinates; the primitive vector generating
// the same ray. Errors on the zero vector.
inline IntVector primitive_part(const IntVector& v) {
    Int g = 0;
    for (const Int& x : v) g = gcd_int(g, x);
    if (g == 0) throw DegenerateInput("primitive_part: zero vector");
    IntVector w(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) w[i] = v[i] / g;
    return w;
}

// Dense row-major integer matrix.
class IntMatrix {
public:
    IntMatrix() : rows_(0), cols_(0) {}
    IntMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols, Int(0)) {}

    static IntMatrix identity(std::size_t n) {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols) {
        IntMatrix m(rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != cols) throw RankMismatch("from_rows: ragged input");
            for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& at(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const Int& at(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    IntVector row(std::size_t i) const {
        IntVector r(cols_);
        for (std::size_t j = 0; j < cols_; ++j) r[j] = at(i, j);
        return r;
    }

    IntVector col(std::size_t j) const {
        IntVector c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = at(i, j);
        return c;
    }

    std::vector<IntVector> row_list() const {
        std::vector<IntVector> rs;
        rs.reserve(rows_);
        for (std::size_t i = 0; i < rows_; ++i) rs.push_back(row(i));
        return rs;
    }

    IntMatrix transpose() const {
        IntMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    IntMatrix mul(const IntMatrix& other) const {
        if (cols_ != other.rows_) throw RankMismatch("mul: dimension mismatch");
        IntMatrix p(rows_, other.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const Int& a = at(i, k);
                if (a == 0) continue;
                for (std::size_t j = 0; j < other.cols_; ++j)
                    p.at(i, j) += a * other.at(k, j);
            }
        return p;
    }

    // Matrix acting on a column vector: (A v)_i = sum_j A_ij v_j.
    IntVector apply(const IntVector& v) const {
        if (v.size() != cols_) throw RankMismatch("apply: dimension mismatch");
        IntVector w(rows_, Int(0));
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) w[i] += at(i, j) * v[j];
        return w;
    }

    bool operator==(const IntMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && entries_ == o.entries_;
    }
    bool operator!=(const IntMatrix& o) const { return !(*this == o); }

private:
    std::size_t rows_, cols_;
    std::vector<Int> entries_;
};

// Row vector times matrix: (v A)_j = sum_i v_i A_ij.
inline IntVector row_times_matrix(const IntVector& v, const IntMatrix& a) {
    if (v.size() != a.rows()) throw RankMismatch("row_times_matrix: dimension mismatch");
    IntVector w(a.cols(), Int(0));
    for (std::size_t i = 0; i < a.rows(); ++i) {
        if (v[i] == 0) continue;
        for (std::size_t j = 0; j < a.cols(); ++j) w[j] += v[i] * a.at(i, j);
    }
    return w;
}

// Bareiss fraction-free determinant; exact for integer matrices.
inline Int determinant(const IntMatrix& a) {
    if (a.rows() != a.cols()) throw RankMismatch("determinant: matrix not square");
    std::size_t n = a.rows();
    if (n == 0) return 1;
    IntMatrix m = a;
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m.at(k, k) == 0) {
            std::size_t piv = k + 1;
            while (piv < n && m.at(piv, k) == 0) ++piv;
            if (piv == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(piv, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                m.at(i, j) = (m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j)) / prev;
        prev = m.at(k, k);
    }
    return sign > 0 ? m.at(n - 1, n - 1) : Int(-m.at(n - 1, n - 1));
}

// Rank over Q via fraction-free elimination.
inline std::size_t matrix_rank(const IntMatrix& a) {
    IntMatrix m = a;
    std::size_t rows = m.rows(), cols = m.cols();
    std::size_t r = 0;
    Int prev = 1;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && m.at(piv, c) == 0) ++piv;
        if (piv == rows) continue;
        if (piv != r)
            for (std::size_t j = 0; j < cols; ++j) std::swap(m.at(r, j), m.at(piv, j));
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j)
                m.at(i, j) = (m.at(i, j) * m.at(r, c) - m.at(i, c) * m.at(r, j)) / prev;
            m.at(i, c) = 0;
        }
        prev = m.at(r, c);
        ++r;
    }
    return r;
}

inline std::size_t rank_of(const std::vector<IntVector>& vectors, std::size_t n) {
    if (vectors.empty()) return 0;
    return matrix_rank(IntMatrix::from_rows(vectors, n));
}

// U * A * V = D with U, V unimodular and D diagonal, d1 | d2 | ... , all >= 0.
struct SmithDecomposition {
    IntMatrix u;  // rows() x rows() of A
    IntMatrix d;  // same shape as A
    IntMatrix v;  // cols() x cols() of A

    std::vector<Int> diagonal() const {
        std::vector<Int> ds;
        std::size_t k = std::min(d.rows(), d.cols());
        for (std::size_t i = 0; i < k; ++i) ds.push_back(d.at(i, i));
        return ds;
    }

    std::size_t rank() const {
        std::size_t r = 0;
        for (const Int& x : diagonal())
            if (x != 0) ++r;
        return r;
    }
};

namespace detail {

inline void swap_rows(IntMatrix& m, std::size_t i, std::size_t j) {
    for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m.at(i, c), m.at(j, c));
}

inline void swap_cols(IntMatrix& m, std::size_t i, std::size_t j) {
    for (std::size_t r = 0; r < m.rows(); ++r) std::swap(m.at(r, i), m.at(r, j));
}

// row_i += q * row_j
inline void add_row(IntMatrix& m, std::size_t i, std::size_t j, const Int& q) {
    for (std::size_t c = 0; c < m.cols(); ++c) m.at(i, c) += q * m.at(j, c);
}

// col_i += q * col_j
inline void add_col(IntMatrix& m, std::size_t i, std::size_t j, const Int& q) {
    for (std::size_t r = 0; r < m.rows(); ++r) m.at(r, i) += q * m.at(r, j);
}

inline void negate_row(IntMatrix& m, std::size_t i) {
    for (std::size_t c = 0; c < m.cols(); ++c) m.at(i, c) = -m.at(i, c);
}

}  // namespace detail

// Classic elimination Smith form with smallest-pivot selection. Entry growth
// is acceptable at the ranks this library works with.
inline SmithDecomposition smith_normal_form(const IntMatrix& a) {
    std::size_t rows = a.rows(), cols = a.cols();
    SmithDecomposition s{IntMatrix::identity(rows), a, IntMatrix::identity(cols)};
    IntMatrix& d = s.d;

    std::size_t t = 0;
    while (t < rows && t < cols) {
        // pick the nonzero entry of smallest magnitude in the working block
        std::size_t pi = t, pj = t;
        bool found = false;
        Int best = 0;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j) {
                if (d.at(i, j) == 0) continue;
                Int m = abs_int(d.at(i, j));
                if (!found || m < best) {
                    found = true;
                    best = m;
                    pi = i;
                    pj = j;
                }
            }
        if (!found) break;
        if (pi != t) {
            detail::swap_rows(d, t, pi);
            detail::swap_rows(s.u, t, pi);
        }
        if (pj != t) {
            detail::swap_cols(d, t, pj);
            detail::swap_cols(s.v, t, pj);
        }

        bool clean = false;
        while (!clean) {
            clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (d.at(i, t) == 0) continue;
                Int q = floor_div(d.at(i, t), d.at(t, t));
                detail::add_row(d, i, t, -q);
                detail::add_row(s.u, i, t, -q);
                if (d.at(i, t) != 0) {
                    // remainder is smaller than the pivot: promote it
                    detail::swap_rows(d, t, i);
                    detail::swap_rows(s.u, t, i);
                    clean = false;
                }
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (d.at(t, j) == 0) continue;
                Int q = floor_div(d.at(t, j), d.at(t, t));
                detail::add_col(d, j, t, -q);
                detail::add_col(s.v, j, t, -q);
                if (d.at(t, j) != 0) {
                    detail::swap_cols(d, t, j);
                    detail::swap_cols(s.v, t, j);
                    clean = false;
                }
            }
        }

        // pivot must divide the whole remaining block
        bool divides = true;
        for (std::size_t i = t + 1; i < rows && divides; ++i)
            for (std::size_t j = t + 1; j < cols && divides; ++j)
                if (d.at(i, j) % d.at(t, t) != 0) {
                    detail::add_row(d, t, i, 1);
                    detail::add_row(s.u, t, i, 1);
                    divides = false;
                }
        if (!divides) continue;  // re-run elimination at the same t
        ++t;
    }

    for (std::size_t i = 0; i < std::min(rows, cols); ++i)
        if (d.at(i, i) < 0) {
            detail::negate_row(d, i);
            detail::negate_row(s.u, i);
        }
    return s;
}

// Inverse of a unimodular matrix; integral by |det| = 1.
inline IntMatrix unimodular_inverse(const IntMatrix& a) {
    if (a.rows() != a.cols()) throw RankMismatch("unimodular_inverse: not square");
    std::size_t n = a.rows();
    Int det = determinant(a);
    if (det != 1 && det != -1) throw Error("unimodular_inverse: determinant is not +-1");
    IntMatrix inv(n, n);
    if (n == 0) return inv;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            IntMatrix minor(n - 1, n - 1);
            for (std::size_t r = 0, mr = 0; r < n; ++r) {
                if (r == j) continue;
                for (std::size_t c = 0, mc = 0; c < n; ++c) {
                    if (c == i) continue;
                    minor.at(mr, mc) = a.at(r, c);
                    ++mc;
                }
                ++mr;
            }
            Int cof = determinant(minor);
            if ((i + j) % 2 == 1) cof = -cof;
            inv.at(i, j) = cof * det;  // det is +-1, so this divides by det
        }
    return inv;
}

// Canonical basis of the lattice generated by the input rows: row-style
// Hermite form with positive pivots and entries above each pivot reduced
// into [0, pivot). Zero rows are dropped.
inline std::vector<IntVector> hermite_basis(const std::vector<IntVector>& vectors,
                                            std::size_t n) {
    std::vector<IntVector> h;
    for (const IntVector& v : vectors) {
        if (v.size() != n) throw RankMismatch("hermite_basis: wrong length");
        if (!is_zero_vector(v)) h.push_back(v);
    }
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < h.size(); ++c) {
        // gcd-reduce column c among rows >= r down to a single pivot
        while (true) {
            std::size_t piv = h.size();
            for (std::size_t i = r; i < h.size(); ++i) {
                if (h[i][c] == 0) continue;
                if (piv == h.size() || abs_int(h[i][c]) < abs_int(h[piv][c])) piv = i;
            }
            if (piv == h.size()) break;
            std::swap(h[r], h[piv]);
            bool others = false;
            for (std::size_t i = r + 1; i < h.size(); ++i) {
                if (h[i][c] == 0) continue;
                Int q = floor_div(h[i][c], h[r][c]);
                h[i] = sub(h[i], scale(q, h[r]));
                if (h[i][c] != 0) others = true;
            }
            if (!others) break;
        }
        if (h[r][c] == 0) continue;
        if (h[r][c] < 0) h[r] = negate(h[r]);
        for (std::size_t i = 0; i < r; ++i) {
            Int q = floor_div(h[i][c], h[r][c]);
            if (q != 0) h[i] = sub(h[i], scale(q, h[r]));
        }
        ++r;
    }
    h.resize(r);
    h.erase(std::remove_if(h.begin(), h.end(), is_zero_vector), h.end());
    return h;
}

// Basis of the saturated kernel {x in Z^n : A x = 0} as rows, in Hermite form.
inline std::vector<IntVector> kernel_basis(const IntMatrix& a) {
    std::size_t n = a.cols();
    SmithDecomposition s = smith_normal_form(a);
    std::size_t r = s.rank();
    std::vector<IntVector> k;
    for (std::size_t j = r; j < n; ++j) k.push_back(s.v.col(j));
    return hermite_basis(k, n);
}

inline std::vector<IntVector> kernel_basis(const std::vector<IntVector>& rows,
                                           std::size_t n) {
    if (rows.empty()) {
        std::vector<IntVector> full;
        for (std::size_t i = 0; i < n; ++i) {
            IntVector e(n, Int(0));
            e[i] = 1;
            full.push_back(e);
        }
        return full;
    }
    return kernel_basis(IntMatrix::from_rows(rows, n));
}

// Basis of the saturation (Q-span intersect Z^n) of the sublattice generated
// by the input vectors. Computed as the double orthogonal complement.
inline std::vector<IntVector> saturation_basis(const std::vector<IntVector>& vectors,
                                               std::size_t n) {
    std::vector<IntVector> w = kernel_basis(vectors, n);
    if (w.empty()) {
        std::vector<IntVector> full;
        for (std::size_t i = 0; i < n; ++i) {
            IntVector e(n, Int(0));
            e[i] = 1;
            full.push_back(e);
        }
        return full;
    }
    if (w.size() == n) return {};  // input spans nothing
    return kernel_basis(w, n);
}

// True iff the vectors are independent over Q and extend to a Z-basis of Z^n,
// i.e. all elementary divisors of their matrix are 1.
inline bool extends_to_basis(const std::vector<IntVector>& vectors, std::size_t n) {
    if (vectors.empty()) return true;
    if (vectors.size() > n) return false;
    SmithDecomposition s = smith_normal_form(IntMatrix::from_rows(vectors, n));
    if (s.rank() != vectors.size()) return false;
    for (const Int& d : s.diagonal())
        if (d != 0 && d != 1) return false;
    return true;
}

// Integer coordinates c with c * B = v (rows of B as basis), if they exist.
inline std::optional<IntVector> express_in_basis(const IntVector& v,
                                                 const std::vector<IntVector>& basis,
                                                 std::size_t n) {
    if (basis.empty()) return is_zero_vector(v) ? std::optional<IntVector>(IntVector{})
                                                : std::nullopt;
    IntMatrix b = IntMatrix::from_rows(basis, n);
    SmithDecomposition s = smith_normal_form(b);
    std::size_t k = basis.size();
    IntVector w = row_times_matrix(v, s.v);  // v * V
    IntVector y(k, Int(0));
    for (std::size_t j = 0; j < n; ++j) {
        if (j < k && s.d.at(j, j) != 0) {
            if (w[j] % s.d.at(j, j) != 0) return std::nullopt;
            y[j] = w[j] / s.d.at(j, j);
        } else if (w[j] != 0) {
            return std::nullopt;
        }
    }
    IntVector c = row_times_matrix(y, s.u);  // (w/d) * U
    // paranoia: confirm the coordinates reproduce v
    IntVector check(n, Int(0));
    for (std::size_t i = 0; i < k; ++i) check = add(check, scale(c[i], basis[i]));
    if (check != v) return std::nullopt;
    return c;
}

}  // namespace toritrans
