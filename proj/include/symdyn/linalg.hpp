#ifndef SYMDYN_LINALG_HPP
#define SYMDYN_LINALG_HPP

// Small dense matrices over exact scalars, plus fraction-free (Bareiss)
// elimination for exact rank/kernel computation. Everything here is sized for
// matrices with at most a few hundred rows; no numerical linear algebra.

#include "symdyn/rational.hpp"

#include <cassert>
#include <stdexcept>
#include <vector>

namespace symdyn {

template <class K>
class Mat {
public:
    Mat() : rows_(0), cols_(0) {}
    Mat(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols, K(0)) {}

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = K(1);
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    K& at(int i, int j) { return a_[size_t(i) * cols_ + j]; }
    const K& at(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

    Mat transpose() const {
        Mat t(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    friend Mat operator*(const Mat& x, const Mat& y) {
        if (x.cols_ != y.rows_) throw std::invalid_argument("Mat: dimension mismatch");
        Mat r(x.rows_, y.cols_);
        for (int i = 0; i < x.rows_; ++i)
            for (int k = 0; k < x.cols_; ++k) {
                const K& xv = x.at(i, k);
                if (xv.is_zero()) continue;
                for (int j = 0; j < y.cols_; ++j) r.at(i, j) += xv * y.at(k, j);
            }
        return r;
    }

    std::vector<K> apply(const std::vector<K>& v) const {
        if (int(v.size()) != cols_) throw std::invalid_argument("Mat::apply: size mismatch");
        std::vector<K> r(rows_, K(0));
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r[i] += at(i, j) * v[j];
        return r;
    }

    friend Mat operator*(const K& s, const Mat& m) {
        Mat r = m;
        for (auto& v : r.a_) v = v * s;
        return r;
    }

    friend bool operator==(const Mat& x, const Mat& y) {
        return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
    }
    friend bool operator!=(const Mat& x, const Mat& y) { return !(x == y); }

private:
    int rows_, cols_;
    std::vector<K> a_;
};

// Gauss-Jordan inverse over any exact field K. Throws on singular input.
template <class K>
Mat<K> inverse(const Mat<K>& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("inverse: not square");
    int n = m.rows();
    Mat<K> a = m, inv = Mat<K>::identity(n);
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (!a.at(r, col).is_zero()) { piv = r; break; }
        if (piv < 0) throw std::domain_error("inverse: singular matrix");
        if (piv != col)
            for (int j = 0; j < n; ++j) {
                std::swap(a.at(piv, j), a.at(col, j));
                std::swap(inv.at(piv, j), inv.at(col, j));
            }
        K d = a.at(col, col).inverse();
        for (int j = 0; j < n; ++j) {
            a.at(col, j) = a.at(col, j) * d;
            inv.at(col, j) = inv.at(col, j) * d;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col || a.at(r, col).is_zero()) continue;
            K f = a.at(r, col);
            for (int j = 0; j < n; ++j) {
                a.at(r, j) = a.at(r, j) - f * a.at(col, j);
                inv.at(r, j) = inv.at(r, j) - f * inv.at(col, j);
            }
        }
    }
    return inv;
}

namespace detail {

// Clears denominators row by row, producing the integer matrix Bareiss runs on.
inline std::vector<std::vector<Integer>> to_integer_rows(const Mat<Rational>& m) {
    std::vector<std::vector<Integer>> rows(m.rows(), std::vector<Integer>(m.cols()));
    for (int i = 0; i < m.rows(); ++i) {
        Integer den(1);
        for (int j = 0; j < m.cols(); ++j) den = lcm(den, m.at(i, j).den());
        for (int j = 0; j < m.cols(); ++j) {
            const Rational& v = m.at(i, j);
            rows[i][j] = v.num() * (den / v.den());
        }
    }
    return rows;
}

struct Echelon {
    std::vector<std::vector<Integer>> rows;  // fraction-free row echelon form
    std::vector<int> pivot_col;              // pivot column of echelon row r
    int rank = 0;
};

// Fraction-free Gaussian elimination (Bareiss). All divisions are exact.
inline Echelon bareiss(std::vector<std::vector<Integer>> a) {
    Echelon e;
    if (a.empty()) return e;
    int nrows = int(a.size()), ncols = int(a[0].size());
    Integer prev(1);
    int r = 0;
    for (int c = 0; c < ncols && r < nrows; ++c) {
        int piv = -1;
        for (int i = r; i < nrows; ++i)
            if (sgn(a[i][c]) != 0) { piv = i; break; }
        if (piv < 0) continue;
        std::swap(a[r], a[piv]);
        for (int i = r + 1; i < nrows; ++i) {
            for (int j = c + 1; j < ncols; ++j) {
                Integer t = a[i][j] * a[r][c] - a[i][c] * a[r][j];
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                a[i][j] = t;
            }
            a[i][c] = 0;
        }
        prev = a[r][c];
        e.pivot_col.push_back(c);
        ++r;
    }
    e.rank = r;
    a.resize(r);
    e.rows = std::move(a);
    return e;
}

}  // namespace detail

inline int rank(const Mat<Rational>& m) {
    return detail::bareiss(detail::to_integer_rows(m)).rank;
}

// Basis of the right kernel {x : m x = 0}, one vector per free column, via
// exact back-substitution on the Bareiss echelon form.
inline std::vector<std::vector<Rational>> kernel_basis(const Mat<Rational>& m) {
    detail::Echelon e = detail::bareiss(detail::to_integer_rows(m));
    int ncols = m.cols();
    std::vector<bool> is_pivot(ncols, false);
    for (int c : e.pivot_col) is_pivot[c] = true;

    std::vector<std::vector<Rational>> basis;
    for (int f = 0; f < ncols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rational> x(ncols, Rational(0));
        x[f] = Rational(1);
        for (int r = e.rank - 1; r >= 0; --r) {
            int c = e.pivot_col[r];
            Rational s(0);
            for (int j = c + 1; j < ncols; ++j)
                if (!x[j].is_zero()) s += Rational(e.rows[r][j]) * x[j];
            x[c] = -s / Rational(e.rows[r][c]);
        }
        basis.push_back(std::move(x));
    }
    return basis;
}

}  // namespace symdyn

#endif  // SYMDYN_LINALG_HPP
