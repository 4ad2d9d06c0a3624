#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "lhl/poly.hpp"
#include "lhl/ratfunc.hpp"
#include "lhl/unipoly.hpp"

namespace lhl {

inline bool is_zero(const Rational& x) { return x.is_zero(); }
template <class T>
bool is_zero(const T& x) {
    return x.is_zero();
}

inline Rational exact_div(const Rational& a, const Rational& b) { return a / b; }

// Fraction-free Gaussian elimination over an integral domain; every division
// is exact. Row swaps flip the sign.
template <class T>
T determinant(Mat<T> m) {
    const Eigen::Index n = m.rows();
    if (m.cols() != n) throw std::invalid_argument("determinant of a non-square matrix");
    if (n == 0) return T(1);
    T prev(1);
    bool negate = false;
    for (Eigen::Index k = 0; k < n; ++k) {
        Eigen::Index p = k;
        while (p < n && is_zero(m(p, k))) ++p;
        if (p == n) return T(0);
        if (p != k) {
            m.row(p).swap(m.row(k));
            negate = !negate;
        }
        for (Eigen::Index i = k + 1; i < n; ++i) {
            for (Eigen::Index j = k + 1; j < n; ++j)
                m(i, j) = exact_div(m(k, k) * m(i, j) - m(i, k) * m(k, j), prev);
            m(i, k) = T(0);
        }
        prev = m(k, k);
    }
    return negate ? T(T(0) - m(n - 1, n - 1)) : m(n - 1, n - 1);
}

// Rank over the fraction field of an integral domain.
template <class T>
int domain_rank(Mat<T> m) {
    Eigen::Index rows = m.rows(), cols = m.cols(), r = 0;
    T prev(1);
    for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
        Eigen::Index p = r;
        while (p < rows && is_zero(m(p, c))) ++p;
        if (p == rows) continue;
        if (p != r) m.row(p).swap(m.row(r));
        for (Eigen::Index i = r + 1; i < rows; ++i) {
            for (Eigen::Index j = c + 1; j < cols; ++j)
                m(i, j) = exact_div(m(r, c) * m(i, j) - m(i, c) * m(r, j), prev);
            m(i, c) = T(0);
        }
        prev = m(r, c);
        ++r;
    }
    return static_cast<int>(r);
}

// Reduced row echelon form over Q.
struct Echelon {
    QMat rref;
    std::vector<int> pivots;
    int rank() const { return static_cast<int>(pivots.size()); }
};
Echelon echelon(QMat m);
int rank(const QMat& m);
// Basis of {v : m v = 0}, as columns.
QMat nullspace(const QMat& m);
// Some solution of m x = b, or nullopt.
std::optional<QVec> solve(const QMat& m, const QVec& b);
QMat inverse(const QMat& m);
// Solves m X = b column by column with one elimination; nullopt if any column fails.
std::optional<QMat> solve_many(const QMat& m, const QMat& b);

struct Inertia {
    int plus = 0, minus = 0, zero = 0;
    friend bool operator==(const Inertia& a, const Inertia& b) {
        return a.plus == b.plus && a.minus == b.minus && a.zero == b.zero;
    }
};
// Inertia by symmetric congruence elimination (1x1 pivots, else 2x2 blocks).
Inertia inertia(const QMat& m);
// (n_plus, n_minus); throws DegenerateMatrix when m is singular.
std::pair<int, int> signature(const QMat& m);

// Root multiplicities of a common denominator of all entries.
std::map<Root, int> common_denominator(const Mat<RatFunc>& m);
// Determinant after clearing denominators, so every pivot division is exact.
RatFunc rf_determinant(const Mat<RatFunc>& m);
// Inverse via the adjugate; nullopt unless the determinant is a constant over
// a product of roots.
std::optional<Mat<RatFunc>> rf_inverse(const Mat<RatFunc>& m);

}  // namespace lhl
