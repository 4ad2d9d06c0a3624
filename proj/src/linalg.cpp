#include "lhl/linalg.hpp"

#include <algorithm>

namespace lhl {

Echelon echelon(QMat m) {
    Echelon e;
    Eigen::Index rows = m.rows(), cols = m.cols(), r = 0;
    for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
        Eigen::Index p = r;
        while (p < rows && m(p, c).is_zero()) ++p;
        if (p == rows) continue;
        if (p != r) m.row(p).swap(m.row(r));
        Rational inv = m(r, c).inverse();
        for (Eigen::Index j = c; j < cols; ++j) m(r, j) *= inv;
        for (Eigen::Index i = 0; i < rows; ++i) {
            if (i == r || m(i, c).is_zero()) continue;
            Rational f = m(i, c);
            for (Eigen::Index j = c; j < cols; ++j) m(i, j) -= f * m(r, j);
        }
        e.pivots.push_back(static_cast<int>(c));
        ++r;
    }
    e.rref = std::move(m);
    return e;
}

int rank(const QMat& m) { return echelon(m).rank(); }

QMat nullspace(const QMat& m) {
    Echelon e = echelon(m);
    const Eigen::Index cols = m.cols();
    std::vector<bool> is_pivot(cols, false);
    for (int p : e.pivots) is_pivot[p] = true;
    QMat basis = QMat::Zero(cols, cols - e.rank());
    Eigen::Index k = 0;
    for (Eigen::Index f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        basis(f, k) = Rational(1);
        for (size_t i = 0; i < e.pivots.size(); ++i) basis(e.pivots[i], k) = -e.rref(i, f);
        ++k;
    }
    return basis;
}

std::optional<QVec> solve(const QMat& m, const QVec& b) {
    QMat aug(m.rows(), m.cols() + 1);
    aug << m, b;
    Echelon e = echelon(aug);
    if (!e.pivots.empty() && e.pivots.back() == m.cols()) return std::nullopt;
    QVec x = QVec::Zero(m.cols());
    for (size_t i = 0; i < e.pivots.size(); ++i) x(e.pivots[i]) = e.rref(i, m.cols());
    return x;
}

QMat inverse(const QMat& m) {
    const Eigen::Index n = m.rows();
    QMat aug(n, 2 * n);
    aug << m, QMat::Identity(n, n);
    Echelon e = echelon(aug);
    if (e.rank() < n || e.pivots[n - 1] >= n) throw DegenerateMatrix("inverse of singular matrix");
    return e.rref.rightCols(n);
}

Inertia inertia(const QMat& input) {
    if (input.rows() != input.cols()) throw std::invalid_argument("inertia of non-square matrix");
    QMat a = input;
    std::vector<Eigen::Index> live;
    for (Eigen::Index i = 0; i < a.rows(); ++i) live.push_back(i);
    Inertia out;
    while (!live.empty()) {
        auto diag = std::find_if(live.begin(), live.end(), [&](Eigen::Index i) { return !a(i, i).is_zero(); });
        if (diag != live.end()) {
            Eigen::Index p = *diag;
            const Rational piv = a(p, p);
            (piv.sign() > 0 ? out.plus : out.minus)++;
            live.erase(diag);
            for (Eigen::Index i : live)
                for (Eigen::Index j : live) a(i, j) -= a(i, p) * a(p, j) / piv;
            continue;
        }
        Eigen::Index p = -1, q = -1;
        for (size_t x = 0; x < live.size() && p < 0; ++x)
            for (size_t y = x + 1; y < live.size(); ++y)
                if (!a(live[x], live[y]).is_zero()) {
                    p = live[x], q = live[y];
                    break;
                }
        if (p < 0) {
            out.zero += static_cast<int>(live.size());
            break;
        }
        // Block [[0,b],[b,0]] is a hyperbolic plane.
        const Rational b = a(p, q);
        ++out.plus, ++out.minus;
        live.erase(std::find(live.begin(), live.end(), q));
        live.erase(std::find(live.begin(), live.end(), p));
        for (Eigen::Index i : live)
            for (Eigen::Index j : live) a(i, j) -= (a(i, p) * a(q, j) + a(i, q) * a(p, j)) / b;
    }
    return out;
}

std::pair<int, int> signature(const QMat& m) {
    Inertia in = inertia(m);
    if (in.zero) throw DegenerateMatrix("signature of a degenerate form");
    return {in.plus, in.minus};
}

}  // namespace lhl

namespace lhl {

std::optional<QMat> solve_many(const QMat& m, const QMat& b) {
    QMat aug(m.rows(), m.cols() + b.cols());
    aug << m, b;
    Echelon e = echelon(aug);
    if (!e.pivots.empty() && e.pivots.back() >= m.cols()) return std::nullopt;
    QMat x = QMat::Zero(m.cols(), b.cols());
    for (size_t i = 0; i < e.pivots.size(); ++i)
        for (Eigen::Index k = 0; k < b.cols(); ++k) x(e.pivots[i], k) = e.rref(i, m.cols() + k);
    return x;
}

std::map<Root, int> common_denominator(const Mat<RatFunc>& m) {
    std::map<Root, int> d;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            for (const auto& [r, k] : m(i, j).den()) d[r] = std::max(d[r], k);
    return d;
}

namespace {

VarsPtr vars_of(const Mat<RatFunc>& m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            if (m(i, j).num().vars()) return m(i, j).num().vars();
    return nullptr;
}

Poly root_product(const VarsPtr& vars, const std::map<Root, int>& d) {
    Poly p(1);
    for (const auto& [r, k] : d) p *= r.poly(vars).pow(k);
    return p;
}

// Entries multiplied by the common denominator d, as polynomials.
Mat<Poly> cleared(const Mat<RatFunc>& m, const std::map<Root, int>& d, const VarsPtr& vars) {
    Mat<Poly> out(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            std::map<Root, int> rest = d;
            for (const auto& [r, k] : m(i, j).den()) rest[r] -= k;
            out(i, j) = m(i, j).num() * root_product(vars, rest);
        }
    return out;
}

std::map<Root, int> power(std::map<Root, int> d, int n) {
    for (auto& [r, k] : d) k *= n;
    return d;
}

}  // namespace

RatFunc rf_determinant(const Mat<RatFunc>& m) {
    const int n = static_cast<int>(m.rows());
    if (n == 0) return RatFunc(1);
    auto d = common_denominator(m);
    Poly det = determinant(cleared(m, d, vars_of(m)));
    return RatFunc(det, power(d, n));
}

std::optional<Mat<RatFunc>> rf_inverse(const Mat<RatFunc>& m) {
    const int n = static_cast<int>(m.rows());
    Mat<RatFunc> inv(n, n);
    if (n == 0) return inv;
    auto d = common_denominator(m);
    VarsPtr vars = vars_of(m);
    Mat<Poly> c = cleared(m, d, vars);
    RatFunc det = RatFunc(determinant(c), power(d, n));
    if (det.is_zero() || !det.num().is_constant()) return std::nullopt;
    Rational scale = det.num().constant_term().inverse();
    Poly p = root_product(vars, det.den());
    auto dn = power(d, n - 1);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Mat<Poly> minor(n - 1, n - 1);
            for (int a = 0, ra = 0; a < n; ++a) {
                if (a == j) continue;
                for (int b = 0, cb = 0; b < n; ++b) {
                    if (b == i) continue;
                    minor(ra, cb++) = c(a, b);
                }
                ++ra;
            }
            Poly cof = determinant(minor) * p * scale;
            if ((i + j) % 2) cof = -cof;
            inv(i, j) = RatFunc(cof, dn);
        }
    return inv;
}

}  // namespace lhl
