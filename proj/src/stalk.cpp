#include <algorithm>
#include <map>

#include "lhl/bimodule.hpp"

namespace lhl {

namespace {

// Monomials of total exponent e in n variables.
std::vector<Monomial> monomials(int n, int e) {
    std::vector<Monomial> out;
    std::vector<int> exps(n, 0);
    auto rec = [&](auto&& self, int i, int left) -> void {
        if (i == n - 1) {
            exps[i] = left;
            Monomial m;
            for (int j = 0; j < n; ++j) m = m * Monomial::var(j, exps[j]);
            out.push_back(m);
            return;
        }
        for (int k = left; k >= 0; --k) {
            exps[i] = k;
            self(self, i + 1, left - k);
        }
    };
    if (e >= 0) rec(rec, 0, e);
    return out;
}

// Degree-d part of a free module with generator degrees f, flattened to Q.
class DegreeSlice {
public:
    DegreeSlice(int nvars, const std::vector<int>& f, int d) {
        for (size_t i = 0; i < f.size(); ++i) {
            offset_.push_back(size_);
            int diff = d - f[i];
            mons_.push_back(diff >= 0 && diff % 2 == 0 ? monomials(nvars, diff / 2) : std::vector<Monomial>{});
            size_ += static_cast<int>(mons_.back().size());
        }
    }
    int size() const { return size_; }
    QVec coords(const std::vector<Poly>& v) const {
        QVec out = QVec::Zero(size_);
        for (size_t i = 0; i < v.size(); ++i) {
            int k = offset_[i];
            for (const auto& m : mons_[i]) out(k++) = v[i].coeff(m);
        }
        return out;
    }

private:
    int size_ = 0;
    std::vector<int> offset_;
    std::vector<std::vector<Monomial>> mons_;
};

// Row-reduced vectors with distinct pivots; add() reports independence.
class Span {
public:
    bool add(QVec v) {
        for (const auto& [p, r] : rows_) {
            Rational c = v(p);
            if (!c.is_zero()) v -= c * r;
        }
        Eigen::Index p = 0;
        while (p < v.size() && v(p).is_zero()) ++p;
        if (p == v.size()) return false;
        Rational piv = v(p);
        v /= piv;
        for (auto& [q, r] : rows_) {
            Rational c = r(p);
            if (!c.is_zero()) r -= c * v;
        }
        rows_.emplace_back(p, std::move(v));
        return true;
    }

private:
    std::vector<std::pair<Eigen::Index, QVec>> rows_;
};

GradedStalk empty_word_stalk(const CoxeterGroup& W, int x) {
    GradedStalk st;
    st.point = x;
    if (x != W.identity()) {
        st.stalk_map = Mat<Poly>(0, 1);
        st.gram = Mat<RatFunc>(0, 0);
        return st;
    }
    st.degrees = {0};
    st.generators = {0};
    st.stalk_map = Mat<Poly>(1, 1);
    st.stalk_map(0, 0) = Poly(W.realisation().vars(), Rational(1));
    st.gram = Mat<RatFunc>(1, 1);
    st.gram(0, 0) = RatFunc(1);
    return st;
}

}  // namespace

std::vector<Poly> GradedStalk::image(const BSElement& b) const {
    std::vector<Poly> out(rank(), Poly(0));
    for (int j = 0; j < rank(); ++j)
        for (size_t p = 0; p < b.size(); ++p)
            if (!b[p].is_zero() && !stalk_map(j, p).is_zero()) out[j] += b[p] * stalk_map(j, p);
    return out;
}

RatFunc GradedStalk::pair(const std::vector<Poly>& a, const std::vector<Poly>& b) const {
    RatFunc out(0);
    for (int i = 0; i < rank(); ++i) {
        if (a[i].is_zero()) continue;
        for (int j = 0; j < rank(); ++j)
            if (!b[j].is_zero() && !gram(i, j).is_zero()) out += RatFunc(a[i] * b[j]) * gram(i, j);
    }
    return out;
}

BSStalks::BSStalks(const CoxeterGroup& W, std::vector<int> word) : W_(&W), bs_(W, {}) {
    for (int x = 0; x < W.size(); ++x) stalks_.push_back(empty_word_stalk(W, x));
    for (int s : word) *this = extend(s);
}

BSStalks BSStalks::extend(int s) const {
    std::vector<int> w = bs_.word();
    w.push_back(s);
    BSStalks out(*W_, BottSamelson(*W_, w));
    out.stalks_.reserve(W_->size());
    for (int x = 0; x < W_->size(); ++x) out.stalks_.push_back(extend_at(x, s, out.bs_));
    return out;
}

GradedStalk BSStalks::extended_at(int x, int s) const {
    std::vector<int> w = bs_.word();
    w.push_back(s);
    return extend_at(x, s, BottSamelson(*W_, w));
}

// (B B(s))_x is the R-span in B_x + B_xs of (b_x, b_xs) and x(alpha_s)(b_x, 0).
GradedStalk BSStalks::extend_at(int x, int s, const BottSamelson& next) const {
    const CoxeterGroup& W = *W_;
    const int xs = W.rmul(x, s);
    const GradedStalk& A = stalks_[x];
    const GradedStalk& B = stalks_[xs];
    const int ra = A.rank(), rb = B.rank(), r = ra + rb;
    const int half = bs_.dim();
    const VarsPtr& vars = W.realisation().vars();
    GradedStalk st;
    st.point = x;
    if (r == 0) {
        st.stalk_map = Mat<Poly>(0, next.dim());
        st.gram = Mat<RatFunc>(0, 0);
        return st;
    }

    std::vector<int> f;
    for (int d : A.degrees) f.push_back(d - 1);
    for (int d : B.degrees) f.push_back(d - 1);
    const Poly xa = W.root_image(x, s);

    std::vector<std::vector<Poly>> cand(next.dim());
    std::map<int, std::vector<int>> by_degree;
    for (int mask = 0; mask < next.dim(); ++mask) {
        const int pi = mask & (half - 1);
        const bool top = mask >= half;
        auto& v = cand[mask];
        v.assign(r, Poly(vars, Rational(0)));
        bool nonzero = false;
        for (int i = 0; i < ra; ++i) {
            v[i] = top ? xa * A.stalk_map(i, pi) : A.stalk_map(i, pi);
            nonzero |= !v[i].is_zero();
        }
        if (!top)
            for (int j = 0; j < rb; ++j) {
                v[ra + j] = B.stalk_map(j, pi);
                nonzero |= !v[ra + j].is_zero();
            }
        if (nonzero) by_degree[next.degree(mask)].push_back(mask);
    }

    std::vector<std::vector<Poly>> basis;
    st.stalk_map = Mat<Poly>(0, next.dim());
    std::vector<std::vector<std::pair<int, Poly>>> columns(next.dim());  // (basis index, coefficient)
    for (const auto& [d, masks] : by_degree) {
        DegreeSlice slice(W.rank(), f, d);
        // Lower-degree basis elements times monomials, then new generators.
        std::vector<std::pair<int, Monomial>> unknowns;
        std::vector<QVec> cols;
        Span span;
        for (int j = 0; j < static_cast<int>(basis.size()); ++j) {
            int diff = d - st.degrees[j];
            if (diff < 0 || diff % 2) continue;
            for (const auto& m : monomials(W.rank(), diff / 2)) {
                std::vector<Poly> v = basis[j];
                Poly mp = Poly::from_terms(vars, {{m, Rational(1)}});
                for (auto& e : v) e = mp * e;
                QVec c = slice.coords(v);
                span.add(c);
                unknowns.emplace_back(j, m);
                cols.push_back(std::move(c));
            }
        }
        for (int mask : masks) {
            QVec c = slice.coords(cand[mask]);
            if (!span.add(c)) continue;
            st.degrees.push_back(d);
            st.generators.push_back(mask);
            basis.push_back(cand[mask]);
            unknowns.emplace_back(static_cast<int>(basis.size()) - 1, Monomial());
            cols.push_back(std::move(c));
        }
        QMat S(slice.size(), static_cast<Eigen::Index>(cols.size()));
        for (size_t k = 0; k < cols.size(); ++k) S.col(k) = cols[k];
        QMat rhs(slice.size(), static_cast<Eigen::Index>(masks.size()));
        for (size_t k = 0; k < masks.size(); ++k) rhs.col(k) = slice.coords(cand[masks[k]]);
        auto sol = solve_many(S, rhs);
        if (!sol) throw InternalRankMismatch("stalk generators do not span in degree " + std::to_string(d));
        for (size_t k = 0; k < masks.size(); ++k) {
            std::map<int, Poly> coeff;
            for (size_t u = 0; u < unknowns.size(); ++u) {
                const Rational& c = (*sol)(u, k);
                if (c.is_zero()) continue;
                auto [j, m] = unknowns[u];
                auto it = coeff.try_emplace(j, Poly(vars, Rational(0))).first;
                it->second += Poly::from_terms(vars, {{m, c}});
            }
            for (auto& [j, p] : coeff) columns[masks[k]].emplace_back(j, std::move(p));
        }
    }

    const int n = static_cast<int>(basis.size());
    st.stalk_map = Mat<Poly>::Constant(n, next.dim(), Poly(vars, Rational(0)));
    for (int mask = 0; mask < next.dim(); ++mask)
        for (auto& [j, p] : columns[mask]) st.stalk_map(j, mask) = p;

    const Root root = W.root_image_form(x, s);
    st.gram = Mat<RatFunc>(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            std::vector<Poly> ai(basis[i].begin(), basis[i].begin() + ra), aj(basis[j].begin(), basis[j].begin() + ra);
            std::vector<Poly> bi(basis[i].begin() + ra, basis[i].end()), bj(basis[j].begin() + ra, basis[j].end());
            RatFunc v = (A.pair(ai, aj) + B.pair(bi, bj)).divided_by_root(root);
            st.gram(i, j) = v;
            st.gram(j, i) = v;
        }
    return st;
}

std::vector<Poly> BSStalks::class_of_bottom(int x) const {
    const GradedStalk& st = at(x);
    std::vector<Poly> out;
    for (int j = 0; j < st.rank(); ++j) out.push_back(st.stalk_map(j, 0));
    return out;
}

RatFunc BSStalks::total_form(const BSElement& a, const BSElement& b) const {
    RatFunc out(0);
    for (const auto& st : stalks_)
        if (st.rank() > 0) out += st.pair(st.image(a), st.image(b));
    return out;
}

}  // namespace lhl
