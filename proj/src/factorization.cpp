#include "lhl/bimodule.hpp"

namespace lhl {

namespace {

Poly zero_poly(const CoxeterGroup& W) { return Poly(W.realisation().vars(), Rational(0)); }

// d = (k B(z)m ; d' B(s)) and d* = (B(z)mu, d'* B(s)) on B(z)B(s).
FactorizationDatum assemble(const CoxeterGroup& W, const std::vector<int>& z, int s, const Rational& k,
                            const FactorizationDatum& inner) {
    FactorizationDatum out;
    out.source = z;
    out.source.push_back(s);
    const int lz = static_cast<int>(z.size());
    const int half = 1 << lz, src = 2 * half;
    out.targets.push_back({z, k.inverse(), 0});
    int offset = half;
    std::vector<int> inner_offsets;
    for (const auto& t : inner.targets) {
        std::vector<int> w = t.word;
        w.push_back(s);
        out.targets.push_back({w, t.weight, offset});
        inner_offsets.push_back(t.offset);
        offset += 2 << t.word.size();
    }
    out.d = Mat<Poly>::Constant(offset, src, zero_poly(W));
    out.dstar = Mat<Poly>::Constant(src, offset, zero_poly(W));

    BottSamelson Bz(W, z);
    const Poly as = W.realisation().alpha(s);
    for (int mask = 0; mask < src; ++mask) {
        const int pi = mask & (half - 1);
        const int top = mask >> lz;
        if (!top) {
            out.d(pi, mask) = Poly(W.realisation().vars(), k);
        } else {
            BSElement v = Bz.right_act(Bz.basis(pi), as);
            for (int j = 0; j < half; ++j) out.d(j, mask) = v[j] * k;
        }
        for (size_t t = 0; t < inner.targets.size(); ++t) {
            const int len = static_cast<int>(inner.targets[t].word.size());
            const int io = inner_offsets[t], no = out.targets[t + 1].offset;
            for (int rho = 0; rho < (1 << len); ++rho) out.d(no + (rho | top << len), mask) = inner.d(io + rho, pi);
        }
    }
    for (int rho = 0; rho < half; ++rho) out.dstar(rho | half, rho) = Poly(W.realisation().vars(), Rational(1));
    for (size_t t = 0; t < inner.targets.size(); ++t) {
        const int len = static_cast<int>(inner.targets[t].word.size());
        const int io = inner_offsets[t], no = out.targets[t + 1].offset;
        for (int u = 0; u < 2; ++u)
            for (int rho = 0; rho < (1 << len); ++rho)
                for (int pi = 0; pi < half; ++pi)
                    out.dstar(pi | u << lz, no + (rho | u << len)) = inner.dstar(pi, io + rho);
    }
    return out;
}

FactorizationDatum plain(const CoxeterGroup& W, const std::vector<int>& y, const Poly& lambda) {
    if (y.empty()) {
        FactorizationDatum f;
        f.d = Mat<Poly>(0, 1);
        f.dstar = Mat<Poly>(1, 0);
        f.lambda = lambda;
        return f;
    }
    const Realisation& R = W.realisation();
    const int s = y.back();
    const std::vector<int> z(y.begin(), y.end() - 1);
    Rational k = R.coroot_pairing(R.poly_weight(lambda), s);
    if (k.sign() <= 0)
        throw PositivityViolated("<" + lambda.str() + ", " + R.letter(s) + "^vee> = " + k.str() + " at letter " +
                                 std::to_string(y.size()));
    FactorizationDatum f = assemble(W, z, s, k, plain(W, z, W.act(W.simple(s), lambda)));
    f.lambda = lambda;
    return f;
}

}  // namespace

FactorizationDatum build_factorization(const CoxeterGroup& W, const std::vector<int>& y_word, const Poly& lambda) {
    return plain(W, y_word, lambda);
}

FactorizationDatum build_factorization(const CoxeterGroup& W, const std::vector<int>& y_word, const Poly& lambda,
                                       int s, const Rational& a) {
    const Realisation& R = W.realisation();
    if (a.sign() < 0 || a >= Rational(1)) throw PreconditionFailed("deformation parameter outside [0, 1)");
    const int y = W.from_word(y_word);
    if (W.length(W.rmul(y, s)) < W.length(y)) throw PreconditionFailed("ys < y");
    Rational k = R.coroot_pairing(R.poly_weight(lambda), s);
    if (k.sign() <= 0) throw PositivityViolated("<lambda, " + R.letter(s) + "^vee> = " + k.str());
    Poly twisted = W.act(W.simple(s), lambda) * (Rational(1) - a);
    FactorizationDatum f = assemble(W, y_word, s, k, plain(W, y_word, twisted));
    f.lambda = lambda;
    f.deformed = true;
    f.s = s;
    f.a = a;
    return f;
}

BSElement apply_matrix(const Mat<Poly>& m, const BSElement& v) {
    BSElement out(m.rows(), Poly(0));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            if (!v[j].is_zero() && !m(i, j).is_zero()) out[i] += m(i, j) * v[j];
    return out;
}

BSElement factorization_expected(const CoxeterGroup& W, const FactorizationDatum& f, int mask) {
    BottSamelson B(W, f.source);
    BSElement c = B.basis(mask);
    BSElement out = B.right_act(c, f.lambda);
    const int y = W.from_word(f.source);
    if (!f.deformed) {
        Poly yl = W.act(y, f.lambda);
        for (int j = 0; j < B.dim(); ++j) out[j] -= yl * c[j];
        return out;
    }
    Poly sl = W.act(W.simple(f.s), f.lambda);
    BSElement mid = B.times_slot(c, sl, B.length() - 1);
    Poly ysl = W.act(y, f.lambda) * (Rational(1) - f.a);
    for (int j = 0; j < B.dim(); ++j) out[j] -= mid[j] * f.a + ysl * c[j];
    return out;
}

bool verify_composite(const CoxeterGroup& W, const FactorizationDatum& f) {
    const int n = 1 << f.source.size();
    for (int mask = 0; mask < n; ++mask) {
        BSElement e(n, Poly(0));
        e[mask] = Poly(1);
        BSElement got = apply_matrix(f.dstar, apply_matrix(f.d, e));
        BSElement want = factorization_expected(W, f, mask);
        for (int j = 0; j < n; ++j)
            if (got[j] != want[j]) return false;
    }
    return true;
}

bool verify_adjoint(const CoxeterGroup& W, const FactorizationDatum& f) {
    BottSamelson B(W, f.source);
    for (const auto& t : f.targets) {
        BottSamelson T(W, t.word);
        for (int p = 0; p < B.dim(); ++p) {
            BSElement dp(f.d.col(p).data() + t.offset, f.d.col(p).data() + t.offset + T.dim());
            for (int q = 0; q < T.dim(); ++q) {
                BSElement dq(B.dim());
                for (int j = 0; j < B.dim(); ++j) dq[j] = f.dstar(j, t.offset + q);
                if (T.form(dp, T.basis(q)) * t.weight != B.form(B.basis(p), dq)) return false;
            }
        }
    }
    return true;
}

}  // namespace lhl
