#include <bit>

#include "lhl/bimodule.hpp"

namespace lhl {

BottSamelson::BottSamelson(const CoxeterGroup& W, std::vector<int> word) : W_(&W), word_(std::move(word)) {
    for (int s : word_)
        if (s < 0 || s >= W.rank()) throw ParseError("letter index out of range");
    const int n = W.rank();
    right_table_.assign(dim(), std::vector<BSElement>(n));
    for (int mask = 0; mask < dim(); ++mask)
        for (int s = 0; s < n; ++s) {
            BSElement out = zero();
            push(mask, W.realisation().alpha(s), length(), out);
            right_table_[mask][s] = std::move(out);
        }
}

int BottSamelson::degree(int mask) const { return 2 * std::popcount(static_cast<unsigned>(mask)) - length(); }

BSElement BottSamelson::zero() const { return BSElement(dim(), Poly(W_->realisation().vars(), Rational(0))); }

BSElement BottSamelson::basis(int mask) const {
    BSElement b = zero();
    b[mask] = Poly(W_->realisation().vars(), Rational(1));
    return b;
}

// Adds g^{(slot)} c_mask to out, sliding g left across each factor:
// past c_s unchanged, past c_id as s(g) c_id + d_s(g) c_s.
void BottSamelson::push(int mask, const Poly& g, int slot, BSElement& out) const {
    if (g.is_zero()) return;
    if (slot == 0) {
        out[mask] += g;
        return;
    }
    const int i = slot - 1;
    const int s = word_[i];
    if (mask >> i & 1) {
        push(mask, g, i, out);
        return;
    }
    push(mask, W_->act(W_->simple(s), g), i, out);
    push(mask | 1 << i, divided_difference(*W_, s, g), i, out);
}

BSElement BottSamelson::times_slot(const BSElement& b, const Poly& g, int k) const {
    BSElement out = zero();
    for (int mask = 0; mask < dim(); ++mask) {
        if (b[mask].is_zero()) continue;
        BSElement part = zero();
        push(mask, g, k, part);
        for (int j = 0; j < dim(); ++j)
            if (!part[j].is_zero()) out[j] += b[mask] * part[j];
    }
    return out;
}

BSElement BottSamelson::right_act(const BSElement& b, const Poly& g) const {
    BSElement out = zero();
    for (const auto& [mono, c] : g.terms()) {
        BSElement cur = b;
        for (int s = 0; s < W_->rank(); ++s)
            for (int e = mono.exponent(s); e > 0; --e) {
                BSElement next = zero();
                for (int mask = 0; mask < dim(); ++mask) {
                    if (cur[mask].is_zero()) continue;
                    const BSElement& t = right_table_[mask][s];
                    for (int j = 0; j < dim(); ++j)
                        if (!t[j].is_zero()) next[j] += cur[mask] * t[j];
                }
                cur = std::move(next);
            }
        for (int j = 0; j < dim(); ++j) out[j] += cur[j] * c;
    }
    return out;
}

BSElement BottSamelson::left_act(const Poly& g, const BSElement& b) const {
    BSElement out = b;
    for (auto& p : out) p = g * p;
    return out;
}

// c_mask * c_s in factor i; c_s c_s = alpha_s c_s with alpha_s in slot i.
BSElement BottSamelson::times_cs(int mask, int i) const {
    BSElement out = zero();
    if (!(mask >> i & 1)) {
        out[mask | 1 << i] = Poly(W_->realisation().vars(), Rational(1));
        return out;
    }
    push(mask, W_->realisation().alpha(word_[i]), i, out);
    return out;
}

BSElement BottSamelson::multiply(const BSElement& a, const BSElement& b) const {
    BSElement out = zero();
    for (int p = 0; p < dim(); ++p) {
        if (a[p].is_zero()) continue;
        for (int q = 0; q < dim(); ++q) {
            if (b[q].is_zero()) continue;
            BSElement cur = basis(p);
            for (int i = 0; i < length(); ++i) {
                if (!(q >> i & 1)) continue;
                BSElement next = zero();
                for (int mask = 0; mask < dim(); ++mask) {
                    if (cur[mask].is_zero()) continue;
                    BSElement t = times_cs(mask, i);
                    for (int j = 0; j < dim(); ++j)
                        if (!t[j].is_zero()) next[j] += cur[mask] * t[j];
                }
                cur = std::move(next);
            }
            Poly coef = a[p] * b[q];
            for (int j = 0; j < dim(); ++j)
                if (!cur[j].is_zero()) out[j] += coef * cur[j];
        }
    }
    return out;
}

const Mat<Poly>& BottSamelson::gram() const {
    std::call_once(gram_->once, [this] {
        Mat<Poly> g(dim(), dim());
        for (int p = 0; p < dim(); ++p)
            for (int q = p; q < dim(); ++q) {
                g(p, q) = trace(multiply(basis(p), basis(q)));
                g(q, p) = g(p, q);
            }
        gram_->gram = std::move(g);
    });
    return gram_->gram;
}

Poly BottSamelson::form(const BSElement& a, const BSElement& b) const {
    const Mat<Poly>& g = gram();
    Poly out(W_->realisation().vars(), Rational(0));
    for (int p = 0; p < dim(); ++p) {
        if (a[p].is_zero()) continue;
        for (int q = 0; q < dim(); ++q)
            if (!b[q].is_zero() && !g(p, q).is_zero()) out += a[p] * b[q] * g(p, q);
    }
    return out;
}

}  // namespace lhl
