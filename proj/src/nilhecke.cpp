#include "lhl/nilhecke.hpp"

namespace lhl {

NilHeckeElement NilHeckeElement::delta(int w, RatFunc f) {
    NilHeckeElement e;
    e.add(w, f);
    return e;
}

NilHeckeElement NilHeckeElement::demazure(const CoxeterGroup& W, int s) {
    const auto& vars = W.realisation().vars();
    Root as{std::vector<int>(W.rank(), 0)};
    as.c[s] = 1;
    RatFunc inv = RatFunc::inverse_root(vars, as);
    NilHeckeElement e;
    e.add(W.identity(), inv);
    e.add(W.simple(s), -inv);
    return e;
}

RatFunc NilHeckeElement::coeff(int w) const {
    auto it = c_.find(w);
    return it == c_.end() ? RatFunc(0) : it->second;
}

void NilHeckeElement::add(int w, const RatFunc& f) {
    if (f.is_zero()) return;
    auto it = c_.find(w);
    if (it == c_.end()) {
        c_.emplace(w, f);
        return;
    }
    it->second += f;
    if (it->second.is_zero()) c_.erase(it);
}

NilHeckeElement& NilHeckeElement::operator+=(const NilHeckeElement& o) {
    for (const auto& [w, f] : o.c_) add(w, f);
    return *this;
}

bool operator==(const NilHeckeElement& a, const NilHeckeElement& b) {
    if (a.c_.size() != b.c_.size()) return false;
    for (const auto& [w, f] : a.c_)
        if (b.coeff(w) != f) return false;
    return true;
}

NilHeckeElement NilHeckeElement::multiply(const CoxeterGroup& W, const NilHeckeElement& a,
                                          const NilHeckeElement& b) {
    NilHeckeElement out;
    for (const auto& [x, f] : a.c_)
        for (const auto& [y, g] : b.c_) out.add(W.mul(x, y), f * W.act(x, g));
    return out;
}

NilHeckeElement NilHeckeElement::times_demazure(const CoxeterGroup& W, int s) const {
    NilHeckeElement out;
    for (const auto& [x, f] : c_) {
        RatFunc g = f.divided_by_root(W.root_image_form(x, s));
        out.add(x, g);
        out.add(W.rmul(x, s), -g);
    }
    return out;
}

RatFunc NilHeckeElement::apply(const CoxeterGroup& W, const Poly& g) const {
    RatFunc out(0);
    for (const auto& [w, f] : c_) out += f * RatFunc(W.act(w, g));
    return out;
}

NilHeckeElement product_over_word(const CoxeterGroup& W, const std::vector<int>& word) {
    NilHeckeElement d = NilHeckeElement::delta(W.identity());
    for (int s : word) d = d.times_demazure(W, s);
    return d;
}

RatFunc equivariant_multiplicity(const CoxeterGroup& W, int x, const std::vector<int>& y_word) {
    if (!W.is_reduced(y_word)) throw NonReducedWord(W.word_name(y_word));
    return product_over_word(W, y_word).coeff(x);
}

RatFunc diagonal_multiplicity(const CoxeterGroup& W, int y) {
    RatFunc v(W.length(y) % 2 ? -1 : 1);
    for (auto [t, r] : W.left_inversions(y)) v = v.divided_by_root(W.positive_roots()[r]);
    return v;
}

CharacterizationReport check_characterization(const CoxeterGroup& W, int x, const std::vector<int>& y_word) {
    CharacterizationReport rep;
    const Realisation& R = W.realisation();
    const int y = W.from_word(y_word);
    const std::string tag = "(" + W.name(x) + ", " + W.word_name(y_word) + ")";
    RatFunc e = equivariant_multiplicity(W, x, y_word);
    if (!W.bruhat_leq(x, y) && !e.is_zero()) rep.violations.push_back("nonzero outside interval " + tag);
    if (x == y && e != diagonal_multiplicity(W, y)) rep.violations.push_back("diagonal closed form " + tag);

    std::vector<Weight> lambdas;
    for (int s = 0; s < W.rank(); ++s) {
        Weight a(W.rank(), Rational(0));
        a[s] = 1;
        lambdas.push_back(a);
    }
    lambdas.push_back(R.rho());
    const int m = static_cast<int>(y_word.size());
    for (const auto& lam : lambdas) {
        Poly lhs_factor = R.weight_poly(W.act(x, lam)) - R.weight_poly(W.act(y, lam));
        RatFunc lhs = RatFunc(lhs_factor) * e;
        RatFunc rhs(0);
        for (int i = 0; i < m; ++i) {
            std::vector<int> tail(y_word.begin() + i + 1, y_word.end());
            Rational coeff = R.coroot_pairing(W.act(W.from_word(tail), lam), y_word[i]);
            std::vector<int> del = y_word;
            del.erase(del.begin() + i);
            if (!W.is_reduced(del) || coeff.is_zero()) continue;
            rhs += RatFunc(coeff) * equivariant_multiplicity(W, x, del);
        }
        if (lhs != rhs) rep.violations.push_back("lambda recursion " + tag);
    }
    return rep;
}

std::vector<PositivityEntry> positivity_scan(const CoxeterGroup& W, const std::vector<Rational>& coweight,
                                             int max_length) {
    std::vector<PositivityEntry> out;
    for (int y = 0; y < W.size(); ++y) {
        if (max_length >= 0 && W.length(y) > max_length) continue;
        NilHeckeElement d = product_over_word(W, W.reduced_word(y));
        for (int x = 0; x < W.size(); ++x) {
            if (!W.bruhat_leq(x, y)) continue;
            PositivityEntry p{x, y, d.coeff(x), {}, 0};
            p.sigma = p.e.specialize(coweight);
            p.sign = p.sigma.coef.sign() * (W.length(x) % 2 ? -1 : 1);
            out.push_back(std::move(p));
        }
    }
    return out;
}

}  // namespace lhl
