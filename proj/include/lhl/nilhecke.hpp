#pragma once

#include <map>
#include <string>
#include <vector>

#include "lhl/coxeter.hpp"

namespace lhl {

// Finite sum of f_w delta_w; zero coordinates are never stored.
class NilHeckeElement {
public:
    NilHeckeElement() = default;
    static NilHeckeElement delta(int w, RatFunc f = RatFunc(1));
    static NilHeckeElement demazure(const CoxeterGroup& W, int s);

    const std::map<int, RatFunc>& coords() const { return c_; }
    RatFunc coeff(int w) const;
    bool is_zero() const { return c_.empty(); }

    NilHeckeElement& operator+=(const NilHeckeElement& o);
    friend bool operator==(const NilHeckeElement& a, const NilHeckeElement& b);
    friend bool operator!=(const NilHeckeElement& a, const NilHeckeElement& b) { return !(a == b); }

    // (f delta_x)(g delta_y) = f x(g) delta_{xy}.
    static NilHeckeElement multiply(const CoxeterGroup& W, const NilHeckeElement& a, const NilHeckeElement& b);
    // Right multiplication by D_s.
    NilHeckeElement times_demazure(const CoxeterGroup& W, int s) const;
    // Action on R: sum over w of f_w * w(g).
    RatFunc apply(const CoxeterGroup& W, const Poly& g) const;

private:
    void add(int w, const RatFunc& f);
    std::map<int, RatFunc> c_;
};

// D_{s_1} ... D_{s_m}; zero for non-reduced words.
NilHeckeElement product_over_word(const CoxeterGroup& W, const std::vector<int>& word);

// The delta_x coordinate of D_y for a reduced word of y.
RatFunc equivariant_multiplicity(const CoxeterGroup& W, int x, const std::vector<int>& y_word);

// (-1)^l(y) prod over t in L_T(y) of 1/alpha_t.
RatFunc diagonal_multiplicity(const CoxeterGroup& W, int y);

struct CharacterizationReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};
// Vanishing outside the Bruhat interval, the diagonal closed form, and the
// lambda-recursion for every simple root and rho.
CharacterizationReport check_characterization(const CoxeterGroup& W, int x, const std::vector<int>& y_word);

struct PositivityEntry {
    int x, y;
    RatFunc e;
    ZTerm sigma;
    int sign;  // sign of (-1)^l(x) sigma(e)
    bool positive() const { return sign > 0; }
    bool vanishes() const { return sigma.is_zero(); }
};
// Every pair x <= y with l(y) <= max_length (all of W when negative).
std::vector<PositivityEntry> positivity_scan(const CoxeterGroup& W, const std::vector<Rational>& coweight,
                                             int max_length = -1);

}  // namespace lhl
