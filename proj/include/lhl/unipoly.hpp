#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lhl/rational.hpp"

namespace lhl {

// Dense polynomial in one variable; coefficient k belongs to z^k.
class UniPoly {
public:
    UniPoly() = default;
    UniPoly(int c) : UniPoly(Rational(c)) {}
    UniPoly(const Rational& c);
    explicit UniPoly(std::vector<Rational> coeffs);
    static UniPoly monomial(const Rational& c, int k);

    const std::vector<Rational>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const Rational& lead() const { return c_.back(); }
    Rational coeff(int k) const;
    // Lowest exponent with nonzero coefficient; -1 for zero.
    int valuation() const;

    UniPoly operator-() const;
    UniPoly& operator+=(const UniPoly& o);
    UniPoly& operator-=(const UniPoly& o);
    UniPoly& operator*=(const UniPoly& o) { return *this = *this * o; }
    friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
    friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const UniPoly& a, const UniPoly& b) { return a.c_ != b.c_; }

    Rational operator()(const Rational& x) const;
    UniPoly derivative() const;
    // Keeps only exponents < n.
    UniPoly truncated(int n) const;
    UniPoly shifted_down(int k) const;

    std::string str(const std::string& var = "z") const;

private:
    void trim();
    std::vector<Rational> c_;
};

// Euclidean division over Q.
std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b);
std::optional<UniPoly> divide_exact(const UniPoly& a, const UniPoly& b);
UniPoly exact_div(const UniPoly& a, const UniPoly& b);
UniPoly gcd(UniPoly a, UniPoly b);
UniPoly squarefree_part(const UniPoly& p);

// Endpoint of an interval; nullopt encodes an infinite endpoint.
using Bound = std::optional<Rational>;

std::vector<UniPoly> sturm_sequence(const UniPoly& p);
// Distinct real roots of p in the open interval (lo, hi).
int sturm_roots_in_interval(const UniPoly& p, const Bound& lo, const Bound& hi);

struct RootInterval {
    Rational lo, hi;  // root in [lo, hi]; lo == hi for an exact rational root
};
// Disjoint isolating intervals, ascending, for the distinct real roots in (lo, hi),
// each refined to width at most `width`.
std::vector<RootInterval> isolate_roots(const UniPoly& p, const Bound& lo, const Bound& hi,
                                        const Rational& width = Rational(1, 1024));
// A rational upper bound on the absolute value of every real root.
Rational cauchy_bound(const UniPoly& p);

}  // namespace lhl

namespace Eigen {
template <>
struct NumTraits<lhl::UniPoly> : GenericNumTraits<lhl::UniPoly> {
    using Real = lhl::UniPoly;
    using NonInteger = lhl::UniPoly;
    using Nested = lhl::UniPoly;
    using Literal = lhl::UniPoly;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 10,
        AddCost = 50,
        MulCost = 200
    };
};
}  // namespace Eigen
