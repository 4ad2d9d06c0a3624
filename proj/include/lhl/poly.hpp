#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lhl/rational.hpp"

namespace lhl {

constexpr int kMaxVars = 8;

// Generator names of a polynomial ring. Two rings agree iff their names agree.
struct VarSet {
    std::vector<std::string> names;
    int size() const { return static_cast<int>(names.size()); }
};
using VarsPtr = std::shared_ptr<const VarSet>;

// Default names a_s, a_t, a_u, ... for simple roots in declared order.
std::string simple_letter(int i);
VarsPtr root_vars(int rank);
VarsPtr named_vars(std::vector<std::string> names);

// Exponent vector packed one byte per variable, variable 0 in the top byte,
// so that integer comparison is lexicographic comparison.
class Monomial {
public:
    constexpr Monomial() = default;
    static Monomial var(int i, int e = 1);

    int exponent(int i) const { return static_cast<int>((bits_ >> shift(i)) & 0xff); }
    int degree() const;
    uint64_t bits() const { return bits_; }
    bool is_one() const { return bits_ == 0; }

    bool divides(const Monomial& o) const;
    Monomial operator*(const Monomial& o) const;
    Monomial operator/(const Monomial& o) const;

    // Graded-lex: higher total degree first, then lexicographic.
    friend bool grlex_greater(const Monomial& a, const Monomial& b) {
        int da = a.degree(), db = b.degree();
        return da != db ? da > db : a.bits_ > b.bits_;
    }
    friend bool operator==(const Monomial& a, const Monomial& b) { return a.bits_ == b.bits_; }
    friend bool operator!=(const Monomial& a, const Monomial& b) { return a.bits_ != b.bits_; }

private:
    static int shift(int i) { return 8 * (kMaxVars - 1 - i); }
    explicit constexpr Monomial(uint64_t b) : bits_(b) {}
    uint64_t bits_ = 0;
};

class UniPoly;

// Sparse polynomial over Q with terms kept in descending graded-lex order.
// A null ring pointer marks a ring-agnostic constant; it adopts the ring of
// whatever it is combined with. Each variable has grading degree 2.
class Poly {
public:
    using Term = std::pair<Monomial, Rational>;

    Poly() = default;
    Poly(int c) : Poly(Rational(c)) {}
    Poly(const Rational& c);
    Poly(VarsPtr vars, const Rational& c);

    static Poly var(VarsPtr vars, int i);
    // Sum of coeffs[i] * x_i.
    static Poly linear(VarsPtr vars, const std::vector<Rational>& coeffs);
    static Poly linear(VarsPtr vars, const std::vector<int>& coeffs);
    static Poly from_terms(VarsPtr vars, std::vector<Term> terms);
    static Poly parse(const std::string& text, VarsPtr vars);

    const VarsPtr& vars() const { return vars_; }
    int nvars() const { return vars_ ? vars_->size() : 0; }
    const std::vector<Term>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one()); }
    Rational constant_term() const;
    Rational coeff(const Monomial& m) const;
    const Term& leading() const { return terms_.front(); }

    // Largest total exponent; -1 for zero.
    int total_degree() const;
    bool is_homogeneous() const;
    // Grading degree 2*(total exponent) of a homogeneous polynomial.
    int grading() const { return 2 * total_degree(); }
    Poly homogeneous_part(int total_exponent) const;

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Poly& o) { return *this = *this * o; }
    Poly& operator*=(const Rational& c);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
    friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
    Poly pow(int e) const;

    friend bool operator==(const Poly& a, const Poly& b);
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    // Substitutes x_i -> images[i] (a ring endomorphism).
    Poly substitute(const std::vector<Poly>& images) const;
    Rational evaluate(const std::vector<Rational>& point) const;
    // x_i -> values[i] * z.
    UniPoly specialize(const std::vector<Rational>& values) const;

    // Exact quotient a / b, or nullopt when b does not divide a.
    friend std::optional<Poly> divide_exact(const Poly& a, const Poly& b);

    // Canonical text: terms in graded-lex order, coefficients as p/q.
    std::string str() const;

private:
    void adopt(const Poly& o);
    VarsPtr vars_;
    std::vector<Term> terms_;
};

inline Poly exact_div(const Poly& a, const Poly& b) {
    auto q = divide_exact(a, b);
    if (!q) throw InexactDivision(a.str() + " by " + b.str());
    return *q;
}

}  // namespace lhl

namespace Eigen {
template <>
struct NumTraits<lhl::Poly> : GenericNumTraits<lhl::Poly> {
    using Real = lhl::Poly;
    using NonInteger = lhl::Poly;
    using Nested = lhl::Poly;
    using Literal = lhl::Poly;
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
