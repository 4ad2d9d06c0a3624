#pragma once

#include <map>
#include <string>
#include <vector>

#include "lhl/poly.hpp"
#include "lhl/unipoly.hpp"

namespace lhl {

// Integer linear form in the simple roots, normalized so its first nonzero
// coefficient is positive. Ordered by height, then with a_s-heavy forms first.
struct Root {
    std::vector<int> c;

    int height() const;
    bool is_zero() const;
    // Returns the sign removed by normalization.
    int normalize();
    Poly poly(const VarsPtr& vars) const;
    friend bool operator<(const Root& a, const Root& b);
    friend bool operator==(const Root& a, const Root& b) { return a.c == b.c; }
};

// A Rational multiple of z^exp, the image of a homogeneous element under sigma.
struct ZTerm {
    Rational coef;
    int exp = 0;
    bool is_zero() const { return coef.is_zero(); }
};

// numerator / product of root powers, with common root factors cancelled.
class RatFunc {
public:
    RatFunc() = default;
    RatFunc(int c) : num_(c) {}
    RatFunc(const Rational& c) : num_(c) {}
    RatFunc(Poly p) : num_(std::move(p)) {}
    RatFunc(Poly num, std::map<Root, int> den);
    static RatFunc inverse_root(const VarsPtr& vars, Root r, int mult = 1);

    const Poly& num() const { return num_; }
    const std::map<Root, int>& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.empty(); }
    int den_degree() const;
    bool is_homogeneous() const { return num_.is_homogeneous(); }
    // Grading degree; meaningful for homogeneous nonzero values.
    int grading() const { return 2 * (num_.total_degree() - den_degree()); }
    Poly den_poly() const;

    RatFunc operator-() const;
    RatFunc& operator+=(const RatFunc& o);
    RatFunc& operator-=(const RatFunc& o) { return *this += -o; }
    RatFunc& operator*=(const RatFunc& o);
    friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
    friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
    friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
    RatFunc divided_by_root(Root r, int mult = 1) const;

    friend bool operator==(const RatFunc& a, const RatFunc& b);
    friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

    // Sends each simple root to values[i] * z; homogeneous input only.
    ZTerm specialize(const std::vector<Rational>& values) const;

    std::string str() const;

private:
    void reduce();
    Poly num_;
    std::map<Root, int> den_;
};

}  // namespace lhl

namespace Eigen {
template <>
struct NumTraits<lhl::RatFunc> : GenericNumTraits<lhl::RatFunc> {
    using Real = lhl::RatFunc;
    using NonInteger = lhl::RatFunc;
    using Nested = lhl::RatFunc;
    using Literal = lhl::RatFunc;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 10,
        AddCost = 100,
        MulCost = 400
    };
};
}  // namespace Eigen
