#pragma once

#include <gmpxx.h>

#include <Eigen/Core>
#include <iosfwd>
#include <string>

#include "lhl/errors.hpp"

namespace lhl {

// Exact rational in lowest terms, denominator positive.
class Rational {
public:
    Rational() = default;
    Rational(int v) : q_(v) {}
    Rational(long v) : q_(v) {}
    Rational(long long v) : q_(std::to_string(v)) {}
    Rational(long num, long den) : q_(num, den) {
        if (den == 0) throw std::domain_error("zero denominator");
        q_.canonicalize();
    }
    explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }
    explicit Rational(const mpz_class& z) : q_(z) {}

    // Accepts "p" or "p/q" with optional sign.
    static Rational parse(const std::string& s);

    const mpq_class& raw() const { return q_; }
    mpz_class num() const { return q_.get_num(); }
    mpz_class den() const { return q_.get_den(); }

    int sign() const { return sgn(q_); }
    bool is_zero() const { return sgn(q_) == 0; }
    bool is_one() const { return q_ == 1; }
    bool is_integer() const { return q_.get_den() == 1; }
    double to_double() const { return q_.get_d(); }

    Rational inverse() const {
        if (is_zero()) throw std::domain_error("inverse of zero");
        return Rational(mpq_class(1) / q_);
    }
    Rational abs() const { return sign() < 0 ? -*this : *this; }
    Rational pow(int e) const;

    std::string str() const { return q_.get_str(); }

    Rational operator-() const { return Rational(mpq_class(-q_)); }
    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw std::domain_error("division by zero");
        q_ /= o.q_;
        return *this;
    }
    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.q_ != b.q_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.q_ > b.q_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.q_ <= b.q_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.q_ >= b.q_; }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r);

private:
    mpq_class q_;
};

inline Rational abs(const Rational& r) { return r.abs(); }

template <class T>
using Mat = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
template <class T>
using Vec = Eigen::Matrix<T, Eigen::Dynamic, 1>;

using QMat = Mat<Rational>;
using QVec = Vec<Rational>;

}  // namespace lhl

namespace Eigen {
template <>
struct NumTraits<lhl::Rational> : GenericNumTraits<lhl::Rational> {
    using Real = lhl::Rational;
    using NonInteger = lhl::Rational;
    using Nested = lhl::Rational;
    using Literal = lhl::Rational;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 10,
        AddCost = 20,
        MulCost = 40
    };
    static lhl::Rational epsilon() { return 0; }
    static lhl::Rational dummy_precision() { return 0; }
    static int digits10() { return 0; }
};
}  // namespace Eigen
