#include "lhl/ratfunc.hpp"

#include <algorithm>
#include <numeric>

namespace lhl {

int Root::height() const { return std::accumulate(c.begin(), c.end(), 0); }

bool Root::is_zero() const {
    return std::all_of(c.begin(), c.end(), [](int v) { return v == 0; });
}

int Root::normalize() {
    for (int v : c) {
        if (v > 0) return 1;
        if (v < 0) {
            for (int& w : c) w = -w;
            return -1;
        }
    }
    throw std::domain_error("zero linear form");
}

Poly Root::poly(const VarsPtr& vars) const { return Poly::linear(vars, c); }

bool operator<(const Root& a, const Root& b) {
    int ha = a.height(), hb = b.height();
    if (ha != hb) return ha < hb;
    return a.c > b.c;
}

RatFunc::RatFunc(Poly num, std::map<Root, int> den) : num_(std::move(num)) {
    for (auto& [r, m] : den) {
        if (m == 0) continue;
        if (m < 0) throw std::domain_error("negative root multiplicity");
        Root n = r;
        if (n.normalize() < 0 && (m % 2)) num_ = -num_;
        den_[n] += m;
    }
    reduce();
}

RatFunc RatFunc::inverse_root(const VarsPtr& vars, Root r, int mult) {
    return RatFunc(Poly(vars, Rational(1)), {{std::move(r), mult}});
}

int RatFunc::den_degree() const {
    int d = 0;
    for (const auto& [r, m] : den_) d += m;
    return d;
}

Poly RatFunc::den_poly() const {
    Poly p(num_.vars(), Rational(1));
    for (const auto& [r, m] : den_) p *= r.poly(num_.vars()).pow(m);
    return p;
}

void RatFunc::reduce() {
    if (num_.is_zero()) {
        den_.clear();
        return;
    }
    for (auto it = den_.begin(); it != den_.end();) {
        Poly rp = it->first.poly(num_.vars());
        while (it->second > 0) {
            auto q = divide_exact(num_, rp);
            if (!q) break;
            num_ = std::move(*q);
            --it->second;
        }
        it = it->second == 0 ? den_.erase(it) : std::next(it);
    }
}

RatFunc RatFunc::operator-() const {
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
}

RatFunc& RatFunc::operator+=(const RatFunc& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = o;
    std::map<Root, int> den = den_;
    for (const auto& [r, m] : o.den_) den[r] = std::max(den[r], m);
    const VarsPtr& vars = num_.vars() ? num_.vars() : o.num_.vars();
    auto lift = [&](const RatFunc& f) {
        Poly p = f.num_;
        for (const auto& [r, m] : den) {
            auto it = f.den_.find(r);
            int have = it == f.den_.end() ? 0 : it->second;
            if (m > have) p *= r.poly(vars).pow(m - have);
        }
        return p;
    };
    num_ = lift(*this) + lift(o);
    den_ = std::move(den);
    reduce();
    return *this;
}

RatFunc& RatFunc::operator*=(const RatFunc& o) {
    if (is_zero() || o.is_zero()) {
        num_ = num_ * o.num_;
        den_.clear();
        return *this;
    }
    num_ = num_ * o.num_;
    for (const auto& [r, m] : o.den_) den_[r] += m;
    reduce();
    return *this;
}

RatFunc RatFunc::divided_by_root(Root r, int mult) const {
    RatFunc out = *this;
    if (out.is_zero()) return out;
    if (r.normalize() < 0 && (mult % 2)) out.num_ = -out.num_;
    out.den_[r] += mult;
    out.reduce();
    return out;
}

bool operator==(const RatFunc& a, const RatFunc& b) {
    if (a.den_ == b.den_) return a.num_ == b.num_;
    return a.num_ * b.den_poly() == b.num_ * a.den_poly();
}

ZTerm RatFunc::specialize(const std::vector<Rational>& values) const {
    if (num_.is_zero()) return {Rational(0), 0};
    if (!num_.is_homogeneous()) throw PreconditionFailed("specialization of a non-homogeneous value");
    Rational c = num_.specialize(values).coeff(num_.total_degree());
    for (const auto& [r, m] : den_) {
        Rational v(0);
        for (size_t i = 0; i < r.c.size(); ++i) v += Rational(r.c[i]) * values.at(i);
        if (v.is_zero()) throw DenominatorVanishes(r.poly(num_.vars()).str());
        c /= v.pow(m);
    }
    return {c, num_.total_degree() - den_degree()};
}

std::string RatFunc::str() const {
    if (den_.empty()) return num_.str();
    std::string n = num_.str();
    if (num_.terms().size() > 1) n = "(" + n + ")";
    std::string d;
    for (const auto& [r, m] : den_) {
        if (!d.empty()) d += "*";
        Poly rp = r.poly(num_.vars());
        std::string f = rp.str();
        if (rp.terms().size() > 1) f = "(" + f + ")";
        if (m > 1) f += "^" + std::to_string(m);
        d += f;
    }
    bool single = den_.size() == 1;
    return n + "/" + (single ? d : "(" + d + ")");
}

}  // namespace lhl
