#include "lhl/unipoly.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

#include "lhl/errors.hpp"

namespace lhl {

UniPoly::UniPoly(const Rational& c) {
    if (!c.is_zero()) c_.push_back(c);
}

UniPoly::UniPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

UniPoly UniPoly::monomial(const Rational& c, int k) {
    if (c.is_zero()) return {};
    std::vector<Rational> v(k + 1);
    v[k] = c;
    return UniPoly(std::move(v));
}

void UniPoly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Rational UniPoly::coeff(int k) const {
    return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[k] : Rational(0);
}

int UniPoly::valuation() const {
    for (size_t k = 0; k < c_.size(); ++k)
        if (!c_[k].is_zero()) return static_cast<int>(k);
    return -1;
}

UniPoly UniPoly::operator-() const {
    UniPoly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

UniPoly& UniPoly::operator+=(const UniPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    trim();
    return *this;
}

UniPoly& UniPoly::operator-=(const UniPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
    trim();
    return *this;
}

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> c(a.c_.size() + b.c_.size() - 1);
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i].is_zero()) continue;
        for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    }
    return UniPoly(std::move(c));
}

Rational UniPoly::operator()(const Rational& x) const {
    Rational r(0);
    for (size_t k = c_.size(); k-- > 0;) r = r * x + c_[k];
    return r;
}

UniPoly UniPoly::derivative() const {
    std::vector<Rational> c;
    for (size_t k = 1; k < c_.size(); ++k) c.push_back(c_[k] * Rational(static_cast<long>(k)));
    return UniPoly(std::move(c));
}

UniPoly UniPoly::truncated(int n) const {
    if (static_cast<int>(c_.size()) <= n) return *this;
    return UniPoly(std::vector<Rational>(c_.begin(), c_.begin() + n));
}

UniPoly UniPoly::shifted_down(int k) const {
    for (int i = 0; i < k && i < static_cast<int>(c_.size()); ++i)
        if (!c_[i].is_zero()) throw InexactDivision("z-power shift drops nonzero terms");
    if (k >= static_cast<int>(c_.size())) return {};
    return UniPoly(std::vector<Rational>(c_.begin() + k, c_.end()));
}

std::string UniPoly::str(const std::string& var) const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t k = c_.size(); k-- > 0;) {
        const Rational& c = c_[k];
        if (c.is_zero()) continue;
        if (first)
            os << (c.sign() < 0 ? "-" : "");
        else
            os << (c.sign() < 0 ? " - " : " + ");
        first = false;
        Rational a = c.abs();
        std::string mono = k == 0 ? "" : (k == 1 ? var : var + "^" + std::to_string(k));
        if (mono.empty())
            os << a.str();
        else if (a.is_one())
            os << mono;
        else
            os << a.str() << "*" << mono;
    }
    return os.str();
}

std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
    if (b.is_zero()) throw std::domain_error("division by zero polynomial");
    std::vector<Rational> q(std::max(0, a.degree() - b.degree() + 1));
    std::vector<Rational> r = a.coeffs();
    Rational inv = b.lead().inverse();
    for (int k = a.degree() - b.degree(); k >= 0; --k) {
        Rational c = r[k + b.degree()] * inv;
        q[k] = c;
        if (c.is_zero()) continue;
        for (int j = 0; j <= b.degree(); ++j) r[k + j] -= c * b.coeffs()[j];
    }
    return {UniPoly(std::move(q)), UniPoly(std::move(r))};
}

std::optional<UniPoly> divide_exact(const UniPoly& a, const UniPoly& b) {
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) return std::nullopt;
    return q;
}

UniPoly exact_div(const UniPoly& a, const UniPoly& b) {
    auto q = divide_exact(a, b);
    if (!q) throw InexactDivision(a.str() + " by " + b.str());
    return *q;
}

UniPoly gcd(UniPoly a, UniPoly b) {
    while (!b.is_zero()) {
        UniPoly r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) return a;
    return a * UniPoly(a.lead().inverse());
}

UniPoly squarefree_part(const UniPoly& p) {
    if (p.degree() <= 0) return p;
    return exact_div(p, gcd(p, p.derivative()));
}

std::vector<UniPoly> sturm_sequence(const UniPoly& p) {
    if (p.is_zero()) throw ZeroPolynomial("Sturm sequence of zero");
    std::vector<UniPoly> seq{p, p.derivative()};
    while (!seq.back().is_zero()) {
        UniPoly r = divmod(seq[seq.size() - 2], seq.back()).second;
        seq.push_back(-r);
    }
    seq.pop_back();
    return seq;
}

namespace {

int sign_of_lead_at(const UniPoly& q, bool plus_infinity) {
    int s = q.lead().sign();
    if (!plus_infinity && (q.degree() % 2)) s = -s;
    return s;
}

int variations(const std::vector<UniPoly>& seq, const Bound& x, bool plus_infinity) {
    int count = 0, prev = 0;
    for (const auto& q : seq) {
        int s = x ? q(*x).sign() : sign_of_lead_at(q, plus_infinity);
        if (s == 0) continue;
        if (prev && s != prev) ++count;
        prev = s;
    }
    return count;
}

}  // namespace

int sturm_roots_in_interval(const UniPoly& p, const Bound& lo, const Bound& hi) {
    if (p.is_zero()) throw ZeroPolynomial("root count of zero polynomial");
    if (lo && hi && *lo >= *hi) return 0;
    UniPoly q = squarefree_part(p);
    if (q.degree() <= 0) return 0;
    auto seq = sturm_sequence(q);
    int n = variations(seq, lo, false) - variations(seq, hi, true);
    if (hi && q(*hi).is_zero()) --n;
    return n;
}

Rational cauchy_bound(const UniPoly& p) {
    if (p.is_zero()) throw ZeroPolynomial("bound of zero polynomial");
    Rational m(0);
    for (int k = 0; k < p.degree(); ++k) {
        Rational r = (p.coeff(k) / p.lead()).abs();
        if (r > m) m = r;
    }
    return m + Rational(1);
}

std::vector<RootInterval> isolate_roots(const UniPoly& p, const Bound& lo, const Bound& hi,
                                        const Rational& width) {
    if (p.is_zero()) throw ZeroPolynomial("isolation for zero polynomial");
    std::vector<RootInterval> out;
    UniPoly q = squarefree_part(p);
    if (q.degree() <= 0) return out;
    Rational bound = cauchy_bound(q);
    Rational a = lo ? *lo : -bound, b = hi ? *hi : bound;
    if (a < -bound) a = -bound;
    if (b > bound) b = bound;
    if (lo && a < *lo) a = *lo;
    if (a >= b) return out;
    auto seq = sturm_sequence(q);
    auto count = [&](const Rational& x, const Rational& y) {
        int n = variations(seq, x, false) - variations(seq, y, true);
        if (q(y).is_zero()) --n;
        return n;
    };
    // Open interval (x, y) holding n roots.
    std::vector<std::tuple<Rational, Rational, int>> stack{{a, b, count(a, b)}};
    while (!stack.empty()) {
        auto [x, y, n] = stack.back();
        stack.pop_back();
        if (n == 0) continue;
        if (n == 1 && y - x <= width) {
            out.push_back({x, y});
            continue;
        }
        Rational m = (x + y) / Rational(2);
        if (q(m).is_zero()) out.push_back({m, m});
        stack.emplace_back(m, y, count(m, y));
        stack.emplace_back(x, m, count(x, m));
    }
    std::sort(out.begin(), out.end(), [](const RootInterval& u, const RootInterval& v) { return u.lo < v.lo; });
    return out;
}

}  // namespace lhl
