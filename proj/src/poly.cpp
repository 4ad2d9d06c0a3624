#include "lhl/poly.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "lhl/unipoly.hpp"

namespace lhl {

std::string simple_letter(int i) {
    static const char* letters = "stuvwpqr";
    if (i < 0 || i >= kMaxVars) throw UnsupportedType("rank exceeds " + std::to_string(kMaxVars));
    return std::string(1, letters[i]);
}

VarsPtr root_vars(int rank) {
    static std::map<int, VarsPtr> cache;
    auto it = cache.find(rank);
    if (it != cache.end()) return it->second;
    auto v = std::make_shared<VarSet>();
    for (int i = 0; i < rank; ++i) v->names.push_back("a_" + simple_letter(i));
    cache[rank] = v;
    return v;
}

VarsPtr named_vars(std::vector<std::string> names) {
    if (static_cast<int>(names.size()) > kMaxVars) throw UnsupportedType("too many variables");
    auto v = std::make_shared<VarSet>();
    v->names = std::move(names);
    return v;
}

// ---- Monomial ----

Monomial Monomial::var(int i, int e) {
    if (i < 0 || i >= kMaxVars) throw UnsupportedType("variable index out of range");
    return Monomial(static_cast<uint64_t>(e) << shift(i));
}

int Monomial::degree() const {
    int d = 0;
    for (uint64_t b = bits_; b; b >>= 8) d += static_cast<int>(b & 0xff);
    return d;
}

bool Monomial::divides(const Monomial& o) const {
    for (int i = 0; i < kMaxVars; ++i)
        if (exponent(i) > o.exponent(i)) return false;
    return true;
}

Monomial Monomial::operator*(const Monomial& o) const {
    for (int i = 0; i < kMaxVars; ++i)
        if (exponent(i) + o.exponent(i) > 255) throw std::overflow_error("monomial exponent overflow");
    return Monomial(bits_ + o.bits_);
}

Monomial Monomial::operator/(const Monomial& o) const { return Monomial(bits_ - o.bits_); }

// ---- Poly ----

namespace {

struct GrlexDesc {
    bool operator()(const Poly::Term& a, const Poly::Term& b) const {
        return grlex_greater(a.first, b.first);
    }
};

const std::vector<std::string>& names_for(const VarsPtr& v, int needed) {
    if (v) return v->names;
    return root_vars(std::max(needed, 1))->names;
}

}  // namespace

Poly::Poly(const Rational& c) {
    if (!c.is_zero()) terms_.emplace_back(Monomial(), c);
}

Poly::Poly(VarsPtr vars, const Rational& c) : Poly(c) { vars_ = std::move(vars); }

Poly Poly::var(VarsPtr vars, int i) {
    if (vars && i >= vars->size()) throw VariableMismatch("variable index out of range");
    Poly p;
    p.vars_ = std::move(vars);
    p.terms_.emplace_back(Monomial::var(i), Rational(1));
    return p;
}

Poly Poly::linear(VarsPtr vars, const std::vector<Rational>& coeffs) {
    std::vector<Term> t;
    for (size_t i = 0; i < coeffs.size(); ++i)
        if (!coeffs[i].is_zero()) t.emplace_back(Monomial::var(static_cast<int>(i)), coeffs[i]);
    return from_terms(std::move(vars), std::move(t));
}

Poly Poly::linear(VarsPtr vars, const std::vector<int>& coeffs) {
    std::vector<Rational> r(coeffs.begin(), coeffs.end());
    return linear(std::move(vars), r);
}

Poly Poly::from_terms(VarsPtr vars, std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(), GrlexDesc());
    Poly p;
    p.vars_ = std::move(vars);
    for (auto& t : terms) {
        if (!p.terms_.empty() && p.terms_.back().first == t.first)
            p.terms_.back().second += t.second;
        else
            p.terms_.push_back(std::move(t));
        if (p.terms_.back().second.is_zero()) p.terms_.pop_back();
    }
    return p;
}

void Poly::adopt(const Poly& o) {
    if (!o.vars_ || vars_ == o.vars_) return;
    if (!vars_) {
        vars_ = o.vars_;
        return;
    }
    if (vars_->names != o.vars_->names) throw VariableMismatch("polynomials over different rings");
}

Rational Poly::constant_term() const {
    if (!terms_.empty() && terms_.back().first.is_one()) return terms_.back().second;
    return Rational(0);
}

Rational Poly::coeff(const Monomial& m) const {
    for (const auto& t : terms_)
        if (t.first == m) return t.second;
    return Rational(0);
}

int Poly::total_degree() const { return terms_.empty() ? -1 : terms_.front().first.degree(); }

bool Poly::is_homogeneous() const {
    if (terms_.empty()) return true;
    int d = terms_.front().first.degree();
    return terms_.back().first.degree() == d;
}

Poly Poly::homogeneous_part(int k) const {
    Poly r;
    r.vars_ = vars_;
    for (const auto& t : terms_)
        if (t.first.degree() == k) r.terms_.push_back(t);
    return r;
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
}

namespace {

template <class Op>
std::vector<Poly::Term> merge_terms(const std::vector<Poly::Term>& a, const std::vector<Poly::Term>& b, Op op) {
    std::vector<Poly::Term> out;
    out.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && grlex_greater(a[i].first, b[j].first))) {
            out.push_back(a[i++]);
        } else if (i == a.size() || grlex_greater(b[j].first, a[i].first)) {
            out.emplace_back(b[j].first, op(Rational(0), b[j].second));
            ++j;
        } else {
            Rational c = op(a[i].second, b[j].second);
            if (!c.is_zero()) out.emplace_back(a[i].first, std::move(c));
            ++i, ++j;
        }
    }
    return out;
}

}  // namespace

Poly& Poly::operator+=(const Poly& o) {
    adopt(o);
    terms_ = merge_terms(terms_, o.terms_, [](const Rational& x, const Rational& y) { return x + y; });
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    adopt(o);
    terms_ = merge_terms(terms_, o.terms_, [](const Rational& x, const Rational& y) { return x - y; });
    return *this;
}

Poly& Poly::operator*=(const Rational& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& t : terms_) t.second *= c;
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    Poly r;
    r.vars_ = a.vars_;
    r.adopt(b);
    if (a.is_zero() || b.is_zero()) return r;
    std::vector<Poly::Term> prod;
    prod.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& x : a.terms_)
        for (const auto& y : b.terms_) prod.emplace_back(x.first * y.first, x.second * y.second);
    Poly m = Poly::from_terms(r.vars_, std::move(prod));
    return m;
}

Poly Poly::pow(int e) const {
    if (e < 0) throw std::domain_error("negative power of polynomial");
    Poly r(vars_, Rational(1)), b = *this;
    while (e) {
        if (e & 1) r *= b;
        e >>= 1;
        if (e) b *= b;
    }
    return r;
}

bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }

Poly Poly::substitute(const std::vector<Poly>& images) const {
    std::vector<std::vector<Poly>> powers(images.size());
    Poly r;
    r.vars_ = vars_;
    for (const auto& im : images) r.adopt(im);
    for (const auto& t : terms_) {
        Poly term(r.vars_, t.second);
        for (int i = 0; i < kMaxVars; ++i) {
            int e = t.first.exponent(i);
            if (!e) continue;
            if (i >= static_cast<int>(images.size())) throw VariableMismatch("substitution too short");
            auto& pw = powers[i];
            if (pw.empty()) pw.push_back(Poly(r.vars_, Rational(1)));
            while (static_cast<int>(pw.size()) <= e) pw.push_back(pw.back() * images[i]);
            term *= pw[e];
        }
        r += term;
    }
    return r;
}

Rational Poly::evaluate(const std::vector<Rational>& point) const {
    Rational s(0);
    for (const auto& t : terms_) {
        Rational v = t.second;
        for (int i = 0; i < kMaxVars; ++i) {
            int e = t.first.exponent(i);
            if (!e) continue;
            if (i >= static_cast<int>(point.size())) throw VariableMismatch("evaluation point too short");
            v *= point[i].pow(e);
        }
        s += v;
    }
    return s;
}

UniPoly Poly::specialize(const std::vector<Rational>& values) const {
    std::vector<Rational> c(terms_.empty() ? 0 : total_degree() + 1);
    for (const auto& t : terms_) {
        Rational v = t.second;
        for (int i = 0; i < kMaxVars; ++i) {
            int e = t.first.exponent(i);
            if (!e) continue;
            if (i >= static_cast<int>(values.size())) throw VariableMismatch("coweight too short");
            v *= values[i].pow(e);
        }
        c[t.first.degree()] += v;
    }
    return UniPoly(std::move(c));
}

std::optional<Poly> divide_exact(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw std::domain_error("division by zero polynomial");
    Poly q, r = a;
    q.vars_ = a.vars_;
    q.adopt(b);
    const auto& lt = b.leading();
    Rational inv = lt.second.inverse();
    while (!r.is_zero()) {
        const auto& t = r.leading();
        if (!lt.first.divides(t.first)) return std::nullopt;
        Poly step = Poly::from_terms(q.vars_, {{t.first / lt.first, t.second * inv}});
        q += step;
        r -= step * b;
    }
    return q;
}

std::string Poly::str() const {
    if (terms_.empty()) return "0";
    int needed = 0;
    for (const auto& t : terms_)
        for (int i = 0; i < kMaxVars; ++i)
            if (t.first.exponent(i)) needed = std::max(needed, i + 1);
    const auto& names = names_for(vars_, needed);
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (first)
            os << (c.sign() < 0 ? "-" : "");
        else
            os << (c.sign() < 0 ? " - " : " + ");
        first = false;
        Rational a = c.abs();
        std::string mono;
        for (int i = 0; i < kMaxVars; ++i) {
            int e = m.exponent(i);
            if (!e) continue;
            if (!mono.empty()) mono += "*";
            mono += names.at(i);
            if (e > 1) mono += "^" + std::to_string(e);
        }
        if (mono.empty())
            os << a.str();
        else if (a.is_one())
            os << mono;
        else
            os << a.str() << "*" << mono;
    }
    return os.str();
}

Poly Poly::parse(const std::string& text, VarsPtr vars) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) throw ParseError("empty polynomial");
    const auto& names = names_for(vars, kMaxVars);
    std::vector<Term> terms;
    size_t pos = 0;
    while (pos < s.size()) {
        int sign = 1;
        if (s[pos] == '+' || s[pos] == '-') {
            sign = s[pos] == '-' ? -1 : 1;
            ++pos;
        } else if (pos != 0) {
            throw ParseError("expected sign in '" + text + "'");
        }
        size_t end = pos;
        while (end < s.size() && s[end] != '+' && s[end] != '-') ++end;
        std::string term = s.substr(pos, end - pos);
        pos = end;
        if (term.empty()) throw ParseError("empty term in '" + text + "'");
        Rational c(sign);
        Monomial m;
        std::stringstream ts(term);
        std::string factor;
        while (std::getline(ts, factor, '*')) {
            if (factor.empty()) throw ParseError("empty factor in '" + text + "'");
            if (std::isdigit(static_cast<unsigned char>(factor[0]))) {
                c *= Rational::parse(factor);
                continue;
            }
            size_t caret = factor.find('^');
            std::string name = factor.substr(0, caret);
            int e = caret == std::string::npos ? 1 : std::stoi(factor.substr(caret + 1));
            auto it = std::find(names.begin(), names.end(), name);
            if (it == names.end()) throw ParseError("unknown variable '" + name + "'");
            m = m * Monomial::var(static_cast<int>(it - names.begin()), e);
        }
        terms.emplace_back(m, c);
    }
    return from_terms(std::move(vars), std::move(terms));
}

}  // namespace lhl
