#include "lhl/rational.hpp"

#include <cctype>
#include <ostream>

namespace lhl {

namespace {

bool is_integer_text(const std::string& s) {
    size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

std::string strip(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\n");
    if (b == std::string::npos) return {};
    size_t e = s.find_last_not_of(" \t\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

Rational Rational::parse(const std::string& text) {
    std::string s = strip(text);
    size_t slash = s.find('/');
    std::string n = strip(s.substr(0, slash));
    std::string d = slash == std::string::npos ? "1" : strip(s.substr(slash + 1));
    if (!is_integer_text(n) || !is_integer_text(d)) throw ParseError("bad rational '" + text + "'");
    if (n[0] == '+') n = n.substr(1);
    if (d[0] == '+') d = d.substr(1);
    mpz_class num(n), den(d);
    if (den == 0) throw ParseError("zero denominator in '" + text + "'");
    return Rational(mpq_class(num, den));
}

Rational Rational::pow(int e) const {
    if (e < 0) return inverse().pow(-e);
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), q_.get_num_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(d.get_mpz_t(), q_.get_den_mpz_t(), static_cast<unsigned long>(e));
    return Rational(mpq_class(n, d));
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace lhl
