#include "reviham/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace reviham {

namespace {

bool is_integer_text(std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    }
    return true;
}

Integer parse_integer(std::string_view s) {
    if (!s.empty() && s[0] == '+') s.remove_prefix(1);
    return Integer(std::string(s));
}

}  // namespace

Rational parse_rational(std::string_view text) {
    const auto slash = text.find('/');
    const std::string_view num = text.substr(0, slash);
    if (!is_integer_text(num)) throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    Integer p = parse_integer(num);
    Integer q = 1;
    if (slash != std::string_view::npos) {
        const std::string_view den = text.substr(slash + 1);
        if (!is_integer_text(den) || den[0] == '-' || den[0] == '+') {
            throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
        }
        q = parse_integer(den);
        if (q == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    }
    // The two-integer constructor canonicalizes.
    return Rational(p, q);
}

std::string format_rational(const Rational& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

std::string format_signed_rational(const Rational& r) {
    if (r < 0) return "-" + format_rational(-r);
    return "+" + format_rational(r);
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
    const Rational n = o.norm2();
    if (n == 0) throw std::domain_error("division by zero Gaussian rational");
    *this *= o.conj();
    re_ /= n;
    im_ /= n;
    return *this;
}

std::ostream& operator<<(std::ostream& os, const GaussianRational& z) {
    os << format_rational(z.real());
    if (z.imag() != 0) os << (z.imag() < 0 ? "-" : "+") << format_rational(abs(z.imag())) << "i";
    return os;
}

}  // namespace reviham
