#include "reviham/polynomial.hpp"

#include <sstream>

namespace reviham {

std::vector<Monomial> monomials_of_degree(int dimension, int degree) {
    std::vector<Monomial> out;
    std::vector<int> e(static_cast<std::size_t>(dimension), 0);
    // Enumerate compositions of `degree` into `dimension` parts, first exponent descending.
    auto rec = [&](auto&& self, int pos, int remaining) -> void {
        if (pos == dimension - 1) {
            e[static_cast<std::size_t>(pos)] = remaining;
            out.emplace_back(std::span<const int>(e));
            return;
        }
        for (int v = remaining; v >= 0; --v) {
            e[static_cast<std::size_t>(pos)] = v;
            self(self, pos + 1, remaining - v);
        }
    };
    if (dimension == 0) {
        if (degree == 0) out.emplace_back(0);
        return out;
    }
    rec(rec, 0, degree);
    return out;
}

MatrixXr linear_part(const PolyMap& p) {
    const auto n = static_cast<Eigen::Index>(p.size());
    MatrixXr m = MatrixXr::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const Poly& pi = p[static_cast<std::size_t>(i)];
        for (Eigen::Index k = 0; k < pi.dimension(); ++k) {
            m(i, k) = pi.coefficient(Monomial::unit(pi.dimension(), static_cast<int>(k)));
        }
    }
    return m;
}

PolyMap linear_map(const MatrixXr& m) {
    const int d = static_cast<int>(m.cols());
    PolyMap out;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Poly p(d);
        for (Eigen::Index k = 0; k < m.cols(); ++k) p.add_term(Monomial::unit(d, static_cast<int>(k)), m(i, k));
        out.push_back(std::move(p));
    }
    return out;
}

PolyMap apply_matrix(const MatrixXr& m, const PolyMap& v) {
    if (static_cast<std::size_t>(m.cols()) != v.size()) throw DimensionMismatch("matrix/vector size mismatch");
    PolyMap out;
    const int d = v.empty() ? 0 : v.front().dimension();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Poly acc(d);
        for (Eigen::Index k = 0; k < m.cols(); ++k) {
            if (m(i, k) != 0) acc += v[static_cast<std::size_t>(k)] * m(i, k);
        }
        out.push_back(std::move(acc));
    }
    return out;
}

ComplexPoly promote(const Poly& p) {
    ComplexPoly r(p.dimension());
    for (const auto& [m, c] : p.terms()) r.add_term(m, GaussianRational(c));
    return r;
}

Poly real_part_checked(const ComplexPoly& p) {
    Poly r(p.dimension());
    for (const auto& [m, c] : p.terms()) {
        if (!c.is_real()) throw std::logic_error("expected a real polynomial, found coefficient with imaginary part");
        r.add_term(m, c.real());
    }
    return r;
}

std::string variable_name(int dimension, int index) {
    if (dimension % 2 == 0) {
        return std::string(index % 2 == 0 ? "x" : "y") + std::to_string(index / 2 + 1);
    }
    return "v" + std::to_string(index + 1);
}

std::string serialize(const Poly& p) {
    std::string out;
    for (const auto& [m, c] : p.terms()) {
        out += format_signed_rational(c);
        for (int i = 0; i < m.dimension(); ++i) {
            out += ' ';
            out += variable_name(m.dimension(), i);
            out += '^';
            out += std::to_string(m[i]);
        }
        out += '\n';
    }
    return out;
}

void parse_term_line(std::string_view line, Poly& p) {
    std::istringstream in{std::string(line)};
    std::string coeff;
    if (!(in >> coeff) || (coeff[0] != '+' && coeff[0] != '-')) {
        throw std::invalid_argument("term must start with a signed rational");
    }
    const Rational c = parse_rational(coeff);
    Monomial m(p.dimension());
    for (int i = 0; i < p.dimension(); ++i) {
        std::string tok;
        if (!(in >> tok)) throw std::invalid_argument("term has too few variables");
        const std::string expected = variable_name(p.dimension(), i) + "^";
        if (tok.rfind(expected, 0) != 0) throw std::invalid_argument("expected variable '" + expected + "' in term");
        const std::string exp = tok.substr(expected.size());
        if (exp.empty() || exp.find_first_not_of("0123456789") != std::string::npos) {
            throw std::invalid_argument("bad exponent '" + exp + "'");
        }
        m.set(i, std::stoi(exp));
    }
    std::string extra;
    if (in >> extra) throw std::invalid_argument("trailing token '" + extra + "' in term");
    if (c == 0) throw std::invalid_argument("zero coefficient in term");
    if (p.coefficient(m) != 0) throw std::invalid_argument("duplicate monomial in polynomial");
    p.add_term(m, c);
}

std::string to_string(const Monomial& m) {
    std::string out;
    for (int i = 0; i < m.dimension(); ++i) {
        if (m[i] == 0) continue;
        if (!out.empty()) out += '*';
        out += variable_name(m.dimension(), i);
        if (m[i] > 1) out += "^" + std::to_string(m[i]);
    }
    return out.empty() ? "1" : out;
}

std::string to_string(const Poly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (const auto& [m, c] : p.terms()) {
        if (!out.empty()) out += ' ';
        out += format_signed_rational(c);
        if (m.degree() > 0) out += "*" + to_string(m);
    }
    return out;
}

}  // namespace reviham
