#include "reviham/invariant.hpp"

namespace reviham {

std::string to_string(SpectrumKind kind) { return kind == SpectrumKind::elliptic ? "elliptic" : "saddle"; }

SpectrumKind parse_spectrum_kind(std::string_view text) {
    if (text == "elliptic") return SpectrumKind::elliptic;
    if (text == "saddle") return SpectrumKind::saddle;
    throw std::invalid_argument("unknown spectrum kind '" + std::string(text) + "'");
}

PolyMap invariant_images(int n, SpectrumKind kind) {
    const int d = 2 * n;
    PolyMap out;
    for (int j = 0; j < n; ++j) {
        Poly p(d);
        Monomial xx(d), yy(d);
        if (kind == SpectrumKind::elliptic) {
            xx.set(2 * j, 2);
            yy.set(2 * j + 1, 2);
            p.add_term(xx, Rational(1));
            p.add_term(yy, Rational(1));
        } else {
            xx.set(2 * j, 1);
            xx.set(2 * j + 1, 1);
            p.add_term(xx, Rational(1));
        }
        out.push_back(std::move(p));
    }
    return out;
}

Poly expand(const InvariantPolynomial& p) {
    const PolyMap images = invariant_images(p.n(), p.kind());
    return substitute(p.poly(), std::span<const Poly>(images));
}

namespace {

// Order in which the leading monomial of Delta^I is prod x_j^{2 i_j}: pure lex
// with every x_j ranked above every y_j.
bool x_first_lex_less(const Monomial& a, const Monomial& b) {
    const int d = a.dimension();
    for (int pass = 0; pass < 2; ++pass) {
        for (int i = pass; i < d; i += 2) {
            if (a[i] != b[i]) return a[i] < b[i];
        }
    }
    return false;
}

InvariantPolynomial to_invariant_saddle(const Poly& p) {
    const int n = p.dimension() / 2;
    InvariantPolynomial out(n, SpectrumKind::saddle);
    for (const auto& [m, c] : p.terms()) {
        Monomial idx(n);
        for (int j = 0; j < n; ++j) {
            if (m[2 * j] != m[2 * j + 1]) {
                throw NotInvariant("monomial " + to_string(m) + " is not a product of Gamma_j = x_j*y_j");
            }
            idx.set(j, m[2 * j]);
        }
        out.poly().add_term(idx, c);
    }
    return out;
}

InvariantPolynomial to_invariant_elliptic(const Poly& p) {
    const int n = p.dimension() / 2;
    InvariantPolynomial out(n, SpectrumKind::elliptic);
    Poly rest = p;
    const PolyMap images = invariant_images(n, SpectrumKind::elliptic);
    Substitution<Rational> expander(images, -1);
    while (!rest.is_zero()) {
        auto lead = rest.terms().begin();
        for (auto it = rest.terms().begin(); it != rest.terms().end(); ++it) {
            if (x_first_lex_less(lead->first, it->first)) lead = it;
        }
        const Monomial& m = lead->first;
        Monomial idx(n);
        for (int j = 0; j < n; ++j) {
            if (m[2 * j + 1] != 0 || m[2 * j] % 2 != 0) {
                throw NotInvariant("no polynomial in Delta_j = x_j^2+y_j^2 matches (offending monomial " +
                                   to_string(m) + ")");
            }
            idx.set(j, m[2 * j] / 2);
        }
        const Rational c = lead->second;
        out.poly().add_term(idx, c);
        rest -= expander.apply(Poly::term(idx, c));
    }
    return out;
}

}  // namespace

InvariantPolynomial to_invariant(const Poly& p, SpectrumKind kind) {
    if (p.dimension() % 2 != 0) throw DimensionMismatch("invariant rewriting needs an even-dimensional polynomial");
    return kind == SpectrumKind::elliptic ? to_invariant_elliptic(p) : to_invariant_saddle(p);
}

namespace {

// x_j = (z_j + w_j)/2, y_j = -i (z_j - w_j)/2
PolyVector<GaussianRational> real_to_complex_images(int d) {
    PolyVector<GaussianRational> images;
    const GaussianRational half(Rational(1, 2));
    const GaussianRational minus_half_i(Rational(0), Rational(-1, 2));
    for (int j = 0; j < d / 2; ++j) {
        ComplexPoly x(d), y(d);
        x.add_term(Monomial::unit(d, 2 * j), half);
        x.add_term(Monomial::unit(d, 2 * j + 1), half);
        y.add_term(Monomial::unit(d, 2 * j), minus_half_i);
        y.add_term(Monomial::unit(d, 2 * j + 1), -minus_half_i);
        images.push_back(std::move(x));
        images.push_back(std::move(y));
    }
    return images;
}

// z_j = x_j + i y_j, w_j = x_j - i y_j
PolyVector<GaussianRational> complex_to_real_images(int d) {
    PolyVector<GaussianRational> images;
    for (int j = 0; j < d / 2; ++j) {
        ComplexPoly z(d), w(d);
        z.add_term(Monomial::unit(d, 2 * j), GaussianRational(1));
        z.add_term(Monomial::unit(d, 2 * j + 1), GaussianRational::i());
        w.add_term(Monomial::unit(d, 2 * j), GaussianRational(1));
        w.add_term(Monomial::unit(d, 2 * j + 1), -GaussianRational::i());
        images.push_back(std::move(z));
        images.push_back(std::move(w));
    }
    return images;
}

}  // namespace

ComplexPoly complexify(const Poly& p) {
    const auto images = real_to_complex_images(p.dimension());
    return substitute(promote(p), std::span<const ComplexPoly>(images));
}

Poly realify(const ComplexPoly& p) {
    const auto images = complex_to_real_images(p.dimension());
    return real_part_checked(substitute(p, std::span<const ComplexPoly>(images)));
}

PolyVector<GaussianRational> complexify_field(const PolyMap& field) {
    if (field.empty()) return {};
    const int d = field.front().dimension();
    if (d % 2 != 0 || static_cast<int>(field.size()) != d) throw DimensionMismatch("complexify needs a 2n-field");
    const auto images = real_to_complex_images(d);
    Substitution<GaussianRational> sub(images, -1);
    PolyVector<GaussianRational> out;
    for (int j = 0; j < d / 2; ++j) {
        const ComplexPoly fx = sub.apply(promote(field[static_cast<std::size_t>(2 * j)]));
        const ComplexPoly fy = sub.apply(promote(field[static_cast<std::size_t>(2 * j + 1)]));
        out.push_back(fx + fy * GaussianRational::i());
        out.push_back(fx - fy * GaussianRational::i());
    }
    return out;
}

PolyMap realify_field(const PolyVector<GaussianRational>& field) {
    if (field.empty()) return {};
    const int d = field.front().dimension();
    const auto images = complex_to_real_images(d);
    Substitution<GaussianRational> sub(images, -1);
    const GaussianRational half(Rational(1, 2));
    const GaussianRational minus_half_i(Rational(0), Rational(-1, 2));
    PolyMap out;
    for (int j = 0; j < d / 2; ++j) {
        const ComplexPoly& fz = field[static_cast<std::size_t>(2 * j)];
        const ComplexPoly& fw = field[static_cast<std::size_t>(2 * j + 1)];
        out.push_back(real_part_checked(sub.apply((fz + fw) * half)));
        out.push_back(real_part_checked(sub.apply((fz - fw) * minus_half_i)));
    }
    return out;
}

}  // namespace reviham
