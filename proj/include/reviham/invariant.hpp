#pragma once

// Polynomials in the quadratic invariants Delta_j = x_j^2 + y_j^2 (elliptic)
// or Gamma_j = x_j y_j (saddle), and the z / zbar complexification.

#include "reviham/polynomial.hpp"

#include <string>
#include <string_view>

namespace reviham {

enum class SpectrumKind { elliptic, saddle };

std::string to_string(SpectrumKind kind);
SpectrumKind parse_spectrum_kind(std::string_view text);

/// Polynomial in n invariants, stored as an ordinary polynomial in n variables
/// whose i-th variable stands for Delta_i (or Gamma_i).
class InvariantPolynomial {
public:
    InvariantPolynomial(int n, SpectrumKind kind) : poly_(n), kind_(kind) {}
    InvariantPolynomial(Poly poly, SpectrumKind kind) : poly_(std::move(poly)), kind_(kind) {}

    int n() const { return poly_.dimension(); }
    SpectrumKind kind() const { return kind_; }
    const Poly& poly() const { return poly_; }
    Poly& poly() { return poly_; }

    /// Coefficient of Delta^I.
    Rational coefficient(const Monomial& multi_index) const { return poly_.coefficient(multi_index); }

    friend bool operator==(const InvariantPolynomial&, const InvariantPolynomial&) = default;

private:
    Poly poly_;
    SpectrumKind kind_;
};

/// The 2n-dimensional polynomials Delta_j (or Gamma_j), j = 1..n.
PolyMap invariant_images(int n, SpectrumKind kind);

/// Expansion into the ambient variables x_1, y_1, ..., x_n, y_n.
Poly expand(const InvariantPolynomial& p);

/// Rewrites p as a polynomial in the invariants. Throws NotInvariant when no
/// such polynomial reproduces p exactly.
InvariantPolynomial to_invariant(const Poly& p, SpectrumKind kind);

/// Complexification z_j = x_j + i y_j, w_j = x_j - i y_j of a real vector
/// field: returns the components (Z_1, W_1, ..., Z_n, W_n) as polynomials in
/// (z_1, w_1, ..., z_n, w_n).
PolyVector<GaussianRational> complexify_field(const PolyMap& field);

/// Inverse of complexify_field; the result must be real and this is checked.
PolyMap realify_field(const PolyVector<GaussianRational>& field);

/// Scalar polynomial versions of the same coordinate changes.
ComplexPoly complexify(const Poly& p);
Poly realify(const ComplexPoly& p);

}  // namespace reviham
