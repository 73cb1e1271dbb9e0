#pragma once

// Homological operator, resonances and order-by-order Poincare-Dulac reduction.

#include "reviham/field.hpp"

#include <optional>
#include <string>
#include <vector>

namespace reviham {

/// Eigenvalue attached to each diagonal coordinate: (z_j, w_j) -> (+i a_j, -i a_j)
/// for elliptic fields, (x_j, y_j) -> (+b_j, -b_j) for saddles.
std::vector<GaussianRational> diagonal_spectrum(SpectrumKind kind, const std::vector<Rational>& frequencies);

/// Field components in the coordinates where the linear part is diagonal:
/// z/zbar for elliptic fields, the real coordinates themselves for saddles.
PolyVector<GaussianRational> to_diagonal(SpectrumKind kind, const PolyMap& field);
PolyMap from_diagonal(SpectrumKind kind, const PolyVector<GaussianRational>& field);

struct ResonanceEntry {
    Monomial monomial;        // in diagonal coordinates
    int component = 0;        // diagonal coordinate s of the vector monomial x^m d/dx_s
    GaussianRational defect;  // (m, lambda) - lambda_s
    bool structural = false;  // x_s times a product of invariant pairs

    bool resonant() const { return defect.is_zero(); }
};

struct ResonanceReport {
    int order = 0;
    std::vector<ResonanceEntry> entries;
    /// lambda with a_j = lambda p_j, p_j coprime positive integers.
    std::optional<Rational> scale_factor;
    std::vector<Integer> ratios;

    std::vector<ResonanceEntry> resonant() const;
    /// Resonant entries that are not structural, i.e. genuine frequency resonances.
    std::vector<ResonanceEntry> accidental() const;
};

/// Enumerates every vector monomial of degree m in diagonal coordinates and its defect.
ResonanceReport resonance_scan(SpectrumKind kind, const std::vector<Rational>& frequencies, int m);

/// Accidental resonances of degree 2..order (empty means order-N nonresonant).
std::vector<ResonanceEntry> accidental_resonances(SpectrumKind kind, const std::vector<Rational>& frequencies,
                                                  int order);

/// Real vector fields spanning the resonant subspace of a report.
std::vector<PolyMap> resonant_real_basis(SpectrumKind kind, const ResonanceReport& report);

/// L(h) = Dh . Ax - A h on a homogeneous vector polynomial; each vector
/// monomial in diagonal coordinates is an eigenvector with eigenvalue
/// (m, lambda) - lambda_s. Throws std::invalid_argument for mixed degrees.
PolyMap homological_operator(const MatrixXr& a, const PolyMap& h);

/// Equivariant average (h + Dphi(0) . h o phi) / 2, truncated at the degree of h.
PolyMap reversible_projection(const PolyMap& h, const Involution& phi);

struct NormalFormOptions {
    /// Reversor of the input; the normalizing maps are kept equivariant. A
    /// nonlinear reversor is first linearized with the Montgomery-Bochner map.
    std::optional<Involution> involution;
    /// Reject accidental resonant terms with nonzero coefficient instead of keeping them.
    bool strict = true;
};

struct NormalFormResult {
    VectorField normal_form;
    Transformation transformation;  // forward map, old -> normal-form coordinates
    int order = 0;
    std::vector<ResonanceReport> reports;  // degrees 2..order
    std::optional<Involution> involution;  // linear reversor of the normal form
};

/// Removes all nonresonant terms of degree 2..order. Each step solves L(h) = -f_m
/// on the nonresonant monomials (zero kernel component) and pushes the field
/// forward by Id + h.
NormalFormResult poincare_dulac(const VectorField& x, int order, const NormalFormOptions& options = {});

/// True when every term above degree 1 of every component is resonant.
bool only_resonant_terms(const VectorField& x, int order);

std::string describe(const ResonanceEntry& e, SpectrumKind kind);

}  // namespace reviham
