#pragma once

// Orbital equivalence of reversible normal forms to Hamiltonian fields.
//
// A field of the invariant shape
//   elliptic: x_j' = -y_j F_j(Delta), y_j' = x_j F_j(Delta),  Delta_j = x_j^2 + y_j^2
//   saddle:   x_j' =  x_j F_j(Gamma), y_j' = -y_j F_j(Gamma), Gamma_j = x_j y_j
// is determined by F = (F_1, ..., F_n), F_j = freq_j + f_j, and it is Hamiltonian
// exactly when F = c grad H(Delta) with c = 2 (elliptic) or -1 (saddle). The maps
// x_j -> x_j (1 + sigma_j), y_j -> y_j (1 + sigma_j) and the factors 1 + theta,
// all functions of the invariants, act on F alone, so the whole induction runs
// on n-variable polynomials and is expanded to R^{2n} only at the end.

#include "reviham/certificate.hpp"
#include "reviham/normalform.hpp"

#include <optional>
#include <vector>

namespace reviham {

/// Hamiltonian scale c with F = c grad H.
Rational gradient_scale(SpectrumKind kind);

class InvariantField {
public:
    InvariantField() = default;
    /// f[j] holds F_j - freq_j as a polynomial in the n invariants.
    InvariantField(SpectrumKind kind, std::vector<Rational> frequencies, std::vector<Poly> f);

    int n() const { return static_cast<int>(frequencies_.size()); }
    SpectrumKind kind() const { return kind_; }
    const std::vector<Rational>& frequencies() const { return frequencies_; }
    const std::vector<Poly>& f() const { return f_; }
    /// F_j including the frequency.
    Poly full(int j) const;

    /// a_{j,I}: coefficient of Delta^I in f_j.
    Rational coefficient(int j, const Monomial& multi_index) const { return f_[static_cast<std::size_t>(j)].coefficient(multi_index); }
    /// Cubic cross-coefficients c(j, r) = a_{j, e_r}.
    MatrixXr cubic_block() const;

    /// The vector field on R^{2n}.
    VectorField expand() const;

    friend bool operator==(const InvariantField&, const InvariantField&) = default;

private:
    SpectrumKind kind_ = SpectrumKind::elliptic;
    std::vector<Rational> frequencies_;
    std::vector<Poly> f_;
};

/// Reads F off a field of the invariant shape, dropping terms above `order`.
/// Throws ShapeViolation naming the first offending component.
InvariantField extract_invariant_form(const VectorField& x, int order);

/// Product of all a_{j,e_r}.
Rational check_genericity(const MatrixXr& cubic_block);

/// a_{j,e_r} == a_{r,e_j} for all j, r.
bool check_j3_hamiltonian(const MatrixXr& cubic_block);

struct HamiltonizationStep {
    int k = 0;
    Poly h;                  // coefficients h_I, |I| = k + 2, of the new Hamiltonian part
    Poly theta;              // theta_I, |I| = k + 1
    std::vector<Poly> mu;    // mu_{j,I}, |I| = k: sigma_j

    friend bool operator==(const HamiltonizationStep&, const HamiltonizationStep&) = default;
};

/// Solves the degree-(k+1) equations in the invariants:
///   f_j[I] + freq_j theta_I - 2 sum_r a_{j,e_r} mu_{r,I-e_r} - c (I_j + 1) h_{I+e_j} = 0
/// for all j and |I| = k + 1. Free unknowns are set to zero, with pivots taken
/// from h first, then theta, then mu. Throws SingularSystem when inconsistent.
HamiltonizationStep solve_step(const InvariantField& current, int k, HamiltonizeMode mode);

/// ((1 + theta) F) o Phi^{-1} with Phi_j(Delta) = Delta_j (1 + sigma_j)^2, truncated
/// at invariant degree `max_degree`.
InvariantField apply_step(const InvariantField& current, const HamiltonizationStep& step, int max_degree);

/// H(Delta) with c dH/dDelta_j = F_j; nullopt when F is not a gradient.
std::optional<Poly> invariant_hamiltonian(const InvariantField& x);

/// Group generated by two linear involutions with the sign of each element
/// (-1 for words of odd length). Throws PreconditionFailure when it is not finite of order <= 64.
std::vector<std::pair<MatrixXr, int>> reversing_group(const MatrixXr& g1, const MatrixXr& g2);

/// The per-plane swap (x_j, y_j) -> (y_j, x_j), the second D4 reversor of an elliptic field.
Involution plane_swap(int n);

/// X is g1- and g2-reversible to its degree, a_1 : a_2 = r1 : r2 exactly, both odd,
/// r1 r2 > 1, and g1, g2 generate a group of order 8.
bool check_d4_preconditions(const VectorField& x, const Involution& g1, const Involution& g2, int r1, int r2);

/// H in closed form for n = 1: a u / 2 + (1/2) int_0^u f (elliptic, u = Delta_1) or
/// -b g - int_0^g f (saddle, g = Gamma_1).
Poly closed_form_2d(const VectorField& x, int order);

/// Runs the induction on a normal form. The certificate's input is the normal
/// form itself with an identity normal-form map.
Certificate hamiltonize(const VectorField& normal_form, int order, HamiltonizeMode mode, const Involution& phi,
                        const std::optional<D4Structure>& d4 = std::nullopt);

/// Reversible Poincare-Dulac reduction followed by hamiltonize.
Certificate certify(const VectorField& x, int order, HamiltonizeMode mode, const Involution& phi,
                    const std::optional<D4Structure>& d4 = std::nullopt);

}  // namespace reviham
