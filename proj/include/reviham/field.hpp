#pragma once

// Vector fields on R^{2n}, involutions, the fixed symplectic structure, and
// near-identity coordinate changes with time reparametrizations.

#include "reviham/invariant.hpp"
#include "reviham/polynomial.hpp"

#include <optional>
#include <string>
#include <vector>

namespace reviham {

/// Linear part in normalized coordinates: 2x2 blocks [[0,-a],[a,0]] (elliptic)
/// or diag(b,-b) (saddle), one block per frequency.
MatrixXr normalized_linear_part(SpectrumKind kind, const std::vector<Rational>& frequencies);

/// Polynomial vector field on R^{2n}, coordinates ordered x_1, y_1, ..., x_n, y_n.
class VectorField {
public:
    VectorField() = default;
    VectorField(SpectrumKind kind, std::vector<Rational> frequencies, PolyMap components);

    /// The linear field x' = A x with A normalized for the given frequencies.
    static VectorField linear(SpectrumKind kind, std::vector<Rational> frequencies);

    int dimension() const { return static_cast<int>(components_.size()); }
    int n() const { return dimension() / 2; }
    SpectrumKind kind() const { return kind_; }
    const std::vector<Rational>& frequencies() const { return frequencies_; }
    const PolyMap& components() const { return components_; }
    const Poly& operator[](int i) const { return components_[static_cast<std::size_t>(i)]; }

    /// A = DX(0), read from the degree-1 terms.
    MatrixXr linear_part() const { return reviham::linear_part(components_); }

    /// Same kind and frequencies, new components.
    VectorField with_components(PolyMap components) const { return {kind_, frequencies_, std::move(components)}; }

    friend bool operator==(const VectorField&, const VectorField&) = default;

private:
    SpectrumKind kind_ = SpectrumKind::elliptic;
    std::vector<Rational> frequencies_;
    PolyMap components_;
};

/// Diagnostic when X(0) != 0, det DX(0) == 0, or DX(0) is not the normalized
/// block matrix of its declared frequencies; nullopt when all hold.
std::optional<std::string> simple_singularity_defect(const VectorField& x);

/// Throws NonSimpleSingularity with the diagnostic above.
void require_simple_singularity(const VectorField& x);

/// Polynomial involution phi with phi(0) = 0, stored truncated at a working order.
class Involution {
public:
    Involution() = default;
    explicit Involution(PolyMap components);

    /// phi_0(x_j, y_j) = (x_j, -y_j) for elliptic fields; (y_j, x_j) for saddles,
    /// which is the reversor of diag(b, -b) in normalized coordinates.
    static Involution canonical(int n, SpectrumKind kind);
    static Involution linear(const MatrixXr& m) { return Involution(linear_map(m)); }

    int dimension() const { return static_cast<int>(components_.size()); }
    const PolyMap& components() const { return components_; }
    MatrixXr linearization() const { return reviham::linear_part(components_); }
    bool is_linear() const;

    friend bool operator==(const Involution&, const Involution&) = default;

private:
    PolyMap components_;
};

/// Diagnostic when phi(0) != 0, phi o phi != Id up to `order`, or
/// dim Fix(Dphi(0)) != n; nullopt for a valid involution.
std::optional<std::string> involution_defect(const Involution& phi, int order);

/// The fixed matrices J (block [[0,-1],[1,0]]) and Omega ([[0,Id],[-Id,0]]), both
/// written in the interleaved order x_1, y_1, ..., x_n, y_n.
struct SymplecticStructure {
    MatrixXr j;
    MatrixXr omega;

    static SymplecticStructure standard(int n);
    /// M^t Omega M == Omega.
    bool is_symplectic(const MatrixXr& m) const;
};

/// Composition outer o inner truncated at max_degree.
PolyMap compose(const PolyMap& outer, const PolyMap& inner, int max_degree);

/// Formal inverse of a map with invertible linear part, exact up to max_degree.
PolyMap inverse_series(const PolyMap& psi, int max_degree);

/// Near-identity change of coordinates built from steps Psi_i = Id + psi_i and
/// time reparametrizations rho_i = 1 + theta_i, applied in order: the field
/// after step i is (Psi_i)_*(rho_i . Z_{i-1}).
///
/// `total` is Psi_last o ... o Psi_first and `rho` the accumulated factor with
/// Psi_*(rho . X) equal to the field after all steps, both truncated at the
/// working order.
struct Transformation {
    std::vector<PolyMap> psi;
    std::vector<Poly> theta;
    PolyMap total;
    Poly rho;
    int working_order = 0;

    static Transformation identity(int dimension, int working_order);

    /// Appends Id + step_psi with reparametrization 1 + step_theta.
    void append(PolyMap step_psi, Poly step_theta);

    bool is_identity() const;

    friend bool operator==(const Transformation&, const Transformation&) = default;
};

/// psi_* X = (Dpsi . X) o psi^{-1}, truncated at `order`.
PolyMap pushforward(const PolyMap& psi, const PolyMap& x, int order);
VectorField pushforward(const PolyMap& psi, const VectorField& x, int order);

/// Psi_*(rho . X) for the accumulated transformation.
VectorField pushforward(const Transformation& t, const VectorField& x, int order);

/// rho . X truncated at `order`. Throws PreconditionFailure when rho(0) == 0.
VectorField time_reparametrize(const VectorField& x, const Poly& rho, int order);

/// jet(Dphi . X + X o phi, order): zero exactly when phi_* X = -X to that order.
PolyMap reversibility_defect(const PolyMap& x, const Involution& phi, int order);
bool is_reversible(const VectorField& x, const Involution& phi, int order);

/// J grad H.
PolyMap hamiltonian_field(const Poly& h);

struct HamiltonianCheck {
    std::optional<Poly> hamiltonian;  // H(0) = 0 with jet(X - J grad H, order) = 0
    int failing_degree = -1;          // component degree where no H exists
    explicit operator bool() const { return hamiltonian.has_value(); }
};

/// Solves J grad H = X degree by degree. Each unknown coefficient of H appears
/// in one equation per variable it contains, so the sparse system is solved by
/// assignment and then checked for consistency.
HamiltonianCheck is_hamiltonian(const PolyMap& x, int order);
inline HamiltonianCheck is_hamiltonian(const VectorField& x, int order) { return is_hamiltonian(x.components(), order); }

Poly divergence(const PolyMap& x);

/// chi = Id + Dphi(0) o phi, which satisfies chi o phi = Dphi(0) o chi.
PolyMap montgomery_bochner(const Involution& phi, int order);

}  // namespace reviham
