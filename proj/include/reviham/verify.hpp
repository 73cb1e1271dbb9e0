#pragma once

// Independent re-verification of certificates and a floating-point witness of
// the formal order through energy drift.

#include "reviham/certificate.hpp"

#include <optional>
#include <string>
#include <vector>

namespace reviham {

struct VerificationReport {
    bool ok = true;
    std::string failed_check;  // empty when ok
    int degree = -1;           // lowest failing degree, when meaningful
    int component = -1;        // failing component, when meaningful
    std::string detail;
    std::vector<std::string> passed;

    explicit operator bool() const { return ok; }
    std::string summary() const;
    void fail(std::string check, std::string why, int deg = -1, int comp = -1) {
        ok = false;
        failed_check = std::move(check);
        detail = std::move(why);
        degree = deg;
        component = comp;
    }
};

/// Recomputes every claim of the certificate with field-level operations only:
/// the normal-form conjugacy, reversibility, each induction step and the final
/// conjugacy Psi_*(rho X~) = Y, the Hamiltonian, the genericity product and the
/// mode-specific structure. Stops at the first failing check.
VerificationReport verify_certificate(const Certificate& c);

/// The normal-form stage: hypotheses, the recomposed map and its conjugacy.
VerificationReport verify_normal_form(const NormalFormCertificate& c);

/// Nonlinear part of component pair j depends only on (x_j, y_j) for every j.
bool decoupled_beyond_cubic(const PolyMap& field);

/// Cubic cross-coefficients read directly from the field components.
MatrixXr cubic_cross_coefficients(const VectorField& x);

/// Polynomial map compiled for double evaluation. Coefficients are rounded to
/// the nearest double once, here.
class FloatMap {
public:
    explicit FloatMap(const PolyMap& map);
    explicit FloatMap(const Poly& p) : FloatMap(PolyMap{p}) {}

    int dimension() const { return dim_; }
    std::vector<double> operator()(const std::vector<double>& x) const;
    double scalar(const std::vector<double>& x) const { return (*this)(x).front(); }

private:
    struct Term {
        double coeff;
        std::vector<std::pair<int, int>> powers;  // (variable, exponent)
    };
    int dim_ = 0;
    std::vector<std::vector<Term>> components_;
};

/// Classical fixed-step RK4; returns the state after each step, starting with x0.
/// Throws IntegrationError on a nonfinite state.
std::vector<std::vector<double>> integrate(const FloatMap& field, const std::vector<double>& x0, double t_end, double dt);

struct DriftReport {
    std::vector<double> radii;   // strictly decreasing
    std::vector<double> drifts;  // max |H(x(t)) - H(x(0))|
    std::optional<double> slope; // least-squares slope of log drift vs log radius
    bool noise_floor = false;    // all drifts at the float noise floor

    std::string to_text() const;
};

/// Max drift of h along the flow of `field` from points of norm r, for each radius.
DriftReport drift_scaling(const PolyMap& field, const Poly& h, const std::vector<double>& radii, double t_end, double dt);

/// Drift of the transported energy H o Psi o Psi_pd along the input field X.
/// It is a first integral of X up to terms of degree N + 2, so the drift over a
/// fixed time scales like r^(N+2). Along Psi_*(rho X~) itself H is conserved
/// exactly for nonresonant normal forms, which carries no information.
DriftReport energy_drift_scaling(const Certificate& c, const std::vector<double>& radii, double t_end = 1.0,
                                 double dt = 1e-3);

}  // namespace reviham
