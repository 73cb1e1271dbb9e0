#include "reviham/field.hpp"

#include "reviham/linsolve.hpp"

#include <map>

namespace reviham {

MatrixXr normalized_linear_part(SpectrumKind kind, const std::vector<Rational>& frequencies) {
    const auto d = static_cast<Eigen::Index>(2 * frequencies.size());
    MatrixXr a = MatrixXr::Zero(d, d);
    for (std::size_t j = 0; j < frequencies.size(); ++j) {
        const auto x = static_cast<Eigen::Index>(2 * j);
        if (kind == SpectrumKind::elliptic) {
            a(x, x + 1) = -frequencies[j];
            a(x + 1, x) = frequencies[j];
        } else {
            a(x, x) = frequencies[j];
            a(x + 1, x + 1) = -frequencies[j];
        }
    }
    return a;
}

VectorField::VectorField(SpectrumKind kind, std::vector<Rational> frequencies, PolyMap components)
    : kind_(kind), frequencies_(std::move(frequencies)), components_(std::move(components)) {
    if (components_.size() != 2 * frequencies_.size()) {
        throw DimensionMismatch("a field on R^{2n} needs 2n components and n frequencies");
    }
    for (const auto& c : components_) {
        if (c.dimension() != dimension()) throw DimensionMismatch("field component has the wrong dimension");
    }
}

VectorField VectorField::linear(SpectrumKind kind, std::vector<Rational> frequencies) {
    PolyMap comps = linear_map(normalized_linear_part(kind, frequencies));
    return {kind, std::move(frequencies), std::move(comps)};
}

std::optional<std::string> simple_singularity_defect(const VectorField& x) {
    for (int i = 0; i < x.dimension(); ++i) {
        if (x[i].constant_term() != 0) {
            return "X(0) != 0: component " + std::to_string(i) + " has constant term " +
                   format_rational(x[i].constant_term());
        }
    }
    const MatrixXr a = x.linear_part();
    if (exact_rank(a) != a.rows()) return "det DX(0) = 0";
    for (const auto& f : x.frequencies()) {
        if (f <= 0) return "frequency " + format_rational(f) + " is not positive";
    }
    if (a != normalized_linear_part(x.kind(), x.frequencies())) {
        return "DX(0) is not the normalized " + to_string(x.kind()) + " block matrix of the declared frequencies";
    }
    return std::nullopt;
}

void require_simple_singularity(const VectorField& x) {
    if (auto defect = simple_singularity_defect(x)) throw NonSimpleSingularity(*defect);
}

Involution::Involution(PolyMap components) : components_(std::move(components)) {
    for (const auto& c : components_) {
        if (c.dimension() != dimension()) throw DimensionMismatch("involution component has the wrong dimension");
    }
}

Involution Involution::canonical(int n, SpectrumKind kind) {
    MatrixXr m = MatrixXr::Zero(2 * n, 2 * n);
    for (int j = 0; j < n; ++j) {
        if (kind == SpectrumKind::elliptic) {
            m(2 * j, 2 * j) = 1;
            m(2 * j + 1, 2 * j + 1) = -1;
        } else {
            m(2 * j, 2 * j + 1) = 1;
            m(2 * j + 1, 2 * j) = 1;
        }
    }
    return linear(m);
}

bool Involution::is_linear() const {
    for (const auto& c : components_) {
        if (!c.is_homogeneous(1)) return false;
    }
    return true;
}

std::optional<std::string> involution_defect(const Involution& phi, int order) {
    const int d = phi.dimension();
    if (d % 2 != 0) return "involution dimension is odd";
    for (int i = 0; i < d; ++i) {
        if (phi.components()[static_cast<std::size_t>(i)].constant_term() != 0) return "phi(0) != 0";
    }
    const PolyMap square = compose(phi.components(), phi.components(), order);
    if (square != identity_map(d)) return "phi o phi != Id up to order " + std::to_string(order);
    const MatrixXr l = phi.linearization();
    const Eigen::Index fix_dim = d - exact_rank(l - MatrixXr::Identity(d, d));
    if (fix_dim != d / 2) {
        return "dim Fix(Dphi(0)) = " + std::to_string(fix_dim) + ", expected " + std::to_string(d / 2);
    }
    return std::nullopt;
}

SymplecticStructure SymplecticStructure::standard(int n) {
    SymplecticStructure s;
    s.j = MatrixXr::Zero(2 * n, 2 * n);
    s.omega = MatrixXr::Zero(2 * n, 2 * n);
    for (int k = 0; k < n; ++k) {
        s.j(2 * k, 2 * k + 1) = -1;
        s.j(2 * k + 1, 2 * k) = 1;
        s.omega(2 * k, 2 * k + 1) = 1;
        s.omega(2 * k + 1, 2 * k) = -1;
    }
    return s;
}

bool SymplecticStructure::is_symplectic(const MatrixXr& m) const {
    const MatrixXr lhs = m.transpose() * omega * m;
    return lhs == omega;
}

PolyMap compose(const PolyMap& outer, const PolyMap& inner, int max_degree) {
    return substitute_all<Rational>(outer, inner, max_degree);
}

PolyMap inverse_series(const PolyMap& psi, int max_degree) {
    const int d = static_cast<int>(psi.size());
    const MatrixXr l = linear_part(psi);
    const PrioritizedRref rref(l, {});
    if (rref.rank() != d) throw std::invalid_argument("inverse_series: linear part is singular");
    MatrixXr l_inv(d, d);
    for (int c = 0; c < d; ++c) l_inv.col(c) = *rref.solve(VectorXr::Unit(d, c));

    PolyMap nonlinear = psi;
    const PolyMap lin = linear_map(l);
    for (int i = 0; i < d; ++i) nonlinear[static_cast<std::size_t>(i)] -= lin[static_cast<std::size_t>(i)];

    // G = L^{-1} (y - N(G)); each sweep fixes at least one more degree.
    const PolyMap y = identity_map(d);
    PolyMap g = apply_matrix(l_inv, y);
    for (int it = 0; it < max_degree; ++it) {
        PolyMap next = apply_matrix(l_inv, y - compose(nonlinear, g, max_degree));
        if (next == g) break;
        g = std::move(next);
    }
    return g;
}

Transformation Transformation::identity(int dimension, int working_order) {
    Transformation t;
    t.total = identity_map(dimension);
    t.rho = Poly::constant(dimension, Rational(1));
    t.working_order = working_order;
    return t;
}

void Transformation::append(PolyMap step_psi, Poly step_theta) {
    const int wo = working_order;
    const int d = static_cast<int>(total.size());
    const PolyMap previous = total;
    PolyMap moved = compose(step_psi, previous, wo);
    total = jet(previous + moved, wo);
    const Poly factor = Poly::constant(d, Rational(1)) + step_theta;
    const PolyMap factor_vec{factor};
    const Poly pulled = compose(factor_vec, previous, wo).front();
    rho = Poly::multiply(rho, pulled, wo);
    psi.push_back(std::move(step_psi));
    theta.push_back(std::move(step_theta));
}

bool Transformation::is_identity() const {
    const int d = static_cast<int>(total.size());
    return total == identity_map(d) && rho == Poly::constant(d, Rational(1));
}

PolyMap pushforward(const PolyMap& psi, const PolyMap& x, int order) {
    const PolyMap g = inverse_series(psi, order);
    const PolyMap dpsi_x = jacobian_apply(psi, x, order);
    return compose(dpsi_x, g, order);
}

VectorField pushforward(const PolyMap& psi, const VectorField& x, int order) {
    return x.with_components(pushforward(psi, x.components(), order));
}

VectorField pushforward(const Transformation& t, const VectorField& x, int order) {
    const VectorField scaled = time_reparametrize(x, t.rho, order);
    return pushforward(t.total, scaled, order);
}

VectorField time_reparametrize(const VectorField& x, const Poly& rho, int order) {
    if (rho.constant_term() == 0) {
        throw PreconditionFailure("time reparametrization", "rho vanishes at the origin");
    }
    PolyMap comps;
    for (const auto& c : x.components()) comps.push_back(Poly::multiply(rho, c, order));
    return x.with_components(std::move(comps));
}

PolyMap reversibility_defect(const PolyMap& x, const Involution& phi, int order) {
    const PolyMap dphi_x = jacobian_apply(phi.components(), x, order);
    const PolyMap x_phi = compose(x, phi.components(), order);
    return jet(dphi_x + x_phi, order);
}

bool is_reversible(const VectorField& x, const Involution& phi, int order) {
    if (x.dimension() != phi.dimension()) throw DimensionMismatch("field and involution dimensions differ");
    return is_zero(reversibility_defect(x.components(), phi, order));
}

PolyMap hamiltonian_field(const Poly& h) {
    const int d = h.dimension();
    PolyMap out;
    for (int j = 0; j < d / 2; ++j) {
        out.push_back(-differentiate(h, 2 * j + 1));
        out.push_back(differentiate(h, 2 * j));
    }
    return out;
}

HamiltonianCheck is_hamiltonian(const PolyMap& x, int order) {
    const int d = static_cast<int>(x.size());
    if (d == 0 || d % 2 != 0) throw DimensionMismatch("is_hamiltonian needs a 2n-dimensional field");
    // grad H = -J X.
    PolyMap grad;
    for (int j = 0; j < d / 2; ++j) {
        grad.push_back(jet(x[static_cast<std::size_t>(2 * j + 1)], order));
        grad.push_back(-jet(x[static_cast<std::size_t>(2 * j)], order));
    }
    Poly h(d);
    for (int deg = 0; deg <= order; ++deg) {
        std::map<Monomial, Rational> unknowns;
        for (int i = 0; i < d; ++i) {
            for (const auto& [m, c] : grad[static_cast<std::size_t>(i)].terms()) {
                if (m.degree() != deg) continue;
                Monomial target = m;
                target.set(i, m[i] + 1);
                const Rational value = c / (m[i] + 1);
                auto [it, inserted] = unknowns.try_emplace(target, value);
                if (!inserted && it->second != value) return {std::nullopt, deg};
            }
        }
        Poly piece(d);
        for (const auto& [m, c] : unknowns) piece.add_term(m, c);
        for (int i = 0; i < d; ++i) {
            if (differentiate(piece, i) != homogeneous_part(grad[static_cast<std::size_t>(i)], deg)) {
                return {std::nullopt, deg};
            }
        }
        h += piece;
    }
    return {std::move(h), -1};
}

Poly divergence(const PolyMap& x) {
    const int d = static_cast<int>(x.size());
    Poly div(d);
    for (int i = 0; i < d; ++i) div += differentiate(x[static_cast<std::size_t>(i)], i);
    return div;
}

PolyMap montgomery_bochner(const Involution& phi, int order) {
    const int d = phi.dimension();
    const PolyMap lin_phi = apply_matrix(phi.linearization(), phi.components());
    return jet(identity_map(d) + lin_phi, order);
}

}  // namespace reviham
