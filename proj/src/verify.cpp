#include "reviham/verify.hpp"

#include "reviham/normalform.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace reviham {

namespace {

struct Failure {
    std::string check;
    std::string detail;
    int degree = -1;
    int component = -1;
};

// Lowest-degree nonzero term of a residual map: (degree, component).
std::pair<int, int> lowest_term(const PolyMap& r) {
    int degree = -1, component = -1;
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (r[i].is_zero()) continue;
        const int d = r[i].min_degree();
        if (degree < 0 || d < degree) {
            degree = d;
            component = static_cast<int>(i);
        }
    }
    return {degree, component};
}

void require_zero(const std::string& check, const PolyMap& residual) {
    if (is_zero(residual)) return;
    const auto [deg, comp] = lowest_term(residual);
    throw Failure{check, "nonzero residual, first term " + to_string(homogeneous_part(residual[static_cast<std::size_t>(comp)], deg)),
                  deg, comp};
}

// jet(Dpsi . (rho X) - Y o psi, order): zero iff psi_*(rho X) = Y to that order.
PolyMap conjugacy_residual(const PolyMap& psi, const Poly& rho, const PolyMap& x, const PolyMap& y, int order) {
    PolyMap scaled;
    for (const auto& c : x) scaled.push_back(Poly::multiply(rho, c, order));
    const PolyMap lhs = jacobian_apply(psi, scaled, order);
    const PolyMap rhs = compose(y, psi, order);
    return jet(lhs - rhs, order);
}

// Recomposes a transformation from its steps: (Psi_k o ... o Psi_1, accumulated rho).
std::pair<PolyMap, Poly> recompose(const Transformation& t, int d, int order, std::vector<std::pair<PolyMap, Poly>>* partial) {
    PolyMap total = identity_map(d);
    Poly rho = Poly::constant(d, Rational(1));
    for (std::size_t i = 0; i < t.psi.size(); ++i) {
        const Poly factor = Poly::constant(d, Rational(1)) + t.theta[i];
        rho = Poly::multiply(rho, compose(PolyMap{factor}, total, order).front(), order);
        total = jet(total + compose(t.psi[i], total, order), order);
        if (partial) partial->emplace_back(total, rho);
    }
    return {total, rho};
}

void check_well_formed(const Certificate& c) {
    const int d = c.input.dimension();
    if (c.order < 3 || c.order % 2 == 0) throw Failure{"well-formed", "order must be odd and >= 3"};
    if (c.involution.dimension() != d || c.normal_form.dimension() != d || c.output.dimension() != d ||
        c.hamiltonian.dimension() != d) {
        throw Failure{"well-formed", "dimensions disagree"};
    }
    if (c.normal_form.kind() != c.input.kind() || c.output.kind() != c.input.kind() ||
        c.normal_form.frequencies() != c.input.frequencies() || c.output.frequencies() != c.input.frequencies()) {
        throw Failure{"well-formed", "kind or frequencies disagree between fields"};
    }
    for (const Transformation* t : {&c.normal_form_map, &c.transformation}) {
        if (t->psi.size() != t->theta.size()) throw Failure{"well-formed", "step maps and factors differ in number"};
        if (static_cast<int>(t->total.size()) != d || t->rho.dimension() != d) throw Failure{"well-formed", "transformation dimension"};
        for (const auto& p : t->psi) {
            if (static_cast<int>(p.size()) != d) throw Failure{"well-formed", "step map dimension"};
        }
    }
    if (c.d4 && c.d4->g2.dimension() != d) throw Failure{"well-formed", "second reversor dimension"};
}

void check_d4(const Certificate& c) {
    if (!c.d4) throw Failure{"D4 structure", "d4 mode without a second reversor"};
    const auto& f = c.input.frequencies();
    const int r1 = c.d4->r1, r2 = c.d4->r2;
    if (c.input.dimension() != 4) throw Failure{"D4 structure", "needs 2n = 4"};
    if (r1 <= 0 || r2 <= 0 || r1 % 2 == 0 || r2 % 2 == 0 || r1 * r2 <= 1) throw Failure{"D4 structure", "r1, r2 must be odd with r1 r2 > 1"};
    if (f[0] * r2 != f[1] * r1) throw Failure{"D4 structure", "frequencies are not in ratio r1:r2"};
    if (auto bad = involution_defect(c.d4->g2, c.order)) throw Failure{"D4 structure", "g2: " + *bad};
    const MatrixXr p = c.involution.linearization() * c.d4->g2.linearization();
    const MatrixXr id = MatrixXr::Identity(4, 4);
    if (p * p == id || p * p * p * p != id) throw Failure{"D4 structure", "g1 g2 does not have order 4"};
    if (!is_reversible(c.input, c.d4->g2, c.order)) {
        require_zero("D4 structure", reversibility_defect(c.input.components(), c.d4->g2, c.order));
    }
}

template <class Pass>
void check_normal_form_stage(const VectorField& input, const Involution& phi, const VectorField& nf, const Transformation& map,
                             int order, Pass&& pass) {
    const int d = input.dimension();
    if (auto bad = simple_singularity_defect(input)) throw Failure{"simple singularity", *bad};
    pass("simple singularity");
    if (auto bad = involution_defect(phi, order)) throw Failure{"involution", *bad};
    pass("involution");
    require_zero("input reversibility", reversibility_defect(input.components(), phi, order));
    pass("input reversibility");

    // Psi_pd recomposed from its steps, then Psi_pd_* X = X~.
    const auto [pd_total, pd_rho] = recompose(map, d, order, nullptr);
    if (jet(map.total, order) != pd_total) throw Failure{"normal-form map", "total differs from the composed steps"};
    if (pd_rho != Poly::constant(d, Rational(1)) || jet(map.rho, order) != pd_rho) {
        throw Failure{"normal-form map", "the normal-form map must not reparametrize time"};
    }
    require_zero("normal-form conjugacy", conjugacy_residual(pd_total, pd_rho, input.components(), nf.components(), order));
    pass("normal-form conjugacy");
    if (!only_resonant_terms(nf, order)) throw Failure{"normal form", "nonresonant terms remain"};
    const Involution linear_phi = Involution::linear(phi.linearization());
    require_zero("normal-form reversibility", reversibility_defect(nf.components(), linear_phi, order));
    pass("normal form");
}

}  // namespace

std::string VerificationReport::summary() const {
    if (ok) return "verified: " + std::to_string(passed.size()) + " checks passed";
    std::ostringstream os;
    os << "FAILED " << failed_check;
    if (degree >= 0) os << " at degree " << degree;
    if (component >= 0) os << ", component " << component;
    if (!detail.empty()) os << ": " << detail;
    return os.str();
}

bool decoupled_beyond_cubic(const PolyMap& field) {
    const int d = static_cast<int>(field.size());
    for (int i = 0; i < d; ++i) {
        for (const auto& [m, c] : field[static_cast<std::size_t>(i)].terms()) {
            if (m.degree() <= 3) continue;
            for (int v = 0; v < d; ++v) {
                if (v / 2 != i / 2 && m[v] != 0) return false;
            }
        }
    }
    return true;
}

MatrixXr cubic_cross_coefficients(const VectorField& x) {
    const int n = x.n();
    const int d = x.dimension();
    MatrixXr c(n, n);
    for (int j = 0; j < n; ++j) {
        for (int r = 0; r < n; ++r) {
            Monomial m(d);
            if (x.kind() == SpectrumKind::elliptic) {
                // y_j' contains x_j Delta_r F-coefficient: x_j x_r^2 (x_j^3 when r == j)
                m.set(2 * j, 1);
                m.set(2 * r, m[2 * r] + 2);
                c(j, r) = x[2 * j + 1].coefficient(m);
            } else {
                // x_j' contains x_j Gamma_r
                m.set(2 * j, 1);
                m.set(2 * r, m[2 * r] + 1);
                m.set(2 * r + 1, m[2 * r + 1] + 1);
                c(j, r) = x[2 * j].coefficient(m);
            }
        }
    }
    return c;
}

VerificationReport verify_normal_form(const NormalFormCertificate& c) {
    VerificationReport report;
    auto pass = [&](const char* name) { report.passed.emplace_back(name); };
    try {
        const int d = c.input.dimension();
        if (c.order < 2) throw Failure{"well-formed", "order must be >= 2"};
        if (c.involution.dimension() != d || c.normal_form.dimension() != d || static_cast<int>(c.residual.size()) != d ||
            static_cast<int>(c.normal_form_map.total.size()) != d || c.normal_form_map.psi.size() != c.normal_form_map.theta.size()) {
            throw Failure{"well-formed", "dimensions disagree"};
        }
        pass("well-formed");
        check_normal_form_stage(c.input, c.involution, c.normal_form, c.normal_form_map, c.order, pass);
        require_zero("residual", c.residual);
        pass("residual");
    } catch (const Failure& f) {
        report.fail(f.check, f.detail, f.degree, f.component);
    } catch (const Error& e) {
        report.fail("evaluation", e.what());
    }
    return report;
}

VerificationReport verify_certificate(const Certificate& c) {
    VerificationReport report;
    auto pass = [&](const char* name) { report.passed.emplace_back(name); };
    try {
        check_well_formed(c);
        pass("well-formed");
        const int n_order = c.order;
        const int d = c.input.dimension();

        check_normal_form_stage(c.input, c.involution, c.normal_form, c.normal_form_map, n_order, pass);
        const Involution linear_phi = Involution::linear(c.involution.linearization());
        if (c.mode == HamiltonizeMode::d4_resonant) {
            check_d4(c);
            pass("D4 structure");
        }
        if ((c.mode == HamiltonizeMode::decoupled6 || c.mode == HamiltonizeMode::conjugacy6) && d != 6) {
            throw Failure{"mode dimension", to_string(c.mode) + " needs 2n = 6"};
        }

        const MatrixXr cubic = cubic_cross_coefficients(c.normal_form);
        Rational product = 1;
        for (Eigen::Index i = 0; i < cubic.size(); ++i) product *= cubic.data()[i];
        if (product != c.genericity) throw Failure{"genericity", "recomputed F = " + format_rational(product) + " differs from the recorded value"};
        if (product == 0) throw Failure{"genericity", "F = 0"};
        if (cubic != cubic.transpose()) throw Failure{"j3 Hamiltonian", "cubic cross-coefficients are not symmetric"};
        pass("genericity");

        require_zero("cubic base", jet(c.output.components() - c.normal_form.components(), 3));
        pass("cubic base");

        // Each step: the partial map conjugates rho_k X~ to Y through degree 2k+3.
        std::vector<std::pair<PolyMap, Poly>> partial;
        const auto [total, rho] = recompose(c.transformation, d, n_order, &partial);
        for (std::size_t k = 0; k < partial.size(); ++k) {
            const int deg = std::min(2 * static_cast<int>(k + 1) + 3, n_order);
            require_zero("step " + std::to_string(k + 1),
                         conjugacy_residual(partial[k].first, partial[k].second, c.normal_form.components(),
                                            c.output.components(), deg));
        }
        pass("induction steps");
        if (jet(c.transformation.total, n_order) != total) throw Failure{"transformation", "total differs from the composed steps"};
        if (jet(c.transformation.rho, n_order) != rho) throw Failure{"transformation", "rho differs from the accumulated factors"};
        require_zero("conjugacy", conjugacy_residual(c.transformation.total, c.transformation.rho, c.normal_form.components(),
                                                     c.output.components(), n_order));
        pass("conjugacy");

        require_zero("hamiltonian", jet(c.output.components() - hamiltonian_field(c.hamiltonian), n_order));
        if (const auto h = is_hamiltonian(c.output, n_order); !h) {
            throw Failure{"hamiltonian", "output is not Hamiltonian", h.failing_degree};
        }
        pass("hamiltonian");
        require_zero("output reversibility", reversibility_defect(c.output.components(), linear_phi, n_order));
        pass("output reversibility");

        if (c.mode == HamiltonizeMode::conjugacy6) {
            if (c.transformation.rho != Poly::constant(d, Rational(1))) throw Failure{"conjugacy6", "rho is not 1"};
            pass("conjugacy6");
        }
        if (c.mode == HamiltonizeMode::decoupled6) {
            if (!decoupled_beyond_cubic(jet(c.output.components(), n_order))) {
                throw Failure{"decoupled6", "a component pair depends on another plane beyond degree 3"};
            }
            pass("decoupled6");
        }

        for (int deg = 3; deg <= n_order; deg += 2) {
            if (!c.residuals.count(deg)) throw Failure{"residuals", "missing residual at order " + std::to_string(deg), deg};
        }
        for (const auto& [deg, r] : c.residuals) {
            if (deg < 3 || deg > n_order || deg % 2 == 0) throw Failure{"residuals", "unexpected residual order", deg};
            if (static_cast<int>(r.size()) != d) throw Failure{"residuals", "residual dimension", deg};
            require_zero("residuals", r);
        }
        pass("residuals");
    } catch (const Failure& f) {
        report.fail(f.check, f.detail, f.degree, f.component);
    } catch (const Error& e) {
        report.fail("evaluation", e.what());
    }
    return report;
}

FloatMap::FloatMap(const PolyMap& map) {
    dim_ = map.empty() ? 0 : map.front().dimension();
    for (const auto& p : map) {
        std::vector<Term> terms;
        for (const auto& [m, c] : p.terms()) {
            Term t{to_double(c), {}};
            for (int v = 0; v < m.dimension(); ++v) {
                if (m[v] != 0) t.powers.emplace_back(v, m[v]);
            }
            terms.push_back(std::move(t));
        }
        components_.push_back(std::move(terms));
    }
}

std::vector<double> FloatMap::operator()(const std::vector<double>& x) const {
    std::vector<double> out;
    out.reserve(components_.size());
    for (const auto& terms : components_) {
        double acc = 0;
        for (const auto& t : terms) {
            double v = t.coeff;
            for (const auto& [var, e] : t.powers) {
                for (int k = 0; k < e; ++k) v *= x[static_cast<std::size_t>(var)];
            }
            acc += v;
        }
        out.push_back(acc);
    }
    return out;
}

std::vector<std::vector<double>> integrate(const FloatMap& field, const std::vector<double>& x0, double t_end, double dt) {
    if (!(dt > 0) || !(t_end > 0)) throw std::invalid_argument("integrate needs dt > 0 and T > 0");
    const auto steps = static_cast<long>(std::llround(t_end / dt));
    const std::size_t d = x0.size();
    auto axpy = [d](const std::vector<double>& x, double a, const std::vector<double>& k) {
        std::vector<double> r(d);
        for (std::size_t i = 0; i < d; ++i) r[i] = x[i] + a * k[i];
        return r;
    };
    std::vector<std::vector<double>> traj{x0};
    traj.reserve(static_cast<std::size_t>(steps) + 1);
    std::vector<double> x = x0;
    for (long s = 0; s < steps; ++s) {
        const auto k1 = field(x);
        const auto k2 = field(axpy(x, dt / 2, k1));
        const auto k3 = field(axpy(x, dt / 2, k2));
        const auto k4 = field(axpy(x, dt, k3));
        for (std::size_t i = 0; i < d; ++i) {
            x[i] += dt / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
            if (!std::isfinite(x[i])) throw IntegrationError("nonfinite state at t = " + std::to_string((s + 1) * dt));
        }
        traj.push_back(x);
    }
    return traj;
}

std::string DriftReport::to_text() const {
    std::string out = "radius drift\n";
    char buf[96];
    for (std::size_t i = 0; i < radii.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g %.17g\n", radii[i], drifts[i]);
        out += buf;
    }
    if (slope) {
        std::snprintf(buf, sizeof buf, "slope %.17g\n", *slope);
        out += buf;
    } else {
        out += "slope PASS_AT_NOISE_FLOOR\n";
    }
    return out;
}

DriftReport drift_scaling(const PolyMap& field, const Poly& h, const std::vector<double>& radii, double t_end, double dt) {
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (!(radii[i] > 0) || (i > 0 && radii[i] >= radii[i - 1])) {
            throw std::invalid_argument("radii must be positive and strictly decreasing");
        }
    }
    const FloatMap f(field);
    const FloatMap energy(h);
    const auto d = static_cast<std::size_t>(f.dimension());

    // Three fixed unit directions.
    std::vector<std::vector<double>> directions(3, std::vector<double>(d));
    for (std::size_t i = 0; i < d; ++i) {
        directions[0][i] = 1.0;
        directions[1][i] = (i % 2 == 0 ? 1.0 : -0.5) / static_cast<double>(i + 1);
        directions[2][i] = i % 2 == 0 ? 0.3 : 1.0;
    }
    for (auto& u : directions) {
        double norm = 0;
        for (double v : u) norm += v * v;
        for (double& v : u) v /= std::sqrt(norm);
    }

    DriftReport report;
    report.radii = radii;
    std::vector<double> xs, ys;
    for (double r : radii) {
        double drift = 0, scale = 0;
        for (const auto& u : directions) {
            std::vector<double> x0(d);
            for (std::size_t i = 0; i < d; ++i) x0[i] = r * u[i];
            const double h0 = energy.scalar(x0);
            scale = std::max(scale, std::abs(h0));
            for (const auto& x : integrate(f, x0, t_end, dt)) drift = std::max(drift, std::abs(energy.scalar(x) - h0));
        }
        report.drifts.push_back(drift);
        const double floor = 1e3 * std::numeric_limits<double>::epsilon() * std::max(scale, 1e-300);
        if (drift > floor) {
            xs.push_back(std::log(r));
            ys.push_back(std::log(drift));
        }
    }
    if (xs.size() < 2) {
        report.noise_floor = true;
        return report;
    }
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= static_cast<double>(xs.size());
    my /= static_cast<double>(xs.size());
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    report.slope = sxy / sxx;
    return report;
}

DriftReport energy_drift_scaling(const Certificate& c, const std::vector<double>& radii, double t_end, double dt) {
    for (double r : radii) {
        if (r > 0.5) throw std::invalid_argument("radii must lie in (0, 0.5]");
    }
    // The energy carried back to the input coordinates, H o Psi o Psi_pd, kept
    // through degree N + 1; along X its derivative starts at degree N + 2.
    const int top = c.order + 1;
    const PolyMap phi = compose(c.transformation.total, c.normal_form_map.total, top);
    const Poly h = compose(PolyMap{c.hamiltonian}, phi, top).front();
    return drift_scaling(c.input.components(), h, radii, t_end, dt);
}

}  // namespace reviham
