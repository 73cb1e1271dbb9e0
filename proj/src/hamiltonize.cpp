#include "reviham/hamiltonize.hpp"

#include "reviham/linsolve.hpp"

#include <sstream>

namespace reviham {

namespace {

Poly to_ambient(const Poly& p, SpectrumKind kind, int max_degree = -1) {
    const PolyMap images = invariant_images(p.dimension(), kind);
    return substitute<Rational>(p, images, max_degree);
}

Poly one(int n) { return Poly::constant(n, Rational(1)); }

// p / x_var, or nullopt when some term is not divisible.
std::optional<Poly> divide_by_variable(const Poly& p, int var) {
    Poly q(p.dimension());
    for (const auto& [m, c] : p.terms()) {
        if (m[var] == 0) return std::nullopt;
        Monomial r = m;
        r.set(var, m[var] - 1);
        q.add_term(r, c);
    }
    return q;
}

std::string component_name(int d, int i) { return variable_name(d, i) + "-component"; }

}  // namespace

Rational gradient_scale(SpectrumKind kind) { return kind == SpectrumKind::elliptic ? Rational(2) : Rational(-1); }

InvariantField::InvariantField(SpectrumKind kind, std::vector<Rational> frequencies, std::vector<Poly> f)
    : kind_(kind), frequencies_(std::move(frequencies)), f_(std::move(f)) {
    if (f_.size() != frequencies_.size()) throw DimensionMismatch("one invariant function per frequency");
    for (const auto& p : f_) {
        if (p.dimension() != n()) throw DimensionMismatch("invariant functions take n arguments");
    }
}

Poly InvariantField::full(int j) const {
    return Poly::constant(n(), frequencies_[static_cast<std::size_t>(j)]) + f_[static_cast<std::size_t>(j)];
}

MatrixXr InvariantField::cubic_block() const {
    MatrixXr c(n(), n());
    for (int j = 0; j < n(); ++j) {
        for (int r = 0; r < n(); ++r) c(j, r) = coefficient(j, Monomial::unit(n(), r));
    }
    return c;
}

VectorField InvariantField::expand() const {
    const int d = 2 * n();
    PolyMap comps;
    for (int j = 0; j < n(); ++j) {
        const Poly fj = to_ambient(full(j), kind_);
        const Poly x = Poly::variable(d, 2 * j);
        const Poly y = Poly::variable(d, 2 * j + 1);
        if (kind_ == SpectrumKind::elliptic) {
            comps.push_back(-(y * fj));
            comps.push_back(x * fj);
        } else {
            comps.push_back(x * fj);
            comps.push_back(-(y * fj));
        }
    }
    return {kind_, frequencies_, std::move(comps)};
}

InvariantField extract_invariant_form(const VectorField& x, int order) {
    require_simple_singularity(x);
    const int n = x.n();
    const int d = x.dimension();
    const PolyMap comps = jet(x.components(), order);
    std::vector<Poly> f;
    for (int j = 0; j < n; ++j) {
        // elliptic: y_j' = x_j F_j; saddle: x_j' = x_j F_j
        const int driver = x.kind() == SpectrumKind::elliptic ? 2 * j + 1 : 2 * j;
        const int partner = x.kind() == SpectrumKind::elliptic ? 2 * j : 2 * j + 1;
        const auto quotient = divide_by_variable(comps[static_cast<std::size_t>(driver)], 2 * j);
        if (!quotient) {
            throw ShapeViolation(component_name(d, driver) + " has a term without the factor " + variable_name(d, 2 * j));
        }
        InvariantPolynomial fj(n, x.kind());
        try {
            fj = to_invariant(*quotient, x.kind());
        } catch (const NotInvariant& e) {
            throw ShapeViolation(component_name(d, driver) + " is not " + variable_name(d, 2 * j) +
                                 " times a function of the invariants: " + e.what());
        }
        const Poly expected = -(Poly::variable(d, 2 * j + 1) * to_ambient(fj.poly(), x.kind()));
        if (comps[static_cast<std::size_t>(partner)] != expected) {
            throw ShapeViolation(component_name(d, partner) + " does not match " + component_name(d, driver));
        }
        Poly rest = fj.poly();
        rest.add_term(Monomial(n), -x.frequencies()[static_cast<std::size_t>(j)]);
        f.push_back(std::move(rest));
    }
    return {x.kind(), x.frequencies(), std::move(f)};
}

Rational check_genericity(const MatrixXr& cubic_block) {
    Rational product = 1;
    for (Eigen::Index j = 0; j < cubic_block.rows(); ++j) {
        for (Eigen::Index r = 0; r < cubic_block.cols(); ++r) product *= cubic_block(j, r);
    }
    return product;
}

bool check_j3_hamiltonian(const MatrixXr& cubic_block) { return cubic_block == cubic_block.transpose(); }

HamiltonizationStep solve_step(const InvariantField& current, int k, HamiltonizeMode mode) {
    const int n = current.n();
    const MatrixXr c = current.cubic_block();
    const Rational scale = gradient_scale(current.kind());
    if (check_genericity(c) == 0) throw NotGeneric("a cubic cross-coefficient vanishes");

    const auto rows = monomials_of_degree(n, k + 1);
    std::vector<Monomial> h_unknowns;
    for (const auto& m : monomials_of_degree(n, k + 2)) {
        bool pure = false;
        for (int r = 0; r < n; ++r) pure = pure || m[r] == k + 2;
        if (mode != HamiltonizeMode::decoupled6 || pure) h_unknowns.push_back(m);
    }
    std::vector<Monomial> theta_unknowns;
    if (mode != HamiltonizeMode::conjugacy6) theta_unknowns = rows;
    const auto mu_monomials = monomials_of_degree(n, k);

    // Columns: h, then theta, then mu (graded order within each group).
    std::map<Monomial, Eigen::Index> h_col, theta_col;
    std::map<std::pair<int, Monomial>, Eigen::Index> mu_col;
    Eigen::Index cols = 0;
    for (const auto& m : h_unknowns) h_col[m] = cols++;
    for (const auto& m : theta_unknowns) theta_col[m] = cols++;
    for (int r = 0; r < n; ++r) {
        for (const auto& m : mu_monomials) mu_col[{r, m}] = cols++;
    }

    const auto row_count = static_cast<Eigen::Index>(n * rows.size());
    MatrixXr a = MatrixXr::Zero(row_count, cols);
    VectorXr b = VectorXr::Zero(row_count);
    Eigen::Index row = 0;
    for (int j = 0; j < n; ++j) {
        for (const auto& idx : rows) {
            b(row) = -current.coefficient(j, idx);
            if (auto it = theta_col.find(idx); it != theta_col.end()) a(row, it->second) += current.frequencies()[static_cast<std::size_t>(j)];
            for (int r = 0; r < n; ++r) {
                if (idx[r] == 0) continue;
                Monomial lower = idx;
                lower.set(r, idx[r] - 1);
                a(row, mu_col.at({r, lower})) -= 2 * c(j, r);
            }
            Monomial upper = idx;
            upper.set(j, idx[j] + 1);
            if (auto it = h_col.find(upper); it != h_col.end()) a(row, it->second) -= scale * (idx[j] + 1);
            ++row;
        }
    }

    const PrioritizedRref rref(a, {});
    const auto sol = rref.solve(b);
    if (!sol) {
        std::ostringstream os;
        os << "mode " << to_string(mode) << ", step k = " << k << ": " << row_count << " equations in " << cols
           << " unknowns of rank " << rref.rank() << " are inconsistent";
        throw SingularSystem(2 * k + 3, os.str());
    }

    HamiltonizationStep step;
    step.k = k;
    step.h = Poly(n);
    step.theta = Poly(n);
    step.mu.assign(static_cast<std::size_t>(n), Poly(n));
    for (const auto& [m, col] : h_col) step.h.add_term(m, (*sol)(col));
    for (const auto& [m, col] : theta_col) step.theta.add_term(m, (*sol)(col));
    for (const auto& [key, col] : mu_col) step.mu[static_cast<std::size_t>(key.first)].add_term(key.second, (*sol)(col));
    return step;
}

InvariantField apply_step(const InvariantField& current, const HamiltonizationStep& step, int max_degree) {
    const int n = current.n();
    PolyMap phi;
    for (int j = 0; j < n; ++j) {
        const Poly s = one(n) + step.mu[static_cast<std::size_t>(j)];
        phi.push_back(Poly::multiply(Poly::variable(n, j), Poly::multiply(s, s, max_degree), max_degree));
    }
    const PolyMap phi_inv = inverse_series(phi, max_degree);
    const Poly factor = one(n) + step.theta;
    PolyMap scaled;
    for (int j = 0; j < n; ++j) scaled.push_back(Poly::multiply(factor, current.full(j), max_degree));
    const PolyMap moved = compose(scaled, phi_inv, max_degree);
    std::vector<Poly> f;
    for (int j = 0; j < n; ++j) {
        Poly rest = moved[static_cast<std::size_t>(j)];
        rest.add_term(Monomial(n), -current.frequencies()[static_cast<std::size_t>(j)]);
        f.push_back(std::move(rest));
    }
    return {current.kind(), current.frequencies(), std::move(f)};
}

std::optional<Poly> invariant_hamiltonian(const InvariantField& x) {
    const int n = x.n();
    const Rational scale = gradient_scale(x.kind());
    std::map<Monomial, Rational> coeffs;
    for (int j = 0; j < n; ++j) {
        const Poly fj = x.full(j);
        for (const auto& [m, c] : fj.terms()) {
            Monomial target = m;
            target.set(j, m[j] + 1);
            const Rational value = c / (scale * (m[j] + 1));
            auto [it, inserted] = coeffs.try_emplace(target, value);
            if (!inserted && it->second != value) return std::nullopt;
        }
    }
    Poly h(n);
    for (const auto& [m, c] : coeffs) h.add_term(m, c);
    for (int j = 0; j < n; ++j) {
        if (differentiate(h, j) * scale != x.full(j)) return std::nullopt;
    }
    return h;
}

std::vector<std::pair<MatrixXr, int>> reversing_group(const MatrixXr& g1, const MatrixXr& g2) {
    const auto d = g1.rows();
    std::vector<std::pair<MatrixXr, int>> elements{{MatrixXr::Identity(d, d), 1}};
    const std::pair<MatrixXr, int> gens[] = {{g1, -1}, {g2, -1}};
    for (std::size_t i = 0; i < elements.size(); ++i) {
        for (const auto& [g, sign] : gens) {
            MatrixXr next = elements[i].first * g;
            const int next_sign = elements[i].second * sign;
            bool seen = false;
            for (const auto& [m, s] : elements) {
                if (m == next) {
                    if (s != next_sign) throw PreconditionFailure("D4 structure", "an element is both reversing and preserving");
                    seen = true;
                    break;
                }
            }
            if (seen) continue;
            if (elements.size() == 64) throw PreconditionFailure("D4 structure", "the reversors generate a group of order > 64");
            elements.emplace_back(std::move(next), next_sign);
        }
    }
    return elements;
}

Involution plane_swap(int n) {
    MatrixXr m = MatrixXr::Zero(2 * n, 2 * n);
    for (int j = 0; j < n; ++j) {
        m(2 * j, 2 * j + 1) = 1;
        m(2 * j + 1, 2 * j) = 1;
    }
    return Involution::linear(m);
}

bool check_d4_preconditions(const VectorField& x, const Involution& g1, const Involution& g2, int r1, int r2) {
    if (x.dimension() != 4 || g1.dimension() != 4 || g2.dimension() != 4) return false;
    if (r1 <= 0 || r2 <= 0 || r1 % 2 == 0 || r2 % 2 == 0 || r1 * r2 <= 1) return false;
    if (x.frequencies()[0] * r2 != x.frequencies()[1] * r1) return false;
    int order = 1;
    for (const auto& c : x.components()) order = std::max(order, c.degree());
    if (!is_reversible(x, g1, order) || !is_reversible(x, g2, order)) return false;
    try {
        return reversing_group(g1.linearization(), g2.linearization()).size() == 8;
    } catch (const PreconditionFailure&) {
        return false;
    }
}

Poly closed_form_2d(const VectorField& x, int order) {
    if (x.n() != 1) throw ShapeViolation("the closed form needs a planar field");
    const InvariantField inv = extract_invariant_form(x, order);
    const Rational freq = inv.frequencies()[0];
    Poly integral(1);
    for (const auto& [m, c] : inv.f()[0].terms()) integral.add_term(Monomial{m[0] + 1}, c / (m[0] + 1));
    const Poly u = Poly::variable(1, 0);
    Poly h(1);
    if (x.kind() == SpectrumKind::elliptic) {
        h = freq / 2 * u + Rational(1, 2) * integral;
    } else {
        h = -freq * u - integral;
    }
    return to_ambient(h, x.kind());
}

namespace {

std::optional<D4Structure> resolve_d4(const VectorField& x, HamiltonizeMode mode, const std::optional<D4Structure>& d4) {
    if (mode != HamiltonizeMode::d4_resonant) return d4;
    if (d4) return d4;
    D4Structure s{plane_swap(2), 0, 0};
    ResonanceReport r = resonance_scan(x.kind(), x.frequencies(), 1);
    if (r.ratios.size() == 2 && r.ratios[0] < 1000 && r.ratios[1] < 1000) {
        s.r1 = static_cast<int>(r.ratios[0]);
        s.r2 = static_cast<int>(r.ratios[1]);
    }
    return s;
}

void check_hypotheses(const VectorField& xt, int order, HamiltonizeMode mode, const Involution& phi,
                      const std::optional<D4Structure>& d4) {
    if (order < 3 || order % 2 == 0) throw PreconditionFailure("order", "N must be odd and at least 3");
    require_simple_singularity(xt);
    if ((mode == HamiltonizeMode::decoupled6 || mode == HamiltonizeMode::conjugacy6) && xt.dimension() != 6) {
        throw PreconditionFailure("mode dimension", to_string(mode) + " needs 2n = 6, got " + std::to_string(xt.dimension()));
    }
    if (mode == HamiltonizeMode::d4_resonant && (xt.dimension() != 4 || xt.kind() != SpectrumKind::elliptic)) {
        throw PreconditionFailure("mode dimension", "d4 needs an elliptic field with 2n = 4");
    }
    if (phi.dimension() != xt.dimension()) throw DimensionMismatch("involution dimension differs from field");
    if (auto bad = involution_defect(phi, order)) throw PreconditionFailure("involution", *bad);
    if (!is_reversible(xt, phi, order)) throw PreconditionFailure("reversibility", "the normal form is not reversible");
    if (mode == HamiltonizeMode::d4_resonant &&
        !check_d4_preconditions(xt.with_components(jet(xt.components(), order)), phi, d4->g2, d4->r1, d4->r2)) {
        throw PreconditionFailure("D4 structure", "need g1-, g2-reversibility, a_1:a_2 = r1:r2 with r1, r2 odd, r1 r2 > 1 (got " +
                                                      std::to_string(d4->r1) + ":" + std::to_string(d4->r2) + ")");
    }
}

}  // namespace

Certificate hamiltonize(const VectorField& normal_form, int order, HamiltonizeMode mode, const Involution& phi,
                        const std::optional<D4Structure>& d4_in) {
    const std::optional<D4Structure> d4 = resolve_d4(normal_form, mode, d4_in);
    check_hypotheses(normal_form, order, mode, phi, d4);

    const InvariantField base = extract_invariant_form(normal_form, order);
    const MatrixXr c = base.cubic_block();
    const Rational genericity = check_genericity(c);
    if (genericity == 0) {
        std::string zeros;
        for (int j = 0; j < base.n(); ++j) {
            for (int r = 0; r < base.n(); ++r) {
                if (c(j, r) == 0) zeros += " a_{" + std::to_string(j + 1) + ",e" + std::to_string(r + 1) + "}";
            }
        }
        throw NotGeneric("F = 0, vanishing cubic coefficients:" + zeros);
    }
    if (!check_j3_hamiltonian(c)) throw PreconditionFailure("j3 Hamiltonian", "the cubic block a_{j,e_r} is not symmetric");
    if (mode != HamiltonizeMode::d4_resonant) {
        const auto res = accidental_resonances(normal_form.kind(), normal_form.frequencies(), order);
        if (!res.empty()) {
            throw PreconditionFailure("nonresonance", "resonant monomial " + describe(res.front(), normal_form.kind()));
        }
    }

    const int n = base.n();
    const int d = 2 * n;
    const SpectrumKind kind = base.kind();
    const int top = (order - 1) / 2;  // invariant degree of the field at x-degree `order`

    Transformation t;
    t.working_order = order;
    std::vector<Poly> s_total(static_cast<std::size_t>(n), one(n));
    Poly rho_total = one(n);
    PolyMap previous = identity_map(n);  // Delta after the steps so far
    std::vector<InvariantField> stages{base};
    InvariantField current = base;
    for (int k = 1; k < top; ++k) {
        const HamiltonizationStep step = solve_step(current, k, mode);
        InvariantField next = apply_step(current, step, top);
        for (int j = 0; j < n; ++j) {
            for (int r = 0; r < n; ++r) {
                const Poly a = homogeneous_part(differentiate(next.f()[static_cast<std::size_t>(j)], r), k);
                const Poly b = homogeneous_part(differentiate(next.f()[static_cast<std::size_t>(r)], j), k);
                if (a != b) throw std::logic_error("hamiltonize: step " + std::to_string(k) + " left a non-gradient part");
            }
        }
        PolyMap psi;
        for (int j = 0; j < n; ++j) {
            const Poly sigma = to_ambient(step.mu[static_cast<std::size_t>(j)], kind);
            psi.push_back(Poly::variable(d, 2 * j) * sigma);
            psi.push_back(Poly::variable(d, 2 * j + 1) * sigma);
        }
        t.psi.push_back(std::move(psi));
        t.theta.push_back(to_ambient(step.theta, kind));

        const PolyMap sigma_prev = compose(step.mu, previous, top);
        const Poly theta_prev = compose(PolyMap{step.theta}, previous, top).front();
        for (int j = 0; j < n; ++j) {
            auto& s = s_total[static_cast<std::size_t>(j)];
            s = Poly::multiply(s, one(n) + sigma_prev[static_cast<std::size_t>(j)], top);
        }
        rho_total = Poly::multiply(rho_total, one(n) + theta_prev, top);
        for (int j = 0; j < n; ++j) {
            const auto& s = s_total[static_cast<std::size_t>(j)];
            previous[static_cast<std::size_t>(j)] = Poly::multiply(Poly::variable(n, j), Poly::multiply(s, s, top), top);
        }
        current = std::move(next);
        stages.push_back(current);
    }

    const auto h = invariant_hamiltonian(current);
    if (!h) throw std::logic_error("hamiltonize: final field is not a gradient");

    Certificate cert;
    cert.mode = mode;
    cert.order = order;
    cert.input = normal_form.with_components(jet(normal_form.components(), order));
    cert.involution = phi;
    cert.d4 = d4;
    cert.normal_form = cert.input;
    cert.normal_form_map = Transformation::identity(d, order);
    cert.output = current.expand();
    cert.hamiltonian = to_ambient(*h, kind);
    cert.genericity = genericity;

    t.total.clear();
    for (int j = 0; j < n; ++j) {
        const Poly s = to_ambient(s_total[static_cast<std::size_t>(j)], kind);
        t.total.push_back(jet(Poly::variable(d, 2 * j) * s, order));
        t.total.push_back(jet(Poly::variable(d, 2 * j + 1) * s, order));
    }
    t.rho = jet(to_ambient(rho_total, kind), order);
    cert.transformation = std::move(t);

    // Field after step k agrees with Y through degree 2k+3.
    const PolyMap y = cert.output.components();
    cert.residuals[3] = jet(cert.normal_form.components() - y, 3);
    for (std::size_t k = 1; k < stages.size(); ++k) {
        const int deg = 2 * static_cast<int>(k) + 3;
        cert.residuals[deg] = jet(stages[k].expand().components() - y, deg);
    }
    for (const auto& [deg, r] : cert.residuals) {
        if (!is_zero(r)) throw std::logic_error("hamiltonize: nonzero residual at order " + std::to_string(deg));
    }
    return cert;
}

Certificate certify(const VectorField& x, int order, HamiltonizeMode mode, const Involution& phi,
                    const std::optional<D4Structure>& d4) {
    NormalFormOptions opts;
    opts.involution = phi;
    const NormalFormResult nf = poincare_dulac(x, order, opts);
    Certificate cert = hamiltonize(nf.normal_form, order, mode, nf.involution.value_or(phi), d4);
    cert.input = x.with_components(jet(x.components(), order));
    cert.involution = phi;
    cert.normal_form_map = nf.transformation;
    return cert;
}

}  // namespace reviham
