#include "reviham/normalform.hpp"

#include <numeric>
#include <sstream>

namespace reviham {

std::vector<GaussianRational> diagonal_spectrum(SpectrumKind kind, const std::vector<Rational>& frequencies) {
    std::vector<GaussianRational> out;
    for (const auto& f : frequencies) {
        if (kind == SpectrumKind::elliptic) {
            out.emplace_back(Rational(0), f);
            out.emplace_back(Rational(0), -f);
        } else {
            out.emplace_back(f);
            out.emplace_back(-f);
        }
    }
    return out;
}

PolyVector<GaussianRational> to_diagonal(SpectrumKind kind, const PolyMap& field) {
    if (kind == SpectrumKind::elliptic) return complexify_field(field);
    PolyVector<GaussianRational> out;
    for (const auto& p : field) out.push_back(promote(p));
    return out;
}

PolyMap from_diagonal(SpectrumKind kind, const PolyVector<GaussianRational>& field) {
    if (kind == SpectrumKind::elliptic) return realify_field(field);
    PolyMap out;
    for (const auto& p : field) out.push_back(real_part_checked(p));
    return out;
}

namespace {

GaussianRational defect_of(const Monomial& m, int s, const std::vector<GaussianRational>& spectrum) {
    GaussianRational acc = -spectrum[static_cast<std::size_t>(s)];
    for (int v = 0; v < m.dimension(); ++v) {
        if (m[v] != 0) acc += spectrum[static_cast<std::size_t>(v)] * GaussianRational(m[v]);
    }
    return acc;
}

bool is_structural(const Monomial& m, int s) {
    const int pair = s / 2;
    const int sign = (s % 2 == 0) ? 1 : -1;
    for (int j = 0; j < m.dimension() / 2; ++j) {
        const int diff = m[2 * j] - m[2 * j + 1];
        if (diff != (j == pair ? sign : 0)) return false;
    }
    return true;
}

void fill_ratios(ResonanceReport& r, const std::vector<Rational>& frequencies) {
    if (frequencies.empty()) return;
    Integer common_den = 1;
    for (const auto& f : frequencies) common_den = lcm(common_den, denominator(f));
    Integer g = 0;
    std::vector<Integer> scaled;
    for (const auto& f : frequencies) {
        const Rational s = f * Rational(common_den);
        scaled.push_back(numerator(s));
        g = gcd(g, numerator(s));
    }
    if (g == 0) return;
    r.scale_factor = Rational(g, common_den);
    for (const auto& s : scaled) r.ratios.push_back(s / g);
}

}  // namespace

std::vector<ResonanceEntry> ResonanceReport::resonant() const {
    std::vector<ResonanceEntry> out;
    for (const auto& e : entries) {
        if (e.resonant()) out.push_back(e);
    }
    return out;
}

std::vector<ResonanceEntry> ResonanceReport::accidental() const {
    std::vector<ResonanceEntry> out;
    for (const auto& e : entries) {
        if (e.resonant() && !e.structural) out.push_back(e);
    }
    return out;
}

ResonanceReport resonance_scan(SpectrumKind kind, const std::vector<Rational>& frequencies, int m) {
    const auto spectrum = diagonal_spectrum(kind, frequencies);
    const int d = static_cast<int>(spectrum.size());
    ResonanceReport report;
    report.order = m;
    for (const auto& mono : monomials_of_degree(d, m)) {
        for (int s = 0; s < d; ++s) {
            report.entries.push_back({mono, s, defect_of(mono, s, spectrum), is_structural(mono, s)});
        }
    }
    fill_ratios(report, frequencies);
    return report;
}

std::vector<ResonanceEntry> accidental_resonances(SpectrumKind kind, const std::vector<Rational>& frequencies,
                                                  int order) {
    std::vector<ResonanceEntry> out;
    for (int m = 2; m <= order; ++m) {
        for (auto& e : resonance_scan(kind, frequencies, m).accidental()) out.push_back(std::move(e));
    }
    return out;
}

std::vector<PolyMap> resonant_real_basis(SpectrumKind kind, const ResonanceReport& report) {
    std::vector<PolyMap> basis;
    if (report.entries.empty()) return basis;
    const int d = report.entries.front().monomial.dimension();
    for (const auto& e : report.entries) {
        if (!e.resonant()) continue;
        if (kind == SpectrumKind::saddle) {
            PolyMap v(static_cast<std::size_t>(d), Poly(d));
            v[static_cast<std::size_t>(e.component)].add_term(e.monomial, Rational(1));
            basis.push_back(std::move(v));
            continue;
        }
        if (e.component % 2 != 0) continue;  // w-components pair with z-components
        Monomial partner(d);
        for (int j = 0; j < d / 2; ++j) {
            partner.set(2 * j, e.monomial[2 * j + 1]);
            partner.set(2 * j + 1, e.monomial[2 * j]);
        }
        for (const GaussianRational& c : {GaussianRational(1), GaussianRational::i()}) {
            PolyVector<GaussianRational> v(static_cast<std::size_t>(d), ComplexPoly(d));
            v[static_cast<std::size_t>(e.component)].add_term(e.monomial, c);
            v[static_cast<std::size_t>(e.component + 1)].add_term(partner, c.conj());
            basis.push_back(realify_field(v));
        }
    }
    return basis;
}

PolyMap homological_operator(const MatrixXr& a, const PolyMap& h) {
    int degree = -1;
    for (const auto& p : h) {
        if (p.is_zero()) continue;
        if (degree < 0) degree = p.min_degree();
        if (!p.is_homogeneous(degree)) throw std::invalid_argument("homological_operator needs a homogeneous input");
    }
    const PolyMap ax = linear_map(a);
    return jacobian_apply(h, ax) - apply_matrix(a, h);
}

PolyMap reversible_projection(const PolyMap& h, const Involution& phi) {
    int degree = 0;
    for (const auto& p : h) degree = std::max(degree, p.degree());
    const PolyMap h_phi = compose(h, phi.components(), degree);
    const PolyMap mirrored = apply_matrix(phi.linearization(), h_phi);
    PolyMap out = jet(h + mirrored, degree);
    for (auto& p : out) p *= Rational(1, 2);
    return out;
}

std::string describe(const ResonanceEntry& e, SpectrumKind kind) {
    std::ostringstream os;
    const int d = e.monomial.dimension();
    auto name = [&](int v) {
        if (kind == SpectrumKind::saddle) return variable_name(d, v);
        return std::string(v % 2 == 0 ? "z" : "w") + std::to_string(v / 2 + 1);
    };
    std::string mono;
    for (int v = 0; v < d; ++v) {
        if (e.monomial[v] == 0) continue;
        if (!mono.empty()) mono += '*';
        mono += name(v);
        if (e.monomial[v] > 1) mono += "^" + std::to_string(e.monomial[v]);
    }
    os << (mono.empty() ? "1" : mono) << " d/d" << name(e.component) << " (degree " << e.monomial.degree()
       << ", defect " << e.defect << ")";
    return os.str();
}

NormalFormResult poincare_dulac(const VectorField& x, int order, const NormalFormOptions& options) {
    require_simple_singularity(x);
    const int d = x.dimension();
    NormalFormResult result;
    result.order = order;
    result.transformation = Transformation::identity(d, order);

    VectorField current = x.with_components(jet(x.components(), order));
    std::optional<Involution> reversor;
    if (options.involution) {
        if (options.involution->dimension() != d) throw DimensionMismatch("involution dimension differs from field");
        if (!is_reversible(current, *options.involution, order)) {
            throw PreconditionFailure("reversibility", "the field is not reversible to order " + std::to_string(order));
        }
        reversor = *options.involution;
        if (!reversor->is_linear()) {
            // (chi/2) conjugates phi to Dphi(0) and has identity linear part.
            PolyMap chi = montgomery_bochner(*reversor, order);
            for (auto& c : chi) c *= Rational(1, 2);
            current = pushforward(chi, current, order);
            result.transformation.append(chi - identity_map(d), Poly(d));
            reversor = Involution::linear(reversor->linearization());
        }
    }

    const auto spectrum = diagonal_spectrum(x.kind(), x.frequencies());
    for (int m = 2; m <= order; ++m) {
        result.reports.push_back(resonance_scan(x.kind(), x.frequencies(), m));
        const PolyMap f = homogeneous_part(current.components(), m);
        if (is_zero(f)) continue;
        const auto f_diag = to_diagonal(x.kind(), f);
        PolyVector<GaussianRational> h_diag(static_cast<std::size_t>(d), ComplexPoly(d));
        for (int s = 0; s < d; ++s) {
            for (const auto& [mono, c] : f_diag[static_cast<std::size_t>(s)].terms()) {
                const GaussianRational defect = defect_of(mono, s, spectrum);
                if (!defect.is_zero()) {
                    h_diag[static_cast<std::size_t>(s)].add_term(mono, -c / defect);
                } else if (options.strict && !is_structural(mono, s)) {
                    const ResonanceEntry e{mono, s, defect, false};
                    throw ResonanceError("resonant term beyond the structural ones: " + describe(e, x.kind()));
                }
            }
        }
        PolyMap h = from_diagonal(x.kind(), h_diag);
        if (reversor) h = reversible_projection(h, *reversor);
        if (is_zero(h)) continue;
        PolyMap step = identity_map(d) + h;
        current = pushforward(step, current, order);
        result.transformation.append(std::move(h), Poly(d));
    }
    result.normal_form = current;
    result.involution = reversor;
    return result;
}

bool only_resonant_terms(const VectorField& x, int order) {
    const auto spectrum = diagonal_spectrum(x.kind(), x.frequencies());
    const auto diag = to_diagonal(x.kind(), jet(x.components(), order));
    for (int s = 0; s < x.dimension(); ++s) {
        for (const auto& [mono, c] : diag[static_cast<std::size_t>(s)].terms()) {
            if (mono.degree() <= 1) continue;
            if (!defect_of(mono, s, spectrum).is_zero()) return false;
        }
    }
    return true;
}

}  // namespace reviham
