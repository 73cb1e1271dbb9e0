// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "reviham/hamiltonize.hpp"
#include "reviham/normalform.hpp"
#include "reviham/verify.hpp"
#include "support.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>

using namespace reviham;
using namespace reviham::testing;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
};

// Certificates gathered along the way for the integrity criterion.
std::vector<Certificate> g_certificates;

bool even_parts_vanish(const VectorField& x, int order) {
    for (const auto& c : x.components()) {
        for (int m = 2; m <= order; m += 2) {
            if (!homogeneous_part(c, m).is_zero()) return false;
        }
    }
    return true;
}

struct PdInstance {
    VectorField input;
    NormalFormResult result;
};
std::vector<PdInstance> g_pd;

Outcome pd_exactness() {
    Gen gen(1001);
    int good = 0, total = 0;
    for (int i = 0; i < 20; ++i) {
        const int n = i < 10 ? 1 : 2;
        const auto kind = i % 2 == 0 ? SpectrumKind::elliptic : SpectrumKind::saddle;
        const auto freqs = nonresonant_frequencies(gen, kind, n, 7);
        const VectorField x = random_reversible_field(gen, kind, freqs, 7, 0.35, 3, 3);
        NormalFormOptions opts;
        opts.involution = Involution::canonical(n, kind);
        const auto r = poincare_dulac(x, 7, opts);
        ++total;
        const bool exact = is_zero(jet(pushforward(r.transformation.total, x.components(), 7) - r.normal_form.components(), 7));
        if (exact && only_resonant_terms(r.normal_form, 7)) ++good;
        g_pd.push_back({x, r});
    }
    return {good == total, std::to_string(good) + "/" + std::to_string(total) + " fields exact at order 7, only resonant terms"};
}

Outcome shape() {
    int good = 0;
    for (const auto& p : g_pd) {
        bool ok = even_parts_vanish(p.result.normal_form, 7);
        try {
            const auto inv = extract_invariant_form(p.result.normal_form, 7);
            ok = ok && jet(inv.expand().components(), 7) == jet(p.result.normal_form.components(), 7);
        } catch (const ShapeViolation&) {
            ok = false;
        }
        good += ok;
    }
    return {good == static_cast<int>(g_pd.size()),
            std::to_string(good) + "/" + std::to_string(g_pd.size()) + " normal forms of invariant shape, even parts zero"};
}

struct Instance6 {
    InvariantField inv;
    VectorField x;
};
std::vector<Instance6> g_six;

void make_six() {
    Gen gen(1003);
    for (int i = 0; i < 15; ++i) {
        const auto kind = i < 10 ? SpectrumKind::elliptic : SpectrumKind::saddle;
        const auto freqs = nonresonant_frequencies(gen, kind, 3, 9);
        auto inv = random_invariant_field(gen, kind, freqs, 4);
        g_six.push_back({inv, inv.expand()});
    }
}

bool residuals_zero(const Certificate& c) {
    for (int deg : {3, 5, 7, 9}) {
        if (c.order >= deg && (!c.residuals.count(deg) || !is_zero(c.residuals.at(deg)))) return false;
    }
    return true;
}

Outcome hamiltonize_six() {
    int good = 0;
    std::string failures;
    for (std::size_t i = 0; i < g_six.size(); ++i) {
        const auto& s = g_six[i];
        try {
            const Certificate c = hamiltonize(s.x, 9, HamiltonizeMode::orbital, Involution::canonical(3, s.inv.kind()));
            const bool ok = residuals_zero(c) && is_hamiltonian(c.output, 9) && verify_certificate(c).ok;
            good += ok;
            if (!ok) failures += " #" + std::to_string(i);
            g_certificates.push_back(c);
        } catch (const Error& e) {
            failures += " #" + std::to_string(i) + "(" + e.what() + ")";
        }
    }
    return {good == 15, std::to_string(good) + "/15 (10 elliptic, 5 saddle) at N = 9 with zero residuals 5, 7, 9" + failures};
}

Outcome decoupled() {
    int good = 0;
    for (const auto& s : g_six) {
        try {
            const Certificate c = hamiltonize(s.x, 9, HamiltonizeMode::decoupled6, Involution::canonical(3, s.inv.kind()));
            good += residuals_zero(c) && is_hamiltonian(c.output, 9) && decoupled_beyond_cubic(jet(c.output.components(), 9)) &&
                    verify_certificate(c).ok;
            g_certificates.push_back(c);
        } catch (const Error&) {
        }
    }
    return {good == 15, std::to_string(good) + "/15 with pair j depending only on Delta_j beyond degree 3"};
}

Outcome conjugacy() {
    int good = 0;
    std::string witnesses;
    for (std::size_t i = 0; i < g_six.size(); ++i) {
        const auto& s = g_six[i];
        try {
            const Certificate c = hamiltonize(s.x, 9, HamiltonizeMode::conjugacy6, Involution::canonical(3, s.inv.kind()));
            good += residuals_zero(c) && c.transformation.rho == cst(6, 1) && verify_certificate(c).ok;
            g_certificates.push_back(c);
        } catch (const SingularSystem& e) {
            witnesses += " #" + std::to_string(i) + " singular at degree " + std::to_string(e.degree());
        }
    }
    return {good == 15, std::to_string(good) + "/15 with rho = 1" + witnesses};
}

Outcome d4_case() {
    Gen gen(1006);
    const auto g1 = Involution::canonical(2, SpectrumKind::elliptic);
    const auto g2 = plane_swap(2);
    const auto inv = random_invariant_field(gen, SpectrumKind::elliptic, {q(3), q(5)}, 3);
    const VectorField x = d4_disguised_field(gen, inv.expand(), g1, g2, 7);
    if (!check_d4_preconditions(x, g1, g2, 3, 5)) return {false, "instance lost a reversor"};
    try {
        const Certificate c = certify(x, 7, HamiltonizeMode::d4_resonant, g1, D4Structure{g2, 3, 5});
        const auto report = verify_certificate(c);
        g_certificates.push_back(c);
        const bool ok = residuals_zero(c) && is_hamiltonian(c.output, 7) && report.ok && !only_resonant_terms(x, 7);
        return {ok, "alpha = (3,5), N = 7, both reversors, residuals zero, " + report.summary()};
    } catch (const Error& e) {
        return {false, e.what()};
    }
}

Outcome closed_form() {
    Gen gen(1007);
    int good = 0, total = 0;
    for (auto kind : {SpectrumKind::elliptic, SpectrumKind::saddle}) {
        for (int terms = 1; terms <= 4; ++terms) {
            for (int rep = 0; rep < 3; ++rep) {
                Poly f(1);
                f.add_term(Monomial{1}, gen.nonzero_rational(5, 3));
                while (f.size() < static_cast<std::size_t>(terms)) f.add_term(Monomial{gen.integer(2, 4)}, gen.nonzero_rational(5, 3));
                const InvariantField inv(kind, {Rational(gen.integer(1, 5), gen.integer(1, 3))}, {f});
                const VectorField x = inv.expand();
                const Certificate c = hamiltonize(x, 9, HamiltonizeMode::orbital, Involution::canonical(1, kind));
                const Poly h = closed_form_2d(x, 9);
                ++total;
                good += jet(hamiltonian_field(h), 9) == jet(hamiltonian_field(c.hamiltonian), 9);
            }
        }
    }
    return {good == total && total > 0, std::to_string(good) + "/" + std::to_string(total) + " planar gradients agree (f with 1-4 terms)"};
}

Outcome genericity_gate() {
    const auto& s = g_six.front();
    int good = 0;
    for (int j = 0; j < 3; ++j) {
        for (int r = 0; r < 3; ++r) {
            std::vector<Poly> f = s.inv.f();
            f[static_cast<std::size_t>(j)].add_term(Monomial::unit(3, r), -s.inv.cubic_block()(j, r));
            const InvariantField z(s.inv.kind(), s.inv.frequencies(), f);
            bool refused = false;
            try {
                hamiltonize(z.expand(), 9, HamiltonizeMode::orbital, Involution::canonical(3, s.inv.kind()));
            } catch (const NotGeneric&) {
                refused = true;
            } catch (const Error&) {
            }
            good += refused && check_genericity(z.cubic_block()) == 0;
        }
    }
    return {good == 9, std::to_string(good) + "/9 zeroed a_{j,e_r} give F = 0 and NotGeneric"};
}

Outcome homological() {
    int good = 0, total = 0;
    for (auto kind : {SpectrumKind::elliptic, SpectrumKind::saddle}) {
        for (const Rational& freq : {q(1), q(5, 3)}) {
            for (int m = 2; m <= 3; ++m) {
                const MatrixXr a = normalized_linear_part(kind, {freq});
                ++total;
                good += operator_matrix(a, m) == dense_homological(a, m);
            }
        }
    }
    return {good == total, std::to_string(good) + "/" + std::to_string(total) + " dense matrices equal (n = 1, degrees 2-3)"};
}

Outcome drift() {
    Gen gen(1010);
    const auto freqs = nonresonant_frequencies(gen, SpectrumKind::elliptic, 3, 5);
    const auto inv = random_invariant_field(gen, SpectrumKind::elliptic, freqs, 2);
    const auto phi = Involution::canonical(3, SpectrumKind::elliptic);
    const Certificate c = certify(disguised_field(gen, inv.expand(), phi, 5, 0.15), 5, HamiltonizeMode::orbital, phi);
    g_certificates.push_back(c);
    const auto report = energy_drift_scaling(c, {0.2, 0.1, 0.05}, 1.0, 1e-3);
    const auto exact = drift_scaling(c.output.components(), c.hamiltonian, {0.1}, 1.0, 1e-3);
    const bool ok = report.slope && *report.slope >= 4.5 && exact.drifts[0] < 1e-10;
    char buf[160];
    std::snprintf(buf, sizeof buf, "6D N = 5: slope %.3f (need >= 4.5), exact pair drift %.3g at r = 0.1 (need < 1e-10)",
                  report.slope.value_or(0.0), exact.drifts[0]);
    return {ok, buf};
}

std::string bump(const std::string& line) {
    const auto space = line.find(' ');
    const std::string coeff = line.substr(0, space);
    Rational r = parse_rational(coeff.front() == '+' ? coeff.substr(1) : coeff) + 1;
    return (r >= 0 ? "+" : "") + format_rational(r) + (space == std::string::npos ? "" : line.substr(space));
}

Outcome integrity() {
    int round_trips = 0;
    for (const auto& c : g_certificates) {
        const std::string text = serialize(c);
        try {
            const Certificate back = parse_certificate(text);
            round_trips += back == c && serialize(back) == text && verify_certificate(back).ok;
        } catch (const Error&) {
        }
    }
    // every single-coefficient tamper on a small certificate, sampled tampers on the rest
    Gen gen(1011);
    const auto freqs = nonresonant_frequencies(gen, SpectrumKind::saddle, 2, 5);
    const auto phi = Involution::canonical(2, SpectrumKind::saddle);
    const auto inv = random_invariant_field(gen, SpectrumKind::saddle, freqs, 2);
    std::vector<std::pair<Certificate, bool>> targets{{certify(disguised_field(gen, inv.expand(), phi, 5, 0.2), 5, HamiltonizeMode::orbital, phi), true}};
    for (std::size_t i = 0; i < g_certificates.size(); i += 4) targets.emplace_back(g_certificates[i], false);
    int tampers = 0, caught = 0;
    for (const auto& [c, exhaustive] : targets) {
        std::vector<std::string> lines;
        std::istringstream in(serialize(c));
        for (std::string l; std::getline(in, l);) lines.push_back(l);
        std::vector<std::size_t> coeff_lines;
        for (std::size_t i = 0; i < lines.size(); ++i) {
            if (!lines[i].empty() && (lines[i][0] == '+' || lines[i][0] == '-')) coeff_lines.push_back(i);
        }
        std::vector<std::size_t> chosen = coeff_lines;
        if (!exhaustive) {
            chosen.clear();
            for (int k = 0; k < 6; ++k) chosen.push_back(coeff_lines[static_cast<std::size_t>(gen.integer(0, static_cast<int>(coeff_lines.size()) - 1))]);
        }
        for (std::size_t i : chosen) {
            auto copy = lines;
            copy[i] = bump(lines[i]);
            std::string text;
            for (const auto& l : copy) text += l + '\n';
            ++tampers;
            try {
                caught += !verify_certificate(parse_certificate(text)).ok;
            } catch (const ParseError&) {
                ++caught;
            }
        }
    }
    const int n = static_cast<int>(g_certificates.size());
    return {round_trips == n && caught == tampers,
            std::to_string(round_trips) + "/" + std::to_string(n) + " round trips verify; " + std::to_string(caught) + "/" +
                std::to_string(tampers) + " single-coefficient tampers detected"};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"normal-form exactness", pd_exactness},
        {"invariant shape of normal forms", shape},
        {"hamiltonization of 6D normal forms", [] {
             make_six();
             return hamiltonize_six();
         }},
        {"decoupled variant", decoupled},
        {"time-preserving variant", conjugacy},
        {"D4 resonant case", d4_case},
        {"planar closed form", closed_form},
        {"genericity gate", genericity_gate},
        {"homological operator oracle", homological},
        {"energy drift witness", drift},
        {"certificate integrity", integrity},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s AC%zu %s: %s [%.1f s]\n", o.ok ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str(), secs);
        std::fflush(stdout);
        failed += !o.ok;
    }
    std::printf("%d of %zu criteria failed\n", failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
