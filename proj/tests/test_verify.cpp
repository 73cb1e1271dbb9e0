#include <doctest.h>

#include "reviham/normalform.hpp"
#include "reviham/verify.hpp"
#include "support.hpp"

#include <cmath>
#include <sstream>

using namespace reviham;
using namespace reviham::testing;

namespace {

Certificate small_certificate(SpectrumKind kind, int n, int order, std::uint64_t seed,
                              HamiltonizeMode mode = HamiltonizeMode::orbital) {
    Gen gen(seed);
    const auto freqs = nonresonant_frequencies(gen, kind, n, order);
    const auto inv = random_invariant_field(gen, kind, freqs, (order - 1) / 2);
    return hamiltonize(inv.expand(), order, mode, Involution::canonical(n, kind));
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

std::string join(const std::vector<std::string>& lines) {
    std::string out;
    for (const auto& l : lines) out += l + '\n';
    return out;
}

// Adds one to the coefficient of a term line "+p/q x1^a ...".
std::string bump_coefficient(const std::string& line) {
    const auto space = line.find(' ');
    const std::string coeff = line.substr(0, space);
    const std::string rest = space == std::string::npos ? "" : line.substr(space);
    Rational r(coeff.front() == '+' ? coeff.substr(1) : coeff);
    r += 1;
    const std::string s = format_rational(r);
    return (r >= 0 ? "+" : "") + s + rest;
}

bool is_term_line(const std::string& line) { return !line.empty() && (line[0] == '+' || line[0] == '-'); }

}  // namespace

TEST_CASE("fresh certificates verify") {
    for (auto kind : {SpectrumKind::elliptic, SpectrumKind::saddle}) {
        for (auto mode : {HamiltonizeMode::orbital, HamiltonizeMode::decoupled6, HamiltonizeMode::conjugacy6}) {
            const Certificate c = small_certificate(kind, 3, 7, 60, mode);
            const auto report = verify_certificate(c);
            INFO(report.summary());
            CHECK(report);
        }
    }
    const Certificate c2 = small_certificate(SpectrumKind::elliptic, 2, 9, 61);
    CHECK(verify_certificate(c2));
}

TEST_CASE("certify from a general reversible field verifies") {
    Gen gen(62);
    for (auto kind : {SpectrumKind::elliptic, SpectrumKind::saddle}) {
        const auto freqs = nonresonant_frequencies(gen, kind, 2, 7);
        const auto inv = random_invariant_field(gen, kind, freqs, 3);
        const auto phi = Involution::canonical(2, kind);
        const VectorField x = disguised_field(gen, inv.expand(), phi, 7);
        CHECK_FALSE(only_resonant_terms(x, 7));
        const Certificate c = certify(x, 7, HamiltonizeMode::orbital, phi);
        CHECK(c.genericity == check_genericity(inv.cubic_block()));
        const auto report = verify_certificate(c);
        INFO(report.summary());
        CHECK(report);
    }
}

TEST_CASE("a perturbed Hamiltonian coefficient is located") {
    Certificate c = small_certificate(SpectrumKind::elliptic, 3, 7, 63);
    Monomial m(6);
    m.set(0, 2);
    m.set(3, 4);  // x1^2 y2^4, degree 6
    c.hamiltonian.add_term(m, q(1));
    const auto report = verify_certificate(c);
    CHECK_FALSE(report);
    CHECK(report.failed_check == "hamiltonian");
    CHECK(report.degree == 5);
}

TEST_CASE("a linear certificate verifies") {
    // X = J grad H with H = (x^2 + y^2)/2 + (x^2 + y^2)^2 / 4: already Hamiltonian, N = 3.
    const InvariantField inv(SpectrumKind::elliptic, {q(1)}, {var(1, 0)});
    const Certificate c = hamiltonize(inv.expand(), 3, HamiltonizeMode::orbital, Involution::canonical(1, SpectrumKind::elliptic));
    CHECK(c.transformation.psi.empty());
    CHECK(verify_certificate(c));
}

TEST_CASE("decoupled_beyond_cubic") {
    const Poly x1 = var(4, 0), y1 = var(4, 1), x2 = var(4, 2);
    const Poly y2 = var(4, 3);
    CHECK(decoupled_beyond_cubic({x1 * x2 * x2, y1, x2, y2 * y2 * y2 * y2 * y2}));
    CHECK_FALSE(decoupled_beyond_cubic({x1 * x2 * x2 * x2 * x2, y1, x2, y1}));
}

TEST_CASE("cubic_cross_coefficients match the invariant block") {
    Gen gen(64);
    for (auto kind : {SpectrumKind::elliptic, SpectrumKind::saddle}) {
        const auto freqs = nonresonant_frequencies(gen, kind, 3, 5);
        const auto inv = random_invariant_field(gen, kind, freqs, 2);
        CHECK(cubic_cross_coefficients(inv.expand()) == inv.cubic_block());
    }
}

TEST_CASE("certificate round trip and tamper detection") {
    const Certificate c = small_certificate(SpectrumKind::elliptic, 2, 5, 65);
    const std::string text = serialize(c);
    const Certificate back = parse_certificate(text);
    CHECK(back == c);
    CHECK(serialize(back) == text);
    REQUIRE(verify_certificate(back));

    const auto lines = lines_of(text);
    int tampered = 0;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (!is_term_line(lines[i])) continue;
        auto copy = lines;
        copy[i] = bump_coefficient(lines[i]);
        bool detected = false;
        try {
            detected = !verify_certificate(parse_certificate(join(copy)));
        } catch (const ParseError&) {
            detected = true;
        }
        INFO("line ", i + 1, ": ", lines[i]);
        CHECK(detected);
        ++tampered;
    }
    CHECK(tampered > 50);

    // header values
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (lines[i].rfind("genericity:", 0) == 0 || lines[i].rfind("frequencies:", 0) == 0) {
            auto copy = lines;
            copy[i] += "1";
            bool detected = false;
            try {
                detected = !verify_certificate(parse_certificate(join(copy)));
            } catch (const ParseError&) {
                detected = true;
            }
            CHECK(detected);
        }
    }
}

TEST_CASE("integrate: closed-form flows") {
    const Poly x = var(2, 0), y = var(2, 1);
    const FloatMap rotation(PolyMap{-y, x});
    const auto circle = integrate(rotation, {1.0, 0.0}, 2 * M_PI, 2 * M_PI / 4000);
    CHECK(circle.size() == 4001);
    CHECK(std::abs(circle.back()[0] - 1.0) < 1e-12);
    CHECK(std::abs(circle.back()[1]) < 1e-12);

    const FloatMap zero(PolyMap{Poly(2), Poly(2)});
    const auto still = integrate(zero, {0.3, -0.2}, 1.0, 0.01);
    CHECK(still.back() == std::vector<double>{0.3, -0.2});

    const FloatMap saddle(PolyMap{x, -y});
    const auto s = integrate(saddle, {1.0, 1.0}, 1.0, 1e-3);
    CHECK(std::abs(s.back()[0] - std::exp(1.0)) < 1e-12);
    CHECK(std::abs(s.back()[1] - std::exp(-1.0)) < 1e-12);

    CHECK_THROWS_AS(integrate(FloatMap(PolyMap{x * x, Poly(2)}), {1.0, 0.0}, 2.0, 0.01), IntegrationError);
    CHECK_THROWS_AS(integrate(zero, {0.0, 0.0}, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("integrate: RK4 order under step halving") {
    // H = (x^2 + y^2)/2 + x^4: drift along its own flow is pure integration error.
    const Poly x = var(2, 0), y = var(2, 1);
    const Poly h = (x * x + y * y) * q(1, 2) + x * x * x * x;
    const FloatMap field(hamiltonian_field(h));
    const FloatMap energy(h);
    auto drift = [&](double dt) {
        const std::vector<double> x0{0.6, 0.2};
        const double h0 = energy.scalar(x0);
        double worst = 0;
        for (const auto& s : integrate(field, x0, 2.0, dt)) worst = std::max(worst, std::abs(energy.scalar(s) - h0));
        return worst;
    };
    const double d1 = drift(0.08), d2 = drift(0.04), d3 = drift(0.02);
    const double slope = std::log2(d1 / d2), slope2 = std::log2(d2 / d3);
    CHECK(slope > 3.5);
    CHECK(slope2 > 3.5);
    CHECK(slope < 5.5);
}

TEST_CASE("drift_scaling on exact and truncated pairs") {
    const Poly x = var(2, 0), y = var(2, 1);
    const Poly h = (x * x + y * y) * q(1, 2) + x * x * x * y;
    // exact pair: noise floor
    const auto exact = drift_scaling(hamiltonian_field(h), h, {0.2, 0.1, 0.05}, 1.0, 1e-3);
    CHECK(exact.drifts[1] < 1e-10);
    // H missing its quartic term: drift ~ r^4
    const Poly h2 = (x * x + y * y) * q(1, 2);
    const auto trunc = drift_scaling(hamiltonian_field(h), h2, {0.2, 0.1, 0.05}, 1.0, 1e-3);
    REQUIRE(trunc.slope);
    CHECK(*trunc.slope == doctest::Approx(4.0).epsilon(0.05));
    const std::string text = trunc.to_text();
    CHECK(text.rfind("radius drift\n", 0) == 0);
    CHECK(text.find("slope ") != std::string::npos);
    CHECK_THROWS_AS(drift_scaling(hamiltonian_field(h), h, {0.1, 0.2}, 1.0, 1e-3), std::invalid_argument);
}

TEST_CASE("energy drift of a certificate scales past the certified order") {
    Gen gen(66);
    const auto freqs = nonresonant_frequencies(gen, SpectrumKind::elliptic, 2, 5);
    const auto inv = random_invariant_field(gen, SpectrumKind::elliptic, freqs, 2);
    const auto phi = Involution::canonical(2, SpectrumKind::elliptic);
    const Certificate c = certify(disguised_field(gen, inv.expand(), phi, 5), 5, HamiltonizeMode::orbital, phi);
    REQUIRE(verify_certificate(c));
    const auto report = energy_drift_scaling(c, {0.2, 0.1, 0.05});
    INFO(report.to_text());
    REQUIRE(report.slope);
    CHECK(*report.slope >= 4.5);
    const auto own = drift_scaling(c.output.components(), c.hamiltonian, {0.1}, 1.0, 1e-3);
    CHECK(own.drifts[0] < 1e-10);

    // a shaped input conserves every Delta_j: nothing to measure
    const Certificate shaped = small_certificate(SpectrumKind::elliptic, 2, 5, 67);
    const auto flat = energy_drift_scaling(shaped, {0.2, 0.1, 0.05});
    CHECK(flat.noise_floor);
    CHECK(flat.to_text().find("slope PASS_AT_NOISE_FLOOR") != std::string::npos);
}

TEST_CASE("zero field, constant energy") {
    const auto r = drift_scaling({Poly(2), Poly(2)}, cst(2, q(3)), {0.2, 0.1}, 1.0, 1e-2);
    CHECK(r.drifts == std::vector<double>{0.0, 0.0});
    CHECK(r.noise_floor);
}
