// reviham: normal forms and hamiltonization certificates for reversible fields.
//
//   reviham check <field>
//   reviham normal-form <field> [--order N] [--out F]
//   reviham hamiltonize <field> [--order N] [--mode M] [--out F]
//   reviham verify <certificate> [--drift]
//
// Exit codes: 0 ok, 1 usage or I/O, 2 hypothesis, 3 solver, 4 verification.

#include "reviham/document.hpp"
#include "reviham/hamiltonize.hpp"
#include "reviham/normalform.hpp"
#include "reviham/verify.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace reviham;

namespace {

enum Exit { kOk = 0, kUsage = 1, kHypothesis = 2, kSolver = 3, kVerification = 4 };

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void emit(const std::string& text, const std::string& out) {
    if (out.empty() || out == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f || !(f << text)) throw std::runtime_error("cannot write " + out);
}

FieldDocument load_field(const std::string& path) {
    try {
        return parse_field_document(slurp(path));
    } catch (const ParseError& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

void line(const std::string& name, bool ok, const std::string& detail = {}) {
    std::cout << name << ": " << (ok ? "PASS" : "FAIL");
    if (!detail.empty()) std::cout << " (" << detail << ')';
    std::cout << '\n';
}

int cmd_check(const FieldDocument& doc, int order) {
    const VectorField& x = doc.field;
    bool all = true;
    auto report = [&](const std::string& name, bool ok, const std::string& detail = {}) {
        line(name, ok, detail);
        all = all && ok;
    };

    const auto singular = simple_singularity_defect(x);
    report("simple singularity", !singular, singular.value_or(""));
    const auto bad_phi = involution_defect(doc.involution, order);
    report("involution", !bad_phi, bad_phi.value_or(""));
    const bool reversible = !bad_phi && is_reversible(x, doc.involution, order);
    report("reversibility", reversible);

    if (doc.d4) {
        const bool ok = !singular && reversible &&
                        check_d4_preconditions(x, doc.involution, doc.d4->g2, doc.d4->r1, doc.d4->r2);
        report("D4 structure", ok, std::to_string(doc.d4->r1) + ":" + std::to_string(doc.d4->r2));
    } else {
        const auto acc = accidental_resonances(x.kind(), x.frequencies(), order);
        std::string detail;
        if (!acc.empty()) detail = describe(acc.front(), x.kind()) + (acc.size() > 1 ? ", ..." : "");
        report("nonresonance (order " + std::to_string(order) + ")", acc.empty(), detail);
    }

    if (singular || !reversible) {
        std::cout << "j³ Hamiltonian: SKIP\ngenericity F: SKIP\n";
        return kHypothesis;
    }
    NormalFormOptions opts;
    opts.involution = doc.involution;
    opts.strict = false;
    const NormalFormResult nf = poincare_dulac(x, 3, opts);
    const MatrixXr c = cubic_cross_coefficients(nf.normal_form);
    report("j³ Hamiltonian", check_j3_hamiltonian(c));
    const Rational f = check_genericity(c);
    report("genericity F", f != 0, "F = " + format_rational(f));
    return all ? kOk : kHypothesis;
}

int cmd_normal_form(const FieldDocument& doc, int order, const std::string& out) {
    NormalFormOptions opts;
    opts.involution = doc.involution;
    const NormalFormResult r = poincare_dulac(doc.field, order, opts);
    NormalFormCertificate c;
    c.order = order;
    c.input = doc.field.with_components(jet(doc.field.components(), order));
    c.involution = doc.involution;
    c.normal_form = r.normal_form;
    c.normal_form_map = r.transformation;
    c.residual = jet(pushforward(r.transformation, c.input, order).components() - r.normal_form.components(), order);
    const auto check = verify_normal_form(c);
    if (!check) {
        std::cerr << "error: " << check.summary() << '\n';
        return kVerification;
    }
    emit(serialize(c), out);
    return kOk;
}

int cmd_hamiltonize(const FieldDocument& doc, int order, HamiltonizeMode mode, const std::string& out) {
    if (mode == HamiltonizeMode::d4_resonant && !doc.d4) {
        throw PreconditionFailure("D4 structure", "--mode d4 needs d4-g2-row and d4-ratio lines");
    }
    const Certificate c = certify(doc.field, order, mode, doc.involution, mode == HamiltonizeMode::d4_resonant ? doc.d4 : std::nullopt);
    const auto check = verify_certificate(c);
    if (!check) {
        std::cerr << "error: " << check.summary() << '\n';
        return kVerification;
    }
    emit(serialize(c), out);
    return kOk;
}

int cmd_verify(const std::string& path, bool drift) {
    const std::string text = slurp(path);
    const std::string type = document_type(text);
    VerificationReport report;
    std::optional<Certificate> cert;
    if (type == "certificate") {
        cert = parse_certificate(text);
        report = verify_certificate(*cert);
    } else if (type == "normal-form") {
        if (drift) throw std::invalid_argument("--drift needs a full certificate");
        report = verify_normal_form(parse_normal_form_certificate(text));
    } else {
        throw ParseError(2, "not a certificate: '" + type + "'");
    }
    std::cout << report.summary() << '\n';
    if (!report) return kVerification;
    if (drift) std::cout << energy_drift_scaling(*cert, {0.2, 0.1, 0.05}).to_text();
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Normal forms and hamiltonization certificates for reversible vector fields"};
    app.require_subcommand(1);

    std::string file, out, mode_name = "orbital";
    int order = 7;
    bool drift = false;

    auto* check = app.add_subcommand("check", "Report each hypothesis on a field file");
    check->add_option("file", file, "field file")->required();
    check->add_option("--order", order, "order N for the nonresonance check")->check(CLI::Range(2, 40));

    auto* nf = app.add_subcommand("normal-form", "Reversible Poincare-Dulac normal form with its certificate");
    nf->add_option("file", file, "field file")->required();
    nf->add_option("--order", order, "truncation order N")->check(CLI::Range(2, 40));
    nf->add_option("--out", out, "output path (stdout by default)");

    auto* ham = app.add_subcommand("hamiltonize", "Normal form followed by hamiltonization, as a certificate");
    ham->add_option("file", file, "field file")->required();
    ham->add_option("--order", order, "odd truncation order N >= 3")->check(CLI::Range(3, 39));
    ham->add_option("--mode", mode_name, "orbital, decoupled6, conjugacy6 or d4")
        ->check(CLI::IsMember({"orbital", "decoupled6", "conjugacy6", "d4"}));
    ham->add_option("--out", out, "output path (stdout by default)");

    auto* ver = app.add_subcommand("verify", "Recheck a certificate from scratch");
    ver->add_option("file", file, "certificate file")->required();
    ver->add_flag("--drift", drift, "also print the energy drift table");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*check) return cmd_check(load_field(file), order);
        if (*nf) return cmd_normal_form(load_field(file), order, out);
        if (*ham) return cmd_hamiltonize(load_field(file), order, parse_mode(mode_name), out);
        if (*ver) return cmd_verify(file, drift);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const SingularSystem& e) {
        std::cerr << "solver failure: " << e.what() << '\n';
        return kSolver;
    } catch (const PreconditionFailure& e) {
        std::cerr << "hypothesis failed: " << e.what() << '\n';
        return kHypothesis;
    } catch (const NotGeneric& e) {
        std::cerr << "hypothesis failed: not generic: " << e.what() << '\n';
        return kHypothesis;
    } catch (const ResonanceError& e) {
        std::cerr << "hypothesis failed: resonance: " << e.what() << '\n';
        return kHypothesis;
    } catch (const NonSimpleSingularity& e) {
        std::cerr << "hypothesis failed: " << e.what() << '\n';
        return kHypothesis;
    } catch (const ShapeViolation& e) {
        std::cerr << "hypothesis failed: " << e.what() << '\n';
        return kHypothesis;
    } catch (const IntegrationError& e) {
        std::cerr << "drift: " << e.what() << '\n';
        return kVerification;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::logic_error& e) {
        std::cerr << "solver failure: " << e.what() << '\n';
        return kSolver;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}
