#pragma once

// Self-contained record of a hamiltonization run and its text serialization.

#include "reviham/field.hpp"

#include <iosfwd>
#include <map>
#include <optional>
#include <string>

namespace reviham {

enum class HamiltonizeMode { orbital, decoupled6, conjugacy6, d4_resonant };

std::string to_string(HamiltonizeMode mode);
/// Accepts orbital, decoupled6, conjugacy6, d4 (and d4_resonant).
HamiltonizeMode parse_mode(std::string_view text);

/// Second reversor and frequency ratio r1:r2 of a D4-symmetric 4D field.
struct D4Structure {
    Involution g2;
    int r1 = 0;
    int r2 = 0;

    friend bool operator==(const D4Structure&, const D4Structure&) = default;
};

struct Certificate {
    HamiltonizeMode mode = HamiltonizeMode::orbital;
    int order = 0;
    VectorField input;
    Involution involution;  // reversor of the input
    std::optional<D4Structure> d4;
    VectorField normal_form;
    Transformation normal_form_map;  // input -> normal form, rho == 1
    VectorField output;              // Y
    Poly hamiltonian;                // H with Y = J grad H up to `order`
    Transformation transformation;   // Psi_*(rho . normal_form) = Y up to `order`
    Rational genericity;             // product of the cubic cross-coefficients
    std::map<int, PolyMap> residuals;  // odd order -> residual jet, all zero

    friend bool operator==(const Certificate&, const Certificate&) = default;
};

/// The normal-form stage alone: Psi_pd_* input = normal_form up to `order`.
struct NormalFormCertificate {
    int order = 0;
    VectorField input;
    Involution involution;
    VectorField normal_form;
    Transformation normal_form_map;
    PolyMap residual;  // jet(Psi_pd_* input - normal_form, order), zero

    friend bool operator==(const NormalFormCertificate&, const NormalFormCertificate&) = default;
};

inline constexpr const char* kFormatHeader = "reviham-format 1";

std::string serialize(const Certificate& c);
void write(std::ostream& out, const Certificate& c);
/// Throws ParseError with the offending line number.
Certificate parse_certificate(std::string_view text);

std::string serialize(const NormalFormCertificate& c);
NormalFormCertificate parse_normal_form_certificate(std::string_view text);

/// Second line of a versioned document ("certificate", "normal-form", "field"),
/// after checking the format header.
std::string document_type(std::string_view text);

}  // namespace reviham
