#pragma once

// Line-oriented input files describing a field, its reversor and optional D4 data.
//
//   reviham-format 1
//   field
//   dimension: 4
//   kind: elliptic
//   frequencies: 1 3/2
//   term: <component> <coeff> <e_1> ... <e_2n>
//   involution-row: <2n entries>          (2n rows; canonical reversor if absent)
//   involution-term: <component> <coeff> <e_1> ... <e_2n>
//   d4-g2-row: <2n entries>               (4 rows)
//   d4-ratio: <r1> <r2>
//
// Blank lines and lines starting with '#' are ignored. Exponents are listed in
// the variable order x1 y1 x2 y2 ...

#include "reviham/certificate.hpp"

#include <optional>
#include <string_view>

namespace reviham {

struct FieldDocument {
    VectorField field;
    Involution involution;
    std::optional<D4Structure> d4;
};

/// Throws ParseError naming the line and the offending field.
FieldDocument parse_field_document(std::string_view text);

std::string serialize(const FieldDocument& doc);

}  // namespace reviham
