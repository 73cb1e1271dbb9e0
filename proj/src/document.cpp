#include "reviham/document.hpp"

#include <sstream>
#include <vector>

namespace reviham {

namespace {

struct Line {
    int number;
    std::string key;
    std::vector<std::string> values;
};

[[noreturn]] void fail(const Line& l, const std::string& what) { throw ParseError(l.number, l.key + ": " + what); }

Rational rational_at(const Line& l, std::size_t i) {
    try {
        return parse_rational(l.values.at(i));
    } catch (const std::exception&) {
        fail(l, "expected a rational, got '" + (i < l.values.size() ? l.values[i] : std::string()) + "'");
    }
}

int int_at(const Line& l, std::size_t i) {
    const std::string& s = l.values.at(i);
    std::size_t used = 0;
    int v = 0;
    try {
        v = std::stoi(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != s.size()) fail(l, "expected an integer, got '" + s + "'");
    return v;
}

// "<component> <coeff> <e_1> ... <e_d>" added into the map.
void add_term(const Line& l, int d, PolyMap& target) {
    if (static_cast<int>(l.values.size()) != d + 2) fail(l, "expected component, coefficient and " + std::to_string(d) + " exponents");
    const int comp = int_at(l, 0);
    if (comp < 0 || comp >= d) fail(l, "component " + std::to_string(comp) + " out of range");
    const Rational c = rational_at(l, 1);
    Monomial m(d);
    for (int v = 0; v < d; ++v) {
        const int e = int_at(l, static_cast<std::size_t>(v + 2));
        if (e < 0 || e > 60) fail(l, "exponent out of range");
        m.set(v, e);
    }
    target[static_cast<std::size_t>(comp)].add_term(m, c);
}

MatrixXr matrix_from_rows(const std::vector<Line>& rows, int d, const std::string& what, int end_line) {
    if (static_cast<int>(rows.size()) != d) {
        throw ParseError(rows.empty() ? end_line : rows.back().number,
                         what + ": expected " + std::to_string(d) + " rows, got " + std::to_string(rows.size()));
    }
    MatrixXr m(d, d);
    for (int i = 0; i < d; ++i) {
        const Line& l = rows[static_cast<std::size_t>(i)];
        if (static_cast<int>(l.values.size()) != d) fail(l, "expected " + std::to_string(d) + " entries");
        for (int j = 0; j < d; ++j) m(i, j) = rational_at(l, static_cast<std::size_t>(j));
    }
    return m;
}

void write_row(std::ostream& out, const char* key, const MatrixXr& m, int i) {
    out << key << ':';
    for (Eigen::Index j = 0; j < m.cols(); ++j) out << ' ' << format_rational(m(i, j));
    out << '\n';
}

void write_terms(std::ostream& out, const char* key, const PolyMap& map) {
    for (std::size_t i = 0; i < map.size(); ++i) {
        for (const auto& [m, c] : map[i].terms()) {
            out << key << ": " << i << ' ' << format_rational(c);
            for (int v = 0; v < m.dimension(); ++v) out << ' ' << m[v];
            out << '\n';
        }
    }
}

}  // namespace

FieldDocument parse_field_document(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::vector<Line> lines;
    int number = 0;
    int last = 0;
    for (std::string raw; std::getline(in, raw);) {
        ++number;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        const auto first = raw.find_first_not_of(" \t");
        if (first == std::string::npos || raw[first] == '#') continue;
        last = number;
        Line l{number, {}, {}};
        const auto colon = raw.find(':');
        std::istringstream words(colon == std::string::npos ? raw : raw.substr(colon + 1));
        l.key = colon == std::string::npos ? raw.substr(first) : raw.substr(first, colon - first);
        if (colon != std::string::npos) {
            for (std::string w; words >> w;) l.values.push_back(w);
        }
        lines.push_back(std::move(l));
    }
    if (lines.size() < 2 || lines[0].key != kFormatHeader) {
        throw ParseError(lines.empty() ? 1 : lines[0].number, std::string("expected '") + kFormatHeader + "'");
    }
    if (lines[1].key != "field" || !lines[1].values.empty()) throw ParseError(lines[1].number, "expected 'field'");

    std::optional<int> dimension;
    std::optional<SpectrumKind> kind;
    std::optional<std::vector<Rational>> freqs;
    std::optional<std::pair<int, int>> ratio;
    std::vector<Line> terms, inv_rows, inv_terms, g2_rows;
    for (std::size_t i = 2; i < lines.size(); ++i) {
        const Line& l = lines[i];
        auto once = [&](bool seen) {
            if (seen) fail(l, "given twice");
        };
        if (l.key == "dimension") {
            once(dimension.has_value());
            if (l.values.size() != 1) fail(l, "expected one value");
            dimension = int_at(l, 0);
            if (*dimension <= 0 || *dimension % 2 != 0 || *dimension > kMaxVariables) fail(l, "must be even, between 2 and 16");
        } else if (l.key == "kind") {
            once(kind.has_value());
            if (l.values.size() != 1) fail(l, "expected one value");
            try {
                kind = parse_spectrum_kind(l.values[0]);
            } catch (const std::exception& e) {
                fail(l, e.what());
            }
        } else if (l.key == "frequencies") {
            once(freqs.has_value());
            freqs.emplace();
            for (std::size_t k = 0; k < l.values.size(); ++k) freqs->push_back(rational_at(l, k));
        } else if (l.key == "term") {
            terms.push_back(l);
        } else if (l.key == "involution-row") {
            inv_rows.push_back(l);
        } else if (l.key == "involution-term") {
            inv_terms.push_back(l);
        } else if (l.key == "d4-g2-row") {
            g2_rows.push_back(l);
        } else if (l.key == "d4-ratio") {
            once(ratio.has_value());
            if (l.values.size() != 2) fail(l, "expected r1 r2");
            ratio = {int_at(l, 0), int_at(l, 1)};
        } else {
            fail(l, "unknown key");
        }
    }
    if (!dimension) throw ParseError(last + 1, "missing 'dimension'");
    if (!kind) throw ParseError(last + 1, "missing 'kind'");
    if (!freqs) throw ParseError(last + 1, "missing 'frequencies'");
    const int d = *dimension;
    if (static_cast<int>(freqs->size()) * 2 != d) {
        throw ParseError(last + 1, "frequencies: expected " + std::to_string(d / 2) + " values for dimension " + std::to_string(d));
    }

    PolyMap comps(static_cast<std::size_t>(d), Poly(d));
    for (const auto& l : terms) add_term(l, d, comps);

    FieldDocument doc;
    doc.field = VectorField(*kind, *freqs, std::move(comps));
    if (inv_rows.empty()) {
        if (!inv_terms.empty()) fail(inv_terms.front(), "correction terms need involution-row lines");
        doc.involution = Involution::canonical(d / 2, *kind);
    } else {
        PolyMap phi = linear_map(matrix_from_rows(inv_rows, d, "involution-row", last + 1));
        for (const auto& l : inv_terms) add_term(l, d, phi);
        doc.involution = Involution(std::move(phi));
    }
    if (!g2_rows.empty() || ratio) {
        if (g2_rows.empty()) throw ParseError(last + 1, "d4-ratio given without d4-g2-row lines");
        if (!ratio) throw ParseError(last + 1, "d4-g2-row given without d4-ratio");
        doc.d4 = D4Structure{Involution::linear(matrix_from_rows(g2_rows, d, "d4-g2-row", last + 1)), ratio->first, ratio->second};
    }
    return doc;
}

std::string serialize(const FieldDocument& doc) {
    std::ostringstream out;
    const VectorField& x = doc.field;
    out << kFormatHeader << "\nfield\n";
    out << "dimension: " << x.dimension() << '\n';
    out << "kind: " << to_string(x.kind()) << '\n';
    out << "frequencies:";
    for (const auto& f : x.frequencies()) out << ' ' << format_rational(f);
    out << '\n';
    write_terms(out, "term", x.components());
    const MatrixXr l = doc.involution.linearization();
    for (int i = 0; i < x.dimension(); ++i) write_row(out, "involution-row", l, i);
    PolyMap correction = doc.involution.components() - linear_map(l);
    write_terms(out, "involution-term", correction);
    if (doc.d4) {
        const MatrixXr g = doc.d4->g2.linearization();
        for (int i = 0; i < x.dimension(); ++i) write_row(out, "d4-g2-row", g, i);
        out << "d4-ratio: " << doc.d4->r1 << ' ' << doc.d4->r2 << '\n';
    }
    return out.str();
}

}  // namespace reviham
