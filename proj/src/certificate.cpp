#include "reviham/certificate.hpp"

#include <ostream>
#include <sstream>

namespace reviham {

std::string to_string(HamiltonizeMode mode) {
    switch (mode) {
        case HamiltonizeMode::orbital: return "orbital";
        case HamiltonizeMode::decoupled6: return "decoupled6";
        case HamiltonizeMode::conjugacy6: return "conjugacy6";
        case HamiltonizeMode::d4_resonant: return "d4";
    }
    return "?";
}

HamiltonizeMode parse_mode(std::string_view text) {
    if (text == "orbital") return HamiltonizeMode::orbital;
    if (text == "decoupled6") return HamiltonizeMode::decoupled6;
    if (text == "conjugacy6") return HamiltonizeMode::conjugacy6;
    if (text == "d4" || text == "d4_resonant") return HamiltonizeMode::d4_resonant;
    throw std::invalid_argument("unknown mode '" + std::string(text) + "'");
}

namespace {

void write_poly(std::ostream& out, const std::string& label, const Poly& p) {
    out << "poly " << label << ' ' << p.size() << '\n' << serialize(p);
}

void write_map(std::ostream& out, const std::string& label, const PolyMap& m) {
    out << "map " << label << ' ' << m.size() << '\n';
    for (std::size_t i = 0; i < m.size(); ++i) write_poly(out, std::to_string(i), m[i]);
}

void write_transformation(std::ostream& out, const std::string& label, const Transformation& t) {
    out << "transformation " << label << ' ' << t.psi.size() << ' ' << t.working_order << '\n';
    for (std::size_t i = 0; i < t.psi.size(); ++i) {
        write_map(out, "step-psi", t.psi[i]);
        write_poly(out, "step-theta", t.theta[i]);
    }
    write_map(out, "total", t.total);
    write_poly(out, "rho", t.rho);
}

class Reader {
public:
    explicit Reader(std::string_view text) {
        std::istringstream in{std::string(text)};
        int number = 0;
        for (std::string line; std::getline(in, line);) {
            ++number;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty()) continue;
            lines_.emplace_back(number, std::move(line));
        }
    }

    bool done() const { return pos_ >= lines_.size(); }
    int line() const { return done() ? (lines_.empty() ? 0 : lines_.back().first + 1) : lines_[pos_].first; }

    const std::string& peek() const {
        if (done()) throw ParseError(line(), "unexpected end of certificate");
        return lines_[pos_].second;
    }

    std::string next() {
        const std::string& l = peek();
        ++pos_;
        return l;
    }

    [[noreturn]] void fail(const std::string& what) const { throw ParseError(line(), what); }

    void expect(const std::string& exact) {
        const int at = line();
        if (next() != exact) throw ParseError(at, "expected '" + exact + "'");
    }

    /// "key: value" -> value.
    std::string value(const std::string& key) {
        const int at = line();
        const std::string l = next();
        const std::string prefix = key + ": ";
        if (l.rfind(prefix, 0) != 0) throw ParseError(at, "expected '" + key + ":'");
        return l.substr(prefix.size());
    }

    /// Header "<kind> <label> <count...>" -> the numeric fields.
    std::vector<long> header(const std::string& kind, const std::string& label, std::size_t count) {
        const int at = line();
        std::istringstream in(next());
        std::string k, l;
        in >> k >> l;
        if (k != kind || l != label) throw ParseError(at, "expected '" + kind + " " + label + "'");
        std::vector<long> nums;
        long v = 0;
        while (in >> v) nums.push_back(v);
        if (nums.size() != count || !in.eof()) throw ParseError(at, "malformed '" + kind + " " + label + "' header");
        for (long x : nums) {
            if (x < 0) throw ParseError(at, "negative count");
        }
        return nums;
    }

    Poly poly(int d, const std::string& label) {
        const long terms = header("poly", label, 1)[0];
        Poly p(d);
        for (long i = 0; i < terms; ++i) {
            const int at = line();
            try {
                parse_term_line(next(), p);
            } catch (const ParseError&) {
                throw;
            } catch (const std::exception& e) {
                throw ParseError(at, e.what());
            }
        }
        return p;
    }

    PolyMap map(int d, const std::string& label, int components) {
        const int at = line();
        const long count = header("map", label, 1)[0];
        if (count != components) throw ParseError(at, "map '" + label + "' needs " + std::to_string(components) + " components");
        PolyMap m;
        for (int i = 0; i < components; ++i) m.push_back(poly(d, std::to_string(i)));
        return m;
    }

    Transformation transformation(int d, const std::string& label) {
        const auto nums = header("transformation", label, 2);
        Transformation t;
        t.working_order = static_cast<int>(nums[1]);
        for (long i = 0; i < nums[0]; ++i) {
            t.psi.push_back(map(d, "step-psi", d));
            t.theta.push_back(poly(d, "step-theta"));
        }
        t.total = map(d, "total", d);
        t.rho = poly(d, "rho");
        return t;
    }

private:
    std::vector<std::pair<int, std::string>> lines_;
    std::size_t pos_ = 0;
};

int parse_int(Reader& r, const std::string& text) {
    std::size_t used = 0;
    int v = 0;
    try {
        v = std::stoi(text, &used);
    } catch (const std::exception&) {
        r.fail("expected an integer, got '" + text + "'");
    }
    if (used != text.size()) r.fail("expected an integer, got '" + text + "'");
    return v;
}

std::pair<SpectrumKind, std::vector<Rational>> read_spectrum(Reader& r) {
    SpectrumKind kind{};
    try {
        kind = parse_spectrum_kind(r.value("kind"));
    } catch (const std::invalid_argument& e) {
        throw ParseError(r.line() - 1, e.what());
    }
    std::vector<Rational> freqs;
    {
        std::istringstream in(r.value("frequencies"));
        for (std::string tok; in >> tok;) {
            try {
                freqs.push_back(parse_rational(tok));
            } catch (const std::exception& e) {
                throw ParseError(r.line() - 1, e.what());
            }
        }
    }
    if (freqs.empty() || 2 * freqs.size() > kMaxVariables) throw ParseError(r.line() - 1, "bad number of frequencies");
    return {kind, freqs};
}

void write_spectrum(std::ostream& out, const VectorField& x) {
    out << "kind: " << to_string(x.kind()) << '\n';
    out << "frequencies:";
    for (const auto& f : x.frequencies()) out << ' ' << format_rational(f);
    out << '\n';
}

}  // namespace

void write(std::ostream& out, const Certificate& c) {
    const VectorField& x = c.input;
    out << kFormatHeader << '\n' << "certificate\n";
    out << "mode: " << to_string(c.mode) << '\n';
    out << "order: " << c.order << '\n';
    write_spectrum(out, x);
    out << "genericity: " << format_rational(c.genericity) << '\n';
    if (c.d4) out << "d4-ratio: " << c.d4->r1 << ' ' << c.d4->r2 << '\n';
    write_map(out, "involution", c.involution.components());
    if (c.d4) write_map(out, "d4-g2", c.d4->g2.components());
    write_map(out, "input", x.components());
    write_map(out, "normal-form", c.normal_form.components());
    write_transformation(out, "normal-form-map", c.normal_form_map);
    write_map(out, "output", c.output.components());
    write_poly(out, "hamiltonian", c.hamiltonian);
    write_transformation(out, "hamiltonize", c.transformation);
    out << "residuals: " << c.residuals.size() << '\n';
    for (const auto& [order, r] : c.residuals) write_map(out, "residual-" + std::to_string(order), r);
    out << "end\n";
}

std::string serialize(const Certificate& c) {
    std::ostringstream out;
    write(out, c);
    return out.str();
}

Certificate parse_certificate(std::string_view text) {
    Reader r(text);
    r.expect(kFormatHeader);
    r.expect("certificate");
    Certificate c;
    try {
        c.mode = parse_mode(r.value("mode"));
    } catch (const std::invalid_argument& e) {
        throw ParseError(r.line() - 1, e.what());
    }
    c.order = parse_int(r, r.value("order"));
    const auto [kind, freqs] = read_spectrum(r);
    const int d = static_cast<int>(2 * freqs.size());
    try {
        c.genericity = parse_rational(r.value("genericity"));
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception& e) {
        throw ParseError(r.line() - 1, e.what());
    }
    std::optional<std::pair<int, int>> ratio;
    if (r.peek().rfind("d4-ratio: ", 0) == 0) {
        std::istringstream in(r.value("d4-ratio"));
        int a = 0, b = 0;
        if (!(in >> a >> b)) r.fail("malformed d4-ratio");
        ratio = {a, b};
    }
    c.involution = Involution(r.map(d, "involution", d));
    if (ratio) c.d4 = D4Structure{Involution(r.map(d, "d4-g2", d)), ratio->first, ratio->second};
    try {
        c.input = VectorField(kind, freqs, r.map(d, "input", d));
        c.normal_form = c.input.with_components(r.map(d, "normal-form", d));
        c.normal_form_map = r.transformation(d, "normal-form-map");
        c.output = c.input.with_components(r.map(d, "output", d));
    } catch (const DimensionMismatch& e) {
        r.fail(e.what());
    }
    c.hamiltonian = r.poly(d, "hamiltonian");
    c.transformation = r.transformation(d, "hamiltonize");
    const int count = parse_int(r, r.value("residuals"));
    for (int i = 0; i < count; ++i) {
        const std::string& head = r.peek();
        const auto dash = head.find("residual-");
        const auto space = head.find(' ', dash == std::string::npos ? 0 : dash);
        if (head.rfind("map residual-", 0) != 0 || space == std::string::npos) r.fail("expected a residual map");
        const std::string label = head.substr(4, space - 4);
        const int order = parse_int(r, label.substr(9));
        if (c.residuals.count(order)) r.fail("duplicate residual order");
        c.residuals[order] = r.map(d, label, d);
    }
    r.expect("end");
    if (!r.done()) r.fail("trailing content after 'end'");
    return c;
}

std::string serialize(const NormalFormCertificate& c) {
    std::ostringstream out;
    out << kFormatHeader << '\n' << "normal-form\n";
    out << "order: " << c.order << '\n';
    write_spectrum(out, c.input);
    write_map(out, "involution", c.involution.components());
    write_map(out, "input", c.input.components());
    write_map(out, "normal-form", c.normal_form.components());
    write_transformation(out, "normal-form-map", c.normal_form_map);
    write_map(out, "residual", c.residual);
    out << "end\n";
    return out.str();
}

NormalFormCertificate parse_normal_form_certificate(std::string_view text) {
    Reader r(text);
    r.expect(kFormatHeader);
    r.expect("normal-form");
    NormalFormCertificate c;
    c.order = parse_int(r, r.value("order"));
    const auto [kind, freqs] = read_spectrum(r);
    const int d = static_cast<int>(2 * freqs.size());
    c.involution = Involution(r.map(d, "involution", d));
    try {
        c.input = VectorField(kind, freqs, r.map(d, "input", d));
        c.normal_form = c.input.with_components(r.map(d, "normal-form", d));
    } catch (const DimensionMismatch& e) {
        r.fail(e.what());
    }
    c.normal_form_map = r.transformation(d, "normal-form-map");
    c.residual = r.map(d, "residual", d);
    r.expect("end");
    if (!r.done()) r.fail("trailing content after 'end'");
    return c;
}

std::string document_type(std::string_view text) {
    Reader r(text);
    r.expect(kFormatHeader);
    return r.next();
}

}  // namespace reviham
