#include <doctest.h>

#include "reviham/document.hpp"
#include "reviham/normalform.hpp"
#include "reviham/verify.hpp"
#include "support.hpp"

#include <fstream>
#include <sstream>

using namespace reviham;
using namespace reviham::testing;

namespace {

std::string fixture(const std::string& name) {
    std::ifstream in(std::string(REVIHAM_DATA_DIR) + "/" + name);
    REQUIRE(in);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

int error_line(const std::string& text) {
    try {
        parse_field_document(text);
    } catch (const ParseError& e) {
        return e.line();
    }
    return 0;
}

const std::string kHead = "reviham-format 1\nfield\ndimension: 2\nkind: elliptic\nfrequencies: 1\n";

}  // namespace

TEST_CASE("field documents: fixtures parse") {
    const auto desk = parse_field_document(fixture("desk6.field"));
    CHECK(desk.field.dimension() == 6);
    CHECK(desk.involution == Involution::canonical(3, SpectrumKind::elliptic));
    CHECK(is_reversible(desk.field, desk.involution, 9));
    CHECK_FALSE(desk.d4);

    const auto d4 = parse_field_document(fixture("d4_35.field"));
    REQUIRE(d4.d4);
    CHECK(d4.d4->r1 == 3);
    CHECK(d4.d4->r2 == 5);

    const auto saddle = parse_field_document(fixture("saddle2_quadratic.field"));
    CHECK(saddle.field.kind() == SpectrumKind::saddle);
    CHECK(saddle.involution == Involution::canonical(1, SpectrumKind::saddle));
    CHECK(saddle.field[0] == var(2, 0) + var(2, 0) * var(2, 0));
}

TEST_CASE("field documents: round trip") {
    Gen gen(80);
    const auto x = random_reversible_field(gen, SpectrumKind::saddle, {q(1), q(7, 3)}, 4);
    const Involution phi(linear_map(Involution::canonical(2, SpectrumKind::saddle).linearization()));
    const FieldDocument doc{x, phi, D4Structure{Involution::canonical(2, SpectrumKind::elliptic), 3, 5}};
    const auto back = parse_field_document(serialize(doc));
    CHECK(back.field.components() == x.components());
    CHECK(back.field.frequencies() == x.frequencies());
    CHECK(back.involution == phi);
    REQUIRE(back.d4);
    CHECK(*back.d4 == *doc.d4);
    CHECK(serialize(back) == serialize(doc));
}

TEST_CASE("field documents: diagnostics carry the line") {
    CHECK(error_line("field\n") == 1);
    CHECK(error_line("reviham-format 1\ncertificate\n") == 2);
    CHECK(error_line(kHead + "term: 0 1/0 0 1\n") == 6);
    CHECK(error_line(kHead + "term: 2 1 0 1\n") == 6);
    CHECK(error_line(kHead + "term: 0 1 0\n") == 6);
    CHECK(error_line(kHead + "# comment\n\nterm: 0 1 0 -1\n") == 8);
    CHECK(error_line(kHead + "colour: red\n") == 6);
    CHECK(error_line(kHead + "kind: saddle\n") == 6);
    CHECK(error_line(kHead + "involution-row: 1 0\n") == 6);
    CHECK(error_line("reviham-format 1\nfield\ndimension: 4\nkind: elliptic\nfrequencies: 1\n") == 6);
    CHECK(error_line("reviham-format 1\nfield\ndimension: 3\n") == 3);
    CHECK(error_line(kHead + "d4-ratio: 3 5\n") == 7);
    CHECK(error_line(kHead + "term: 1 1 1 0\n") == 0);
    try {
        parse_field_document(kHead + "term: 0 x 0 1\n");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("term") != std::string::npos);
    }
}

TEST_CASE("normal-form certificates") {
    Gen gen(81);
    const auto x = random_reversible_field(gen, SpectrumKind::elliptic, {q(1), q(11, 7)}, 5);
    const auto phi = Involution::canonical(2, SpectrumKind::elliptic);
    NormalFormOptions opts;
    opts.involution = phi;
    const auto r = poincare_dulac(x, 5, opts);
    NormalFormCertificate c{5, x, phi, r.normal_form, r.transformation,
                            jet(pushforward(r.transformation, x, 5).components() - r.normal_form.components(), 5)};
    CHECK(verify_normal_form(c));
    const std::string text = serialize(c);
    CHECK(document_type(text) == "normal-form");
    const auto back = parse_normal_form_certificate(text);
    CHECK(back == c);
    CHECK(serialize(back) == text);

    auto bad = c;
    bad.normal_form = bad.normal_form.with_components(bad.normal_form.components() + PolyMap{pow(var(4, 0), 3), Poly(4), Poly(4), Poly(4)});
    const auto report = verify_normal_form(bad);
    CHECK_FALSE(report);
    CHECK(report.degree == 3);
    CHECK(report.component == 0);
}
