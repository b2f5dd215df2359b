#include <doctest.h>

#include "szabolab/catalog.hpp"
#include "szabolab/report.hpp"

using namespace szabolab;

namespace {

const char* kDilatingText = R"(# single-row sample
dim 3
family family-1
torsion_free true
G[1,1,1] = x1
G[1,2,1] = 2*x3
G[1,3,1] = -2*x2
)";

const char* kQuadraticText = R"(dim 3
family family-2
torsion_free true
G[1,1,2] = x1^2
G[2,2,3] = x1 + x2
G[3,3,1] = x2 + x3^2
)";

bool connections_equal(const Connection& a, const Connection& b) {
    if (a.dim() != b.dim()) return false;
    for (int i = 1; i <= a.dim(); ++i)
        for (int j = 1; j <= a.dim(); ++j)
            for (int k = 1; k <= a.dim(); ++k)
                if (!(a.gamma(i, j, k) == b.gamma(i, j, k))) return false;
    return true;
}

}  // namespace

TEST_SUITE("dsl") {

TEST_CASE("parsing a declared-symmetric single-row file") {
    ConnectionSpec spec = parse_connection_file(kDilatingText);
    CHECK(spec.dim == 3);
    CHECK(spec.variables == std::vector<std::string>{"x1", "x2", "x3"});
    CHECK(spec.torsion_free_declared);
    CHECK(spec.declared_family == FamilyTag::family1);
    REQUIRE(spec.christoffels.size() == 3);
    Connection conn = spec.to_connection();
    CHECK(connections_equal(conn, catalog::family1_dilating()));
    CHECK(is_torsion_free(conn));
}

TEST_CASE("an empty entry list is the flat connection") {
    ConnectionSpec spec = parse_connection_file("dim 3\n");
    Connection conn = spec.to_connection();
    CHECK(connections_equal(conn, Connection::flat(3)));
}

TEST_CASE("function declarations feed opaque atoms") {
    const char* text =
        "dim 3\n"
        "func f(x1)\n"
        "func g(x3)\n"
        "torsion_free true\n"
        "G[1,1,2] = f(x1) + g(x3)\n";
    ConnectionSpec spec = parse_connection_file(text);
    Connection conn = spec.to_connection();
    Expr expected = Expr::atom(Atom::func("f", {1})) + Expr::atom(Atom::func("g", {3}));
    CHECK(conn.gamma(1, 1, 2) == expected);
}

TEST_CASE("round trip: print then parse is the identity") {
    const char* kOpaqueText =
        "dim 3\n"
        "func u(x2)\n"
        "func v(x2)\n"
        "func t(x3)\n"
        "torsion_free true\n"
        "G[2,2,3] = u(x2)\n"
        "G[3,3,1] = v(x2) + t(x3)\n";
    for (const char* text : {kDilatingText, kQuadraticText, kOpaqueText}) {
        ConnectionSpec spec = parse_connection_file(text);
        std::string printed = print_connection_spec(spec);
        ConnectionSpec again = parse_connection_file(printed);
        CHECK(again == spec);
        CHECK(print_connection_spec(again) == printed);
    }
}

TEST_CASE("expressions support rationals, powers, and grouping") {
    ConnectionSpec ctx = parse_connection_file("dim 3\n");
    CHECK(parse_expression_text("1/2*x1 + x2^3", ctx) ==
          scale(Expr::chart_var(1), Rational(1, 2)) + pow_int(Expr::chart_var(2), 3));
    CHECK(parse_expression_text("-(x1 - x2)*x3", ctx) ==
          neg((Expr::chart_var(1) - Expr::chart_var(2)) * Expr::chart_var(3)));
    CHECK(parse_expression_text("2^3", ctx) == Expr::constant(8));
}

TEST_CASE("syntax errors carry line and column") {
    try {
        parse_connection_file("dim 3\nG[1,1,1] = x1 +\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
        CHECK(e.col > 10);
    }
}

TEST_CASE("unknown variables and bad indices are rejected") {
    CHECK_THROWS_AS(parse_connection_file("dim 3\nG[1,1,1] = y\n"), ParseError);
    CHECK_THROWS_AS(parse_connection_file("dim 3\nG[4,1,1] = x1\n"), ParseError);
    CHECK_THROWS_AS(parse_connection_file("dim 3\nG[0,1,1] = x1\n"), ParseError);
    CHECK_THROWS_AS(parse_connection_file("dim 3\nG[1,1,1] = f(x1)\n"), ParseError);
    CHECK_THROWS_AS(parse_connection_file("dim 3\nvars u v w\n"), ParseError);
    CHECK_THROWS_AS(parse_connection_file("G[1,1,1] = x1\n"), ParseError);
}

TEST_CASE("duplicate and inconsistent entries are rejected") {
    CHECK_THROWS_AS(parse_connection_file("dim 2\nG[1,1,1] = x1\nG[1,1,1] = x2\n"), ParseError);
    ConnectionSpec spec = parse_connection_file(
        "dim 2\ntorsion_free true\nG[1,2,1] = x1\nG[2,1,1] = x2\n");
    CHECK_THROWS_AS(spec.to_connection(), ParseError);
}

TEST_CASE("function argument mismatches are rejected") {
    CHECK_THROWS_AS(parse_connection_file("dim 3\nfunc f(x1)\nG[1,1,1] = f(x2)\n"), ParseError);
    CHECK_THROWS_AS(parse_connection_file("dim 3\nfunc x1(x1)\n"), ParseError);
    CHECK_THROWS_AS(parse_connection_file("dim 3\nfunc f(x1)\nfunc f(x2)\n"), ParseError);
}

TEST_CASE("reports are deterministic and json is newline terminated") {
    ConnectionSpec spec = parse_connection_file(kQuadraticText);
    Options opt;
    Report first = run(Command::check_szabo, spec, opt);
    Report second = run(Command::check_szabo, spec, opt);
    CHECK(json_string(first) == json_string(second));
    CHECK(json_string(first).back() == '\n');
    CHECK_FALSE(first.any_failure);
    CHECK(first.body["cyclic_parallel"]["verdict"] == true);
    CHECK(first.body["szabo"]["is_szabo"] == false);
    CHECK(first.body["szabo"]["trace_identity_ok"] == true);
    CHECK(first.body["szabo"]["failing_coefficient"]["degree"] == 1);
}

TEST_CASE("extend on the flat connection") {
    ConnectionSpec spec = parse_connection_file("dim 3\n");
    Report report = run(Command::extend, spec, Options{});
    CHECK_FALSE(report.any_failure);
    CHECK(report.body["extension"]["szabo"]["is_szabo"] == true);
    CHECK(report.body["extension"]["levi_civita_routes_agree"] == true);
    CHECK(report.body["extension"]["metric_compatible"] == true);
}

TEST_CASE("torsion failures surface in the report") {
    ConnectionSpec spec = parse_connection_file("dim 2\nG[1,2,1] = x1\n");
    Report report = run(Command::check_szabo, spec, Options{});
    CHECK(report.body["torsion_free"] == false);
    CHECK(report.any_failure);
    CHECK(report.body.contains("error"));
}

TEST_CASE("dimension cap for command-line inputs") {
    ConnectionSpec spec = parse_connection_file("dim 5\n");
    Report report = run(Command::check_cyclic, spec, Options{});
    CHECK(report.any_failure);
    CHECK(report.body.contains("error"));
}

TEST_CASE("missing spec is an error for file commands") {
    Report report = run(Command::check_cyclic, std::nullopt, Options{});
    CHECK(report.any_failure);
}

}  // TEST_SUITE
