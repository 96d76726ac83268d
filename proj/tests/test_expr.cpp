#include <doctest.h>

#include <cmath>
#include <numbers>

#include "isoq/error.hpp"
#include "isoq/expr.hpp"

using namespace isoq;

TEST_SUITE("expr") {

TEST_CASE("literals and arithmetic") {
    CHECK(parse_expr("2*z + i").eval(cplx(1.0)) == cplx(2.0, 1.0));
    CHECK(std::abs(parse_expr("(1+2*i)*z^2 - 3/z").eval(cplx(0.5, 0.5)) -
                   (cplx(1.0, 2.0) * cplx(0.5, 0.5) * cplx(0.5, 0.5) - 3.0 / cplx(0.5, 0.5))) < 1e-14);
    CHECK(std::abs(parse_expr("-z^2").eval(cplx(3.0)) + 9.0) < 1e-15);
    CHECK(std::abs(parse_expr("exp(0.1*z)*log(z)").eval(cplx(2.0)) - std::exp(0.2) * std::log(2.0)) < 1e-15);
    CHECK(std::abs(parse_expr("1.5e-1*z").eval(cplx(2.0)) - 0.3) < 1e-15);
}

TEST_CASE("syntax errors carry an offset") {
    try {
        (void)parse_expr("z^^2");
        FAIL("expected a syntax error");
    } catch (const SyntaxError& e) {
        CHECK(e.offset() == 2);
    }
    CHECK_THROWS_AS(parse_expr("(z+1"), SyntaxError);
    CHECK_THROWS_AS(parse_expr("foo(z)"), SyntaxError);
    CHECK_THROWS_AS(parse_expr(""), SyntaxError);
}

TEST_CASE("rational powers take the principal branch") {
    const Expr g = parse_expr("z^(-1)*(z^5-1)^(-3/5)");
    const cplx z(0.4, 0.7);
    CHECK(std::abs(g.eval(z) - std::pow(z * z * z * z * z - 1.0, -0.6) / z) < 1e-14);
    CHECK(std::abs(parse_expr("z^(1/2)").eval(cplx(-4.0, -1e-14)) - cplx(0.0, -2.0)) < 1e-12);
}

TEST_CASE("jet evaluation matches pointwise derivatives") {
    const Expr e = parse_expr("z^3*exp(z) + (1+z)^(1/3)");
    const cplx z0(0.3, -0.2);
    const Jet j = e.eval(Jet::variable(z0, 4));
    const double h = 1e-4;
    const cplx fd = (e.eval(z0 + h) - e.eval(z0 - h)) / (2 * h);
    CHECK(std::abs(j.value() - e.eval(z0)) < 1e-15);
    CHECK(std::abs(j.derivative(1) - fd) < 1e-7);
}

TEST_CASE("poles and branch points at the evaluation point") {
    CHECK_THROWS_AS(parse_expr("1/z").eval(cplx(0.0)), Error);
    CHECK_THROWS_AS(parse_expr("1/z").eval(Jet::variable(0.0, 3)), Error);
    CHECK_THROWS_AS(parse_expr("z^(1/2)").eval(Jet::variable(0.0, 3)), Error);
}

TEST_CASE("continued evaluation follows the path") {
    const Expr s = parse_expr("z^(1/2)");
    ContinuedEvaluator c(s);
    cplx last;
    for (int k = 0; k <= 64; ++k) last = c.eval(std::polar(1.0, 2.0 * std::numbers::pi * k / 64.0));
    // one loop around the origin changes the sign of the square root
    CHECK(std::abs(last + 1.0) < 1e-12);
    CHECK(std::abs(s.eval(cplx(1.0)) - 1.0) < 1e-15);
    c.reset();
    CHECK(std::abs(c.eval(cplx(1.0)) - 1.0) < 1e-15);
}

}
