#include <doctest.h>

#include <cmath>
#include <random>

#include "isoq/error.hpp"
#include "isoq/jets.hpp"

using namespace isoq;

namespace {

double factorial(int k) { return k <= 1 ? 1.0 : k * factorial(k - 1); }

Jet random_jet(std::mt19937_64& rng, cplx base, int order) {
    std::normal_distribution<double> n;
    std::vector<cplx> c;
    for (int k = 0; k <= order; ++k) c.emplace_back(n(rng), n(rng));
    return Jet(base, c);
}

double diff(const Jet& a, const Jet& b) {
    double m = 0.0;
    for (int k = 0; k <= std::min(a.order(), b.order()); ++k) m = std::max(m, std::abs(a[k] - b[k]));
    return m;
}

}  // namespace

TEST_SUITE("jets") {

TEST_CASE("exp and log series coefficients") {
    const Jet z = Jet::variable(0.0, 12);
    const Jet e = exp(z);
    for (int k = 0; k <= 12; ++k) CHECK(std::abs(e[k] - 1.0 / factorial(k)) < 1e-15);
    const Jet l = log(1.0 + z);
    for (int k = 1; k <= 12; ++k) CHECK(std::abs(l[k] - (k % 2 ? 1.0 : -1.0) / k) < 1e-14);
}

TEST_CASE("derivatives agree with closed forms away from zero") {
    const cplx z0(0.7, -0.4);
    const Jet z = Jet::variable(z0, 8);
    const Jet f = exp(z) * pow(z, 0.5);
    // d/dz e^z z^(1/2) = e^z z^(1/2) (1 + 1/(2z))
    const cplx expected = std::exp(z0) * std::sqrt(z0) * (1.0 + 0.5 / z0);
    CHECK(std::abs(f.derivative(1) - expected) < 1e-13);
    CHECK(std::abs(derive(f)[0] - expected) < 1e-13);
}

TEST_CASE("algebraic identities hold coefficientwise") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 20; ++t) {
        const cplx base(0.3 * t, -0.1 * t);
        Jet a = random_jet(rng, base, 10), b = random_jet(rng, base, 10);
        b[0] += 3.0;
        CHECK(diff((a * b) / b, a) < 1e-10);
        CHECK(diff(sqrt(b) * sqrt(b), b) < 1e-10);
        CHECK(diff(pow(b, 1.0 / 3.0) * pow(b, 1.0 / 3.0) * pow(b, 1.0 / 3.0), b) < 1e-10);
        CHECK(diff(exp(log(b)), b) < 1e-10);
        CHECK(diff(pow_int(b, 3), b * b * b) < 1e-10);
        CHECK(diff(pow_rational(b, 3, 2), sqrt(b) * b) < 1e-10);
        CHECK(diff(derive(a * b), derive(a) * b + a * derive(b)) < 1e-9);
    }
}

TEST_CASE("composition") {
    const Jet z = Jet::variable(0.0, 10);
    const Jet inner = z + z * z * 0.5;
    const Jet c = compose(exp(Jet::variable(0.0, 10)), inner);
    CHECK(diff(c, exp(inner)) < 1e-13);
}

TEST_CASE("division strips a common valuation") {
    const Jet z = Jet::variable(0.0, 8);
    const DivResult r = jet_divide(z * z + z * z * z, z * (1.0 + z));
    CHECK(r.stripped == 1);
    CHECK(std::abs(r.quotient[0]) < 1e-15);
    CHECK(std::abs(r.quotient[1] - 1.0) < 1e-15);
    CHECK_THROWS_AS(jet_divide(Jet::constant(0.0, 4, 1.0), z), Error);
    CHECK_THROWS_AS(jet_divide(z, Jet::constant(0.0, 4, 0.0)), Error);
}

TEST_CASE("branch policy at a vanishing base") {
    const Jet z = Jet::variable(0.0, 6);
    try {
        (void)pow(z, 0.5);
        FAIL("expected BranchPointAtBase");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::BranchPointAtBase);
    }
    // z^2 to the power 1/2 has an integer valuation and is z
    CHECK(diff(pow(z * z, 0.5), z) < 1e-15);
    CHECK_THROWS_AS(log(z), Error);
}

TEST_CASE("principal branch at the constant term") {
    const Jet z = Jet::variable(cplx(-1.0, 1e-3), 4);
    CHECK(std::abs(sqrt(z).value() - std::sqrt(cplx(-1.0, 1e-3))) < 1e-15);
}

TEST_CASE("jets near a pole are not read as vanishing") {
    // coefficients of 1/z^4 at 0.15 grow like 0.15^-k, far beyond the base value at high order
    const Jet z = Jet::variable(cplx(0.15, 0.02), 24);
    const Jet d = 2.0 / pow_int(z, 4);
    CHECK(valuation(d) == 0);
    const Jet q = pow(d, 0.25);
    CHECK(std::abs(q.value() - std::pow(d.value(), 0.25)) < 1e-12 * std::abs(q.value()));
    const Jet q4 = pow_int(q, 4);
    for (int k = 0; k <= 24; ++k) CHECK(std::abs(q4[k] - d[k]) <= 1e-11 * std::abs(d[k]));
}

TEST_CASE("base mismatch is rejected") {
    CHECK_THROWS_AS(Jet::variable(0.0, 3) + Jet::variable(1.0, 3), Error);
}

TEST_CASE("valuation and strip") {
    const Jet z = Jet::variable(0.0, 6);
    const Stripped s = strip(z * z * z * (2.0 + z));
    CHECK(s.valuation == 3);
    CHECK(std::abs(s.unit[0] - 2.0) < 1e-15);
    CHECK(valuation(Jet::constant(0.0, 5, 0.0)) == 6);
}

TEST_CASE("truncated evaluation") {
    const Jet z = Jet::variable(0.5, 3);
    const Jet p = z * z;
    CHECK(std::abs(p.eval(0.7) - 0.49) < 1e-15);
}

}
