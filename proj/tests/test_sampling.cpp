#include <doctest.h>

#include <cmath>

#include "isoq/sampling.hpp"

using namespace isoq;

TEST_SUITE("sampling") {

TEST_CASE("matrix exponential") {
    Mat4C N = Mat4C::Zero();
    N(0, 1) = 2.0;
    N(1, 2) = 3.0;
    Mat4C expect = Mat4C::Identity() + N + 0.5 * N * N;
    CHECK((matrix_exp(N) - expect).cwiseAbs().maxCoeff() < 1e-14);
    Mat4C D = Mat4C::Zero();
    D.diagonal() << 1.0, cplx(0.0, 3.0), -2.0, 0.5;
    const Mat4C E = matrix_exp(D);
    for (int i = 0; i < 4; ++i) CHECK(std::abs(E(i, i) - std::exp(D(i, i))) < 1e-13 * std::abs(std::exp(D(i, i))));
}

TEST_CASE("random group elements") {
    Rng rng(31);
    for (int k = 0; k < 20; ++k) {
        CHECK(symplectic_residual(random_symplectic(rng)) < 1e-12);
        const Mat4C U = random_compact_sp2(rng);
        CHECK(symplectic_residual(U) < 1e-12);
        CHECK((U.adjoint() * U - Mat4C::Identity()).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(std::abs(random_sl2(rng).determinant() - 1.0) < 1e-12);
    }
}

TEST_CASE("point sets") {
    Rng rng(32);
    for (const cplx z : annulus_points(rng, 200, 0.5, 2.0, cplx(1.0, -1.0))) {
        const double r = std::abs(z - cplx(1.0, -1.0));
        CHECK(r >= 0.5);
        CHECK(r <= 2.0);
    }
    for (const cplx z : disk_points(rng, 200, 0.8)) CHECK(std::abs(z) <= 0.8);
}

TEST_CASE("Moebius maps") {
    Rng rng(33);
    for (int k = 0; k < 10; ++k) {
        const Mobius m = random_mobius(rng);
        CHECK(std::abs(m.a * m.d - m.b * m.c - 1.0) < 1e-13);
        const cplx z(0.2, 0.1);
        CHECK(std::abs(m.inverse(m(z)) - z) < 1e-12);
        const double h = 1e-6;
        CHECK(std::abs((m(z + h) - m(z - h)) / (2 * h) - m.derivative(z)) < 1e-8);
        CHECK(std::abs(mobius_expr(m).eval(z) - m(z)) < 1e-12);
    }
}

TEST_CASE("complex literals parse back") {
    const cplx z(-0.125, 3.5e-7);
    CHECK(parse_expr(complex_literal(z)).eval(cplx(0.0)) == z);
}

}
