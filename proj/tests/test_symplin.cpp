#include <doctest.h>

#include <cmath>

#include "isoq/deformation.hpp"
#include "isoq/error.hpp"
#include "isoq/sampling.hpp"
#include "isoq/symplin.hpp"

using namespace isoq;

namespace {

Vec4C e(int i) { return Vec4C::Unit(i - 1); }
double maxabs(const auto& M) { return M.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_SUITE("symplin") {

TEST_CASE("symplectic pairing") {
    CHECK(omega_pair(e(1), e(3)) == cplx(1.0));
    CHECK(omega_pair(e(2), e(4)) == cplx(1.0));
    CHECK(omega_pair(e(3), e(1)) == cplx(-1.0));
    Rng rng(1);
    Vec4C x;
    for (int i = 0; i < 4; ++i) x(i) = random_complex(rng);
    CHECK(std::abs(omega_pair(x, x)) < 1e-15);
}

TEST_CASE("group membership") {
    CHECK(symplectic_residual(Mat4C::Identity()) == 0.0);
    Rng rng(2);
    for (int k = 0; k < 10; ++k) CHECK(symplectic_residual(embed_sl2(random_sl2(rng))) < 1e-12);
    CHECK(symplectic_residual(bonnet_matrix(0.7)) < 1e-12);
    CHECK(symplectic_residual(2.0 * Mat4C::Identity()) > 1.0);
}

TEST_CASE("L-basis coordinates") {
    Vec5C c = lbasis_decompose(lbasis(3));
    CHECK(maxabs(c - Vec5C::Unit(2)) < 1e-15);
    c = lbasis_decompose(elem4(2, 1) - elem4(1, 2));
    CHECK(maxabs(c - Vec5C::Unit(0)) == 0.0);
    Rng rng(3);
    Vec5C r;
    for (int k = 0; k < 5; ++k) r(k) = random_complex(rng);
    CHECK(maxabs(lbasis_decompose(lbasis_compose(r)) - r) < 1e-14);
    CHECK_THROWS_AS(lbasis_decompose(Mat4C::Identity()), Error);
}

TEST_CASE("Gram matrix is the antidiagonal") {
    CHECK(gram_self_test() < 1e-14);
    CHECK(std::abs(gfrak(lbasis(1), lbasis(5)) - 1.0) < 1e-14);
    CHECK(std::abs(gfrak(lbasis(3), lbasis(3)) - 1.0) < 1e-14);
    CHECK(std::abs(gfrak(lbasis(1), lbasis(1))) < 1e-14);
}

TEST_CASE("real form carries a positive definite product") {
    for (int a = 1; a <= 5; ++a)
        for (int b = 1; b <= 5; ++b) CHECK(std::abs(gfrak(real_basis(a), real_basis(b)) - (a == b ? 1.0 : 0.0)) < 1e-12);
}

TEST_CASE("spin cover is an orthogonal homomorphism") {
    CHECK(maxabs(spin_cover(Mat4C::Identity()) - Mat5C::Identity()) < 1e-15);
    Rng rng(4);
    for (int k = 0; k < 10; ++k) {
        const Mat4C A = random_symplectic(rng), B = random_symplectic(rng);
        const Mat5C LA = spin_cover(A), LB = spin_cover(B);
        CHECK(maxabs(spin_cover(A * B) - LA * LB) < 1e-10 * std::max(1.0, maxabs(LA) * maxabs(LB)));
        CHECK(gram_orthogonality_residual(LA) < 1e-10 * std::max(1.0, maxabs(LA) * maxabs(LA)));
        CHECK(gram_orthogonality_residual(spin_cover(embed_sl2(random_sl2(rng)))) < 1e-10);
    }
    CHECK_THROWS_AS(spin_cover(2.0 * Mat4C::Identity()), Error);
}

TEST_CASE("spin pushforward is the derivative of the cover") {
    Rng rng(5);
    Mat4C S = Mat4C::Random();
    S = (S + S.transpose()).eval();
    const Mat4C X = 0.5 * J() * S;
    REQUIRE(sp_algebra_residual(X) < 1e-14);
    const double h = 1e-5;
    const Mat5C fd = (spin_cover(matrix_exp(h * X)) - spin_cover(matrix_exp(-h * X))) / (2.0 * h);
    CHECK(maxabs(fd - spin_pushforward(X)) < 1e-8);
}

TEST_CASE("cube representation") {
    CHECK(maxabs(embed_sl2(Mat2C::Identity()) - Mat4C::Identity()) < 1e-15);
    Mat2C d = Mat2C::Zero();
    d(0, 0) = 2.0;
    d(1, 1) = 0.5;
    Mat4C expect = Mat4C::Zero();
    expect.diagonal() << 8.0, 2.0, 0.125, 0.5;
    CHECK(maxabs(embed_sl2(d) - expect) < 1e-15);
    Rng rng(6);
    for (int k = 0; k < 10; ++k) {
        const Mat2C x = random_sl2(rng), y = random_sl2(rng);
        CHECK(maxabs(embed_sl2(x * y) - embed_sl2(x) * embed_sl2(y)) < 1e-11);
    }
    Mat2C bad = Mat2C::Identity();
    bad(0, 0) = 2.0;
    CHECK_THROWS_AS(embed_sl2(bad), Error);
}

TEST_CASE("algebra embedding is the derivative of the group embedding") {
    Mat2C y;
    y << cplx(0.3, 0.1), cplx(-0.2, 0.5), cplx(0.7, -0.4), cplx(-0.3, -0.1);
    const double h = 1e-5;
    const auto ex = [](const Mat2C& m) {
        Mat4C M = Mat4C::Zero();
        M.topLeftCorner<2, 2>() = m;
        return matrix_exp(M).topLeftCorner<2, 2>().eval();
    };
    const Mat4C fd = (embed_sl2(ex(h * y)) - embed_sl2(ex(-h * y))) / (2.0 * h);
    CHECK(maxabs(fd - embed_sl2_algebra(y)) < 1e-8);
    CHECK(sp_algebra_residual(embed_sl2_algebra(y)) < 1e-14);
}

TEST_CASE("upper triangular preimage") {
    Mat2C x;
    x << cplx(1.3, 0.2), cplx(-0.4, 0.9), 0.0, 1.0 / cplx(1.3, 0.2);
    Mat2C back;
    REQUIRE(h1_preimage(embed_sl2(x), back));
    CHECK(maxabs(embed_sl2(back) - embed_sl2(x)) < 1e-12);
    Rng rng(7);
    CHECK_FALSE(h1_preimage(random_symplectic(rng), back));
}

TEST_CASE("real coordinates") {
    RealCoords r = real_coords(lbasis(3));
    CHECK(maxabs(r.coords - Vec5::Unit(2)) < 1e-15);
    CHECK(r.residual == 0.0);
    r = real_coords((lbasis(1) + lbasis(5)) / std::sqrt(2.0));
    CHECK(maxabs(r.coords - Vec5::Unit(0)) < 1e-15);
    r = real_coords(cplx(0.0, 1.0) * real_basis(1));
    CHECK(r.residual > 0.5);
    const Vec5 x = Vec5::Random();
    CHECK(maxabs(real_coords(real_compose(x)).coords - x) < 1e-14);
}

}
