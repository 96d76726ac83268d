#include <doctest.h>

#include <random>
#include <vector>

#include "isoq/kernels.hpp"

using namespace isoq::kernels;

TEST_SUITE("kernels") {

TEST_CASE("scalar Cauchy product matches the definition") {
    const std::vector<cplx> a = {1.0, 2.0, cplx(0.0, 1.0)};
    const std::vector<cplx> b = {3.0, -1.0, 0.5};
    std::vector<cplx> out(3);
    cauchy_scalar(a.data(), b.data(), out.data(), 3);
    CHECK(out[0] == cplx(3.0));
    CHECK(out[1] == cplx(5.0));
    CHECK(std::abs(out[2] - cplx(-1.5, 3.0)) < 1e-15);
}

TEST_CASE("AVX2 kernel agrees with the scalar reference") {
    if (!avx2_available()) {
        MESSAGE("AVX2 not available; equivalence not exercised");
        return;
    }
    std::mt19937_64 rng(5);
    std::normal_distribution<double> n;
    for (int len = 1; len <= 48; ++len) {
        std::vector<cplx> a(len), b(len), r1(len), r2(len);
        for (int k = 0; k < len; ++k) a[k] = {n(rng), n(rng)}, b[k] = {n(rng), n(rng)};
        cauchy_scalar(a.data(), b.data(), r1.data(), len);
        cauchy_avx2(a.data(), b.data(), r2.data(), len);
        double m = 0.0, s = 0.0;
        for (int k = 0; k < len; ++k) m = std::max(m, std::abs(r1[k] - r2[k])), s = std::max(s, std::abs(r1[k]));
        CHECK(m <= 1e-14 * std::max(1.0, s) * len);
    }
}

TEST_CASE("dispatch names a kernel") {
    const std::string name = cauchy_name();
    CHECK((name == "scalar" || name == "avx2"));
    CHECK(cauchy() != nullptr);
}

}
