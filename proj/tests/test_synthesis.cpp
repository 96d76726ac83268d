#include <doctest.h>

#include <cmath>

#include "isoq/error.hpp"
#include "isoq/frames.hpp"
#include "isoq/sampling.hpp"
#include "isoq/synthesis.hpp"

using namespace isoq;

namespace {

double maxabs(const auto& M) { return M.cwiseAbs().maxCoeff(); }

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(1e-300, std::abs(b)); }

ErrorKind kind_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error thrown");
    return ErrorKind::Validation;
}

}  // namespace

TEST_SUITE("synthesis") {

TEST_CASE("constant coefficient gives the exponential") {
    Mat4C S = Mat4C::Random();
    S = (S + S.transpose()).eval();
    const Mat4C N = 0.3 * J() * S;
    Rng rng(61);
    const Mat4C A0 = random_symplectic(rng);
    const MCSystem sys{constant_field(N), A0, 0.0, "const"};
    const cplx z(0.8, -0.5);
    const PathResult r = integrate_path(sys, {0.0, z});
    CHECK(maxabs(r.A - A0 * matrix_exp(z * N)) < 1e-10 * maxabs(r.A));
    CHECK(r.symplectic_residual < 1e-10);
}

TEST_CASE("holomorphic integration is path independent") {
    const MCSystem sys = existence_system(parse_expr("z+2"), parse_expr("z"), 0.0);
    const cplx z(0.5, 0.4);
    const PathResult a = integrate_path(sys, {0.0, z});
    const PathResult b = integrate_path(sys, {0.0, cplx(0.6, -0.3), cplx(-0.2, 0.7), z});
    CHECK(maxabs(a.A - b.A) < 1e-9 * maxabs(a.A));
}

TEST_CASE("input validation") {
    const MCSystem sys = existence_system(parse_expr("z+2"), parse_expr("z"), 0.0);
    CHECK(kind_of([&] { (void)integrate_path(sys, {cplx(0.1), cplx(0.3)}); }) == ErrorKind::BaseMismatch);
    CHECK(kind_of([&] { (void)synthesize(parse_expr("z+2"), parse_expr("z"), 0.0, 2.0 * Mat4C::Identity()); }) ==
          ErrorKind::NotSymplectic);
    CHECK(kind_of([&] { (void)synthesize(parse_expr("z"), parse_expr("1"), 0.0); }) == ErrorKind::DVanishes);
}

TEST_CASE("Taylor frame solves the system") {
    const Jet z = Jet::variable(cplx(0.3, 0.1), 8);
    const Jet a = pow(z + 2.0, 0.25);
    const JetMat4 N = existence_form(a, z / a);
    const FrameJet A = taylor_frame(Mat4C::Identity(), N);
    const JetMat4 back = maurer_cartan(A);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) CHECK((back[i][j] - N[i][j]).truncated(6).max_abs() < 1e-11);
    CHECK(normal_form_residual(N) < 1e-12);
    CHECK(sp_residual(N) < 1e-14);
}

TEST_CASE("synthesized curves carry the prescribed differentials") {
    Rng rng(62);
    const std::vector<std::pair<const char*, const char*>> data = {
        {"z+2", "z"}, {"1+z^2/3", "2-z"}, {"3*i+z", "z^2"}};
    for (const auto& [D, G] : data) {
        CAPTURE(D);
        const CurveModel c = synthesize(parse_expr(D), parse_expr(G), 0.0);
        for (const cplx z : disk_points(rng, 4, 0.8)) {
            const Invariants inv = invariants_at(c, z);
            CHECK(rel(inv.delta, parse_expr(D).eval(z)) < 1e-6);
            CHECK(rel(inv.ddelta, parse_expr(G).eval(z)) < 1e-6);
        }
    }
}

TEST_CASE("synthesized copies are equivalent") {
    Rng rng(63);
    const Expr D = parse_expr("z+2"), G = parse_expr("z");
    const CurveModel a = synthesize(D, G, 0.0), b = synthesize(D, G, 0.0, random_symplectic(rng));
    const std::vector<cplx> samples = disk_points(rng, 5, 0.8);
    CHECK(equivalent(a, b, samples));
    CHECK_FALSE(equivalent(a, synthesize(D, parse_expr("z+1"), 0.0), samples));
}

TEST_CASE("W-curve data is reproduced") {
    // odd m+n: the closed forms are the invariants of the curve itself
    const Expr D = parse_expr("-(9*81-82*9*4+9*16)/(100*z^4)"), G = parse_expr("2*13/(5*z^2)");
    const CurveModel s = synthesize(D, G, 1.0);
    CHECK(equivalent(s, make_wcurve(3, 2), {cplx(1.2, 0.1), cplx(0.9, -0.3), cplx(1.4, 0.4)}));
}

}
