#pragma once

#include <string>

#include "isoq/frames.hpp"
#include "isoq/synthesis.hpp"

namespace isoq {

CurveModel goursat_apply(const CurveModel& model, const Mat4C& X);

enum class GoursatClass { Conformal, Classical, Hyperbolic };
const char* to_string(GoursatClass c);
GoursatClass classify_goursat(const Mat4C& X, double tol = 1e-10);

Mat4C bonnet_matrix(double b);
// i times the matrix of the Thomsen associate family, so that the result is symplectic.
Mat4C thomsen_factor();

DifferentialSample deformation_s(const Jet& a_hat);

// Curve with reduced frame A' = A (P + b Q): delta = dz^4, d(delta) = b dz^2.
struct AffineData {
    Expr b;
    cplx base{0.0, 0.0};
    Mat4C A0 = Mat4C::Identity();
};
CurveModel unimodular_curve(const AffineData& f);
// Fourth order deformation with a -> a_hat and b -> a_hat^{-1} b + 2 a_hat''/a_hat^2 - 3 a_hat'^2/a_hat^3.
CurveModel deform4(const AffineData& f, const Expr& a_hat);

// Frame jets of a curve that carries a reduced frame (synthesized, possibly Goursat transformed).
FrameJet frame_of(const CurveModel& model, cplx z0, int order);

// a P + b Q pushed forward to o(5) on the L-basis, as jets.
std::array<std::array<Jet, 5>, 5> pushforward_form(const Jet& a, const Jet& b);
// Columns F_(0..4) of the jet recursion F_(h) = (d/dz + N) F_(h-1), F_(0) = b_1, at the base point.
Mat5C jet_recursion(const Jet& a, const Jet& b);
// R_ij = C(j, i) r_{j-i}.
Mat5C pascal_r(const std::array<cplx, 5>& r);
// Closed form r_0..r_4 for a = 1 and given a_hat, b, b_hat.
std::array<cplx, 5> r_closed_form(int eps, const Jet& a_hat, const Jet& b, const Jet& b_hat);
// r_0..r_4 from R^T (F^T G F) R = F_hat^T G F_hat.
std::array<cplx, 5> r_solve(int eps, const Mat5C& F, const Mat5C& F_hat);

struct DeformationReport {
    std::array<cplx, 5> r{};
    Mat5C R;
    Mat5C D;
    double orth_residual = 0.0;
    int contact_order = -1;
    int epsilon = 1;
    bool closed_form = false;  // r taken from the closed form rather than the orthogonality solve
    double closed_form_residual = 0.0;
    double f_condition = 0.0;
    bool valid = false;
};
inline constexpr int kContactCap = 8;
DeformationReport verify_deformation(const CurveModel& f, const CurveModel& f_hat, cplx z0);

struct NSelfTest {
    double pushforward_residual = 0.0;  // spin_pushforward vs the derivative of spin_cover
    double a_part_residual = 0.0;       // a-part of the transcribed matrix vs the pushforward
    double b_coeff_derived = 0.0;
    double b_coeff_transcribed = 0.0;
};
NSelfTest n_self_test();

}  // namespace isoq
