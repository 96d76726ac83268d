#pragma once

#include <array>
#include <vector>

#include "isoq/curves.hpp"
#include "isoq/jetvec.hpp"
#include "isoq/symplin.hpp"

namespace isoq {

using JetMat4 = std::array<std::array<Jet, 4>, 4>;  // [row][col]

// Extra jet order consumed between the curve and the Maurer-Cartan form of its reduced frame.
inline constexpr int kFrameMargin = 9;

struct FrameJet {
    std::array<JetVec4, 4> cols;
    cplx base() const { return cols[0][0].base(); }
    int order() const;
    Mat4C value() const;
};

struct DifferentialSample {
    int degree = 4;
    cplx base;
    Jet coeff;
};

struct Connection {
    Jet eta11, eta21, eta12;
};

struct Z8Frame {
    FrameJet frame;
    Connection eta;
};

FrameJet frame_from_values(const Mat4C& A, cplx base, int order);
FrameJet apply(const Mat4C& X, const FrameJet& A);

JetMat4 maurer_cartan(const FrameJet& A);
// Residuals below are relative to the largest coefficient of alpha (at least 1).
double alpha_scale(const JetMat4& alpha);
double sp_residual(const JetMat4& alpha);
// The six normal-form relations, each as a jet.
std::array<Jet, 6> normal_form_residuals(const JetMat4& alpha);
double normal_form_residual(const JetMat4& alpha);

// Reduced frame built from a Legendre jet xi and the gauge function q, q^3 = rho^2 w(xi', xi'').
FrameJet normal_frame_from_q(const JetVec4& xi, const Jet& q);
FrameJet normal_frame_from_rho(const JetVec4& xi, const Jet& rho);

// The frame returned has Maurer-Cartan form of the requested order.
FrameJet reduce_frame(const CurveModel& model, cplx z0, int order = kDefaultOrder);
FrameJet reduce_frame(const CurveModel& model, cplx z0, int order, const Jet& rho);

DifferentialSample quartic_delta(const FrameJet& A);
DifferentialSample quartic_delta(const CurveModel& model, cplx z0, int order = kDefaultOrder);

Connection connection_of(const JetMat4& alpha);
Z8Frame z8_reduce(const FrameJet& A);
DifferentialSample quadratic_ddelta(const CurveModel& model, cplx z0, int order = kDefaultOrder);

Jet d_naive(const Jet& Z);
Jet schwarzian(const Jet& h);
// Correction term r with d(delta) = d_naive(delta) + r, from a reduced frame in any gauge.
Jet ddelta_correction(const JetMat4& alpha);
// Residual of the transformation law for d under z~ = h(z), quartic W given in the z~ chart at h(z0).
double d_transform_check(const Jet& W, const Jet& h);

struct TwoPath {
    cplx z8;          // 4 eta21 eta12 in the Z8 gauge
    cplx corrected;   // d_naive(delta) + r in the base gauge
};
TwoPath ddelta_two_path(const CurveModel& model, cplx z0);

struct Invariants {
    cplx delta;
    cplx ddelta;
    cplx kappa;
};
inline constexpr int kMinInvariantOrder = 6;
// delta, d(delta) and kappa at z0; kappa is NaN when delta vanishes. order is the jet order of the
// Maurer-Cartan form used for the reduction (at least kMinInvariantOrder).
Invariants invariants_at(const CurveModel& model, cplx z0, int order = kDefaultOrder);
cplx bending(const CurveModel& model, cplx z0);
// True when delta vanishes to jet order at z0 (relative to the frame scale).
bool is_cycle_at(const CurveModel& model, cplx z0, double tol = 1e-10);

cplx r_map(cplx kappa);

struct Region {
    cplx center{0.0, 0.0};
    double r_in = 0.0;
    double r_out = 1.0;
};
std::vector<cplx> heptactic_points(const CurveModel& model, const Region& region, int grid = 24);

Mat4C osculating_cycle(const CurveModel& model, cplx z0);
CurveModel osculating_cycle_model(const CurveModel& model, cplx z0);

struct ContactOptions {
    bool reparametrize = true;
    double tol = 1e-7;
};
// Largest k <= maxk with analytic contact of order k; -1 if the curves do not meet.
int contact_order(const CurveModel& a, cplx za, const CurveModel& b, cplx zb, int maxk,
                  const ContactOptions& opt = {});
int contact_order(const CurveModel& a, const CurveModel& b, cplx z0, int maxk);
// Same test on Pluecker lifts given directly as jets.
int contact_order_lifts(const JetVec5& psi_a, const JetVec5& psi_b, int maxk, const ContactOptions& opt = {});

}  // namespace isoq
