#pragma once

#include <array>
#include <optional>

#include "isoq/jetvec.hpp"
#include "isoq/symplin.hpp"

namespace isoq {

using Vec4 = Eigen::Matrix<double, 4, 1>;
using Vec3 = Eigen::Matrix<double, 3, 1>;

// Calibration of the affine chart and of the flat projections.
extern const cplx kAffineC2;
extern const cplx kFlatSigma;
inline constexpr double kEndTol = 1e-8;

struct QPoint {
    Vec4C u1;
    Vec4C u2;
};

struct CP3Point {
    Vec4C xi;
};

enum class FlatTarget { R3, R12 };
enum class HyperbolicTarget { H3, H12 };

Vec5C plucker(const QPoint& P, double tol = 1e-9);
Vec5C plucker_raw(const Vec4C& u1, const Vec4C& u2);
JetVec5 plucker(const JetVec4& u1, const JetVec4& u2);
// g restricted to C^5 coordinates in the L-basis: 2 l1 l5 + 2 l2 l4 + l3^2.
cplx null_form(const Vec5C& l);
cplx null_form(const Vec5C& a, const Vec5C& b);
Jet null_form(const JetVec5& a, const JetVec5& b);

Jet isotropy_residual(const JetVec4& u1, const JetVec4& u2);

std::array<cplx, 3> affine_chart(const Vec5C& l);
std::array<cplx, 3> affine_chart(const QPoint& P);
Mat2C unimodular_chart(const Vec5C& l);
Mat2C unimodular_chart(const QPoint& P);
Mat2C contact_chart(const CP3Point& p);
// Pullback coefficient of the contact form; zero iff xi is Legendre.
Jet contact_residual(const JetVec4& xi);

Vec3 project_flat(const std::array<cplx, 3>& w, FlatTarget target);
Vec4 project_hyperbolic(const Mat2C& B, HyperbolicTarget target);
Vec3 ball_model(const Vec4& x);

Vec5 twistor_project(const CP3Point& p, const std::optional<Vec5>& sign_ref = std::nullopt);

}  // namespace isoq
