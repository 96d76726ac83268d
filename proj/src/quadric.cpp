#include "isoq/quadric.hpp"

#include <cmath>

#include "isoq/error.hpp"

namespace isoq {

const cplx kAffineC2 = cplx(0.0, -1.0 / std::sqrt(2.0));
const cplx kFlatSigma = cplx(1.0, 0.0);

namespace {

const double kSqrt2 = std::sqrt(2.0);

template <typename T>
std::array<T, 5> plucker_components(const std::array<T, 4>& a, const std::array<T, 4>& b) {
    auto X = [&](int i, int j) { return a[i] * b[j] - b[i] * a[j]; };
    return {X(1, 0), X(3, 0), (X(2, 0) + X(1, 3)) * cplx(1.0 / kSqrt2), X(2, 1), X(3, 2)};
}

std::array<cplx, 4> arr(const Vec4C& v) { return {v(0), v(1), v(2), v(3)}; }

}  // namespace

Vec5C plucker_raw(const Vec4C& u1, const Vec4C& u2) {
    const auto c = plucker_components(arr(u1), arr(u2));
    Vec5C l;
    for (int k = 0; k < 5; ++k) l(k) = c[static_cast<std::size_t>(k)];
    return l;
}

Vec5C plucker(const QPoint& P, double tol) {
    const double scale = P.u1.norm() * P.u2.norm();
    if (scale == 0.0) throw Error(ErrorKind::NotLagrangian, "degenerate spanning vectors");
    if (std::abs(omega_pair(P.u1, P.u2)) > tol * scale) throw Error(ErrorKind::NotLagrangian, "plane is not Lagrangian");
    const Vec5C l = plucker_raw(P.u1, P.u2);
    if (l.norm() <= 1e-12 * scale) throw Error(ErrorKind::NotLagrangian, "u1 and u2 are parallel");
    return l;
}

JetVec5 plucker(const JetVec4& u1, const JetVec4& u2) {
    const auto c = plucker_components(u1, u2);
    return {c[0], c[1], c[2], c[3], c[4]};
}

cplx null_form(const Vec5C& a, const Vec5C& b) {
    return a(0) * b(4) + a(4) * b(0) + a(1) * b(3) + a(3) * b(1) + a(2) * b(2);
}

cplx null_form(const Vec5C& l) { return null_form(l, l); }

Jet null_form(const JetVec5& a, const JetVec5& b) {
    return a[0] * b[4] + a[4] * b[0] + a[1] * b[3] + a[3] * b[1] + a[2] * b[2];
}

Jet isotropy_residual(const JetVec4& u1, const JetVec4& u2) {
    if (u1[0].base() != u2[0].base()) throw Error(ErrorKind::BaseMismatch, "u1 and u2 at different points");
    const JetVec4 d1 = derive(u1), d2 = derive(u2);
    const Jet m11 = omega_pair(u1, d1), m12 = omega_pair(u1, d2);
    const Jet m21 = omega_pair(u2, d1), m22 = omega_pair(u2, d2);
    return m11 * m22 - m12 * m21;
}

std::array<cplx, 3> affine_chart(const Vec5C& l) {
    if (std::abs(l(0)) < kEndTol * l.norm())
        throw Error(ErrorKind::OnHyperplaneSection, "point lies on the section l1 = 0");
    return {-l(3) / l(0), kAffineC2 * l(2) / l(0), l(1) / l(0)};
}

std::array<cplx, 3> affine_chart(const QPoint& P) { return affine_chart(plucker(P)); }

Mat2C unimodular_chart(const Vec5C& l) {
    if (std::abs(l(2)) < kEndTol * l.norm())
        throw Error(ErrorKind::OnHyperplaneSection, "point lies on the section l3 = 0");
    Mat2C B;
    B << l(0), -l(1), -l(3), -l(4);
    return (kSqrt2 / l(2)) * B;
}

Mat2C unimodular_chart(const QPoint& P) { return unimodular_chart(plucker(P)); }

Mat2C contact_chart(const CP3Point& p) {
    const Vec4C& x = p.xi;
    const double n2 = x.squaredNorm();
    if (n2 == 0.0) throw Error(ErrorKind::Validation, "zero vector in CP3");
    Mat2C B;
    B << x(1), x(0), x(2), x(3);
    const cplx det = B.determinant();
    if (std::abs(det) < kEndTol * n2) throw Error(ErrorKind::OnQuadric, "point lies on the quadric xi1 xi3 = xi2 xi4");
    return B / std::sqrt(det);
}

Jet contact_residual(const JetVec4& xi) {
    const JetVec4 d = derive(xi);
    return xi[2] * d[0] - xi[0] * d[2] + xi[3] * d[1] - xi[1] * d[3];
}

Vec3 project_flat(const std::array<cplx, 3>& w, FlatTarget target) {
    const cplx s = w[0] + w[2], t = w[0] - w[2];
    const cplx m = kFlatSigma * w[1];
    if (target == FlatTarget::R3) return Vec3(s.real() / 2, t.imag() / 2, m.real());
    return Vec3(m.real(), s.imag() / 2, t.real() / 2);
}

Vec4 project_hyperbolic(const Mat2C& B, HyperbolicTarget target) {
    if (std::abs(std::abs(B.determinant()) - 1.0) > 1e-8)
        throw Error(ErrorKind::NotUnimodular, "|det B| must be 1");
    Mat2C D = Mat2C::Identity();
    if (target == HyperbolicTarget::H12) D(1, 1) = -1.0;
    const Mat2C a = B * D * B.adjoint();
    return Vec4(0.5 * (a(0, 0) + a(1, 1)).real(), a(1, 0).real(), a(1, 0).imag(), 0.5 * (a(0, 0) - a(1, 1)).real());
}

Vec3 ball_model(const Vec4& x) { return x.tail<3>() / (1.0 + x(0)); }

Vec5 twistor_project(const CP3Point& p, const std::optional<Vec5>& sign_ref) {
    const double nx = p.xi.norm();
    if (nx == 0.0) throw Error(ErrorKind::Validation, "zero vector in CP3");
    const Vec4C xi = p.xi / nx;
    const Mat4C P = xi * xi.transpose();
    Eigen::Matrix<double, 32, 5> A;
    for (int k = 0; k < 5; ++k) {
        const Mat4C& E = real_basis(k + 1);
        const Mat4C M = E * J() * P - P * J() * E;
        for (int i = 0; i < 16; ++i) {
            A(i, k) = M(i / 4, i % 4).real();
            A(16 + i, k) = M(i / 4, i % 4).imag();
        }
    }
    Eigen::JacobiSVD<Eigen::Matrix<double, 32, 5>> svd(A, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    if (s(4) > 1e-8 * s(0) || s(3) < 1e-6 * s(0))
        throw Error(ErrorKind::DegenerateSolve, "parabolic subspace does not meet the real form in a line");
    Vec5 x = svd.matrixV().col(4);
    x /= x.norm();
    if (sign_ref) {
        if (x.dot(*sign_ref) < 0) x = -x;
    } else {
        for (int k = 0; k < 5; ++k) {
            if (std::abs(x(k)) > 1e-12) {
                if (x(k) < 0) x = -x;
                break;
            }
        }
    }
    return x;
}

}  // namespace isoq
