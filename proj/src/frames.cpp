#include "isoq/frames.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "isoq/error.hpp"
#include "isoq/quadric.hpp"

namespace isoq {

namespace {

const double kSqrt6 = std::sqrt(6.0);
const double kEta12 = std::sqrt(3.0 / 8.0);

std::string fmt_c(cplx z) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "(%.17g+%.17g*i)", z.real(), z.imag());
    return buf;
}

}  // namespace

int FrameJet::order() const {
    int o = std::numeric_limits<int>::max();
    for (const auto& c : cols) o = std::min(o, min_order(c));
    return o;
}

Mat4C FrameJet::value() const {
    Mat4C A;
    for (int j = 0; j < 4; ++j)
        for (int i = 0; i < 4; ++i) A(i, j) = cols[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)].value();
    return A;
}

FrameJet frame_from_values(const Mat4C& A, cplx base, int order) {
    FrameJet F;
    for (int j = 0; j < 4; ++j) F.cols[static_cast<std::size_t>(j)] = constant_vec<4>(base, order, Vec4C(A.col(j)));
    return F;
}

FrameJet apply(const Mat4C& X, const FrameJet& A) {
    FrameJet F;
    for (std::size_t j = 0; j < 4; ++j) F.cols[j] = apply(X, A.cols[j]);
    return F;
}

JetMat4 maurer_cartan(const FrameJet& A) {
    const Mat4C v = A.value();
    if (symplectic_residual(v) > 1e-6 * std::max(1.0, v.cwiseAbs2().maxCoeff()))
        throw Error(ErrorKind::SingularFrame, "frame is not symplectic at its base point");
    const auto& c = A.cols;
    JetMat4 al;
    for (std::size_t j = 0; j < 4; ++j) {
        const JetVec4 d = derive(c[j]);
        al[0][j] = omega_pair(d, c[2]);
        al[1][j] = omega_pair(d, c[3]);
        al[2][j] = -omega_pair(d, c[0]);
        al[3][j] = -omega_pair(d, c[1]);
    }
    return al;
}

double alpha_scale(const JetMat4& alpha) {
    double s = 1.0;
    for (const auto& row : alpha)
        for (const auto& e : row) s = std::max(s, e.max_abs());
    return s;
}

double sp_residual(const JetMat4& alpha) {
    double r = 0.0;
    int n = alpha[0][0].order();
    for (const auto& row : alpha)
        for (const auto& e : row) n = std::min(n, e.order());
    for (int k = 0; k <= n; ++k) {
        Mat4C X;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) X(i, j) = alpha[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)][k];
        r = std::max(r, sp_algebra_residual(X));
    }
    return r / alpha_scale(alpha);
}

std::array<Jet, 6> normal_form_residuals(const JetMat4& a) {
    return {a[2][0], a[3][0], a[1][0] - a[3][1], a[0][0] - a[1][1] * 3.0, a[0][1] * 4.0 - a[1][3] * 3.0, a[0][3]};
}

double normal_form_residual(const JetMat4& alpha) {
    double r = 0.0;
    for (const auto& j : normal_form_residuals(alpha)) r = std::max(r, j.max_abs());
    return r / alpha_scale(alpha);
}

FrameJet normal_frame_from_q(const JetVec4& xi, const Jet& q) {
    const JetVec4 d1 = derive(xi);
    const Jet W = omega_pair(d1, derive(d1));
    const Jet rho = sqrt(pow_int(q, 3) / W);
    const JetVec4 A1 = rho * xi;
    const Jet iq = 1.0 / q;
    const JetVec4 A2 = iq * derive(A1);
    const JetVec4 Y = iq * derive(A2);
    const Jet s = omega_pair(derive(Y), Y) * 0.3;
    const JetVec4 A4 = Y - (s * iq) * A1;
    const JetVec4 A3 = iq * ((s * (4.0 / 3.0)) * A2 - derive(A4));
    FrameJet F;
    F.cols = {A1, A2, A3, A4};
    const int o = F.order();
    for (auto& c : F.cols) c = truncated(c, o);
    return F;
}

FrameJet normal_frame_from_rho(const JetVec4& xi, const Jet& rho) {
    const JetVec4 d1 = derive(xi);
    const Jet W = omega_pair(d1, derive(d1));
    return normal_frame_from_q(xi, pow(rho * rho * W, 1.0 / 3.0));
}

namespace {

JetVec4 checked_associate(const CurveModel& model, cplx z0, int xi_order) {
    const LagrangianJets u = eval_curve(model, z0, xi_order + 4);
    const Vec4C a1 = coeff(u.u1, 0), a2 = coeff(u.u2, 0), b1 = coeff(u.u1, 1), b2 = coeff(u.u2, 1);
    const double scale = std::max({a1.norm() * b1.norm(), a1.norm() * b2.norm(), a2.norm() * b1.norm(), a2.norm() * b2.norm(), 1e-300});
    const double md = std::max({std::abs(omega_pair(a1, b1)), std::abs(omega_pair(a1, b2)), std::abs(omega_pair(a2, b1)),
                                std::abs(omega_pair(a2, b2))});
    if (md <= 1e-10 * scale) throw Error(ErrorKind::BranchPoint, "curve is branched at " + fmt_c(z0));
    const JetVec4 xi = legendre_associate(u, xi_order);
    const JetVec4 d1 = derive(xi);
    const JetVec4 d2 = derive(d1);
    const cplx W = omega_pair(coeff(d1, 0), coeff(d2, 0));
    const double ws = std::max(coeff(d1, 0).norm() * coeff(d2, 0).norm(), coeff(xi, 0).squaredNorm());
    if (std::abs(W) <= 1e-10 * ws) throw Error(ErrorKind::AssociateBranchPoint, "Legendre associate is branched at " + fmt_c(z0));
    return xi;
}

}  // namespace

namespace {

FrameJet finish_frame(const JetVec4& xi, const Jet& rho, int order) {
    FrameJet F = normal_frame_from_rho(xi, rho);
    if (F.order() < order + 1) throw Error(ErrorKind::GaugeSolveFailed, "jet order exhausted while reducing");
    for (auto& c : F.cols) c = truncated(c, order + 1);
    return F;
}

}  // namespace

FrameJet reduce_frame(const CurveModel& model, cplx z0, int order) {
    // constant gauge with |A1(z0)| = 1, so that frame magnitudes do not depend on the scale of xi
    const JetVec4 xi = checked_associate(model, z0, order + 7);
    return finish_frame(xi, Jet::constant(z0, order + 7, 1.0 / coeff(xi, 0).norm()), order);
}

FrameJet reduce_frame(const CurveModel& model, cplx z0, int order, const Jet& rho) {
    return finish_frame(checked_associate(model, z0, order + 7), rho, order);
}

DifferentialSample quartic_delta(const FrameJet& A) {
    const JetMat4 al = maurer_cartan(A);
    return {4, A.base(), al[0][2] * pow_int(al[3][1], 3)};
}

DifferentialSample quartic_delta(const CurveModel& model, cplx z0, int order) {
    return quartic_delta(reduce_frame(model, z0, order));
}

Connection connection_of(const JetMat4& a) { return {a[1][1], a[3][1] * (-1.0 / kSqrt6), a[1][3] * (-kEta12)}; }

Z8Frame z8_reduce(const FrameJet& A) {
    const JetMat4 al = maurer_cartan(A);
    const Jet delta = al[0][2] * pow_int(al[3][1], 3);
    const double scale = std::pow(std::abs(al[3][1].value()), 4);
    if (std::abs(delta.value()) <= 1e-10 * scale) throw Error(ErrorKind::HeptacticPoint, "delta vanishes at the base point");
    Jet q = pow(delta * std::pow(6.0, 1.25), 0.25);
    // eta21 = -q/sqrt6 is fixed up to 4th roots of unity; pin its argument to [0, pi/2)
    const double arg = std::arg(-q.value());
    const int k = static_cast<int>(std::floor(-arg / (std::numbers::pi / 2)));
    q *= std::polar(1.0, k * std::numbers::pi / 2);
    const JetVec4 xi = A.cols[0];
    Z8Frame out;
    out.frame = normal_frame_from_q(xi, q);
    out.eta = connection_of(maurer_cartan(out.frame));
    return out;
}

DifferentialSample quadratic_ddelta(const CurveModel& model, cplx z0, int order) {
    const Z8Frame z8 = z8_reduce(reduce_frame(model, z0, order + 8));
    return {2, z0, (z8.eta.eta21 * z8.eta.eta12 * 4.0).truncated(order)};
}

Jet d_naive(const Jet& Z) {
    if (std::abs(Z.value()) == 0.0) throw Error(ErrorKind::ZeroDenominator, "d_naive needs Z != 0 at the base");
    const Jet L = derive(Z) / Z;
    return derive(Z, 2) / Z * 0.5 - L * L * (9.0 / 16.0);
}

Jet schwarzian(const Jet& h) {
    const Jet d1 = derive(h);
    if (std::abs(d1.value()) <= 1e-14 * std::max(1.0, d1.max_abs())) throw Error(ErrorKind::CriticalPoint, "h' vanishes");
    const Jet r = derive(d1) / d1;
    return derive(r) - r * r * 0.5;
}

Jet ddelta_correction(const JetMat4& a) {
    const Connection e = connection_of(a);
    const Jet l = derive(e.eta21) / e.eta21;
    return derive(e.eta21, 2) / e.eta21 * (-2.0) + l * (l * 3.0 - e.eta11 * 4.0) +
           (derive(e.eta11) + e.eta11 * e.eta11 + e.eta12 * e.eta21) * 4.0;
}

double d_transform_check(const Jet& W, const Jet& h) {
    const Jet hp = derive(h);
    const Jet Z = compose(W, h) * pow_int(hp, 4);
    const Jet lhs = d_naive(Z);
    const Jet rhs = compose(d_naive(W), h) * hp * hp + schwarzian(h) * 2.0;
    const Jet diff = lhs - rhs;
    const double scale = std::max({1.0, lhs.max_abs(), rhs.max_abs()});
    return diff.max_abs() / scale;
}

TwoPath ddelta_two_path(const CurveModel& model, cplx z0) {
    const FrameJet A = reduce_frame(model, z0, 10);
    const JetMat4 al = maurer_cartan(A);
    const Jet delta = al[0][2] * pow_int(al[3][1], 3);
    const Jet corrected = d_naive(delta) + ddelta_correction(al);
    const Z8Frame z8 = z8_reduce(A);
    return {(z8.eta.eta21 * z8.eta.eta12 * 4.0).value(), corrected.value()};
}

Invariants invariants_at(const CurveModel& model, cplx z0, int order) {
    if (order < kMinInvariantOrder)
        throw Error(ErrorKind::Validation, "jet order must be at least " + std::to_string(kMinInvariantOrder));
    const FrameJet A = reduce_frame(model, z0, order);
    const JetMat4 al = maurer_cartan(A);
    Invariants inv;
    inv.delta = (al[0][2] * pow_int(al[3][1], 3)).value();
    const double scale = std::pow(std::abs(al[3][1].value()), 4);
    if (std::abs(inv.delta) <= 1e-10 * scale) {
        inv.delta = 0.0;
        inv.ddelta = std::numeric_limits<double>::quiet_NaN();
        inv.kappa = std::numeric_limits<double>::quiet_NaN();
        return inv;
    }
    const Z8Frame z8 = z8_reduce(A);
    inv.ddelta = (z8.eta.eta21 * z8.eta.eta12 * 4.0).value();
    inv.kappa = inv.ddelta * inv.ddelta / inv.delta;
    return inv;
}

bool is_cycle_at(const CurveModel& model, cplx z0, double tol) {
    const FrameJet A = reduce_frame(model, z0, 4);
    const JetMat4 al = maurer_cartan(A);
    const Jet delta = al[0][2] * pow_int(al[3][1], 3);
    const double scale = std::pow(std::abs(al[3][1].value()), 4);
    return delta.max_abs() <= tol * scale;
}

cplx bending(const CurveModel& model, cplx z0) {
    if (is_cycle_at(model, z0)) throw Error(ErrorKind::CycleCurve, "delta vanishes identically: the curve is a cycle");
    const Invariants inv = invariants_at(model, z0);
    if (inv.delta == cplx(0.0)) throw Error(ErrorKind::HeptacticPoint, "delta vanishes at " + fmt_c(z0));
    return inv.kappa;
}

cplx r_map(cplx kappa) {
    if (std::abs(kappa - 1.0) < 1e-12 || std::abs(kappa + 16.0 / 9.0) < 1e-12)
        throw Error(ErrorKind::ExceptionalKappa, "kappa is of exceptional type");
    const cplx c = std::sqrt(kappa);
    const cplx s = std::sqrt(c * c - 1.0);
    cplx r = std::sqrt((5.0 * c - 4.0 * s) / (5.0 * c + 4.0 * s));
    // canonical representative of the class {r, 1/r, -r, -1/r}
    if (std::abs(r) < 1.0 - 1e-12) r = 1.0 / r;
    else if (std::abs(std::abs(r) - 1.0) <= 1e-12 && r.imag() < 0) r = 1.0 / r;
    if (r.real() < 0 || (r.real() == 0.0 && r.imag() < 0)) r = -r;
    return r;
}

std::vector<cplx> heptactic_points(const CurveModel& model, const Region& region, int grid) {
    const int nr = std::max(4, grid / 2), nt = std::max(8, grid);
    std::vector<std::vector<double>> val(static_cast<std::size_t>(nr), std::vector<double>(static_cast<std::size_t>(nt), 1e300));
    std::vector<std::vector<cplx>> pts(static_cast<std::size_t>(nr), std::vector<cplx>(static_cast<std::size_t>(nt)));
    for (int i = 0; i < nr; ++i) {
        for (int j = 0; j < nt; ++j) {
            const double r = region.r_in + (region.r_out - region.r_in) * (i + 0.5) / nr;
            const cplx z = region.center + std::polar(r, 2.0 * std::numbers::pi * (j + 0.25) / nt);
            pts[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = z;
            try {
                val[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = std::abs(quartic_delta(model, z, 1).coeff.value());
            } catch (const Error&) {
            }
        }
    }
    std::vector<cplx> roots;
    for (int i = 0; i < nr; ++i) {
        for (int j = 0; j < nt; ++j) {
            const double v = val[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            if (v >= 1e300) continue;
            bool local_min = true;
            for (int di = -1; di <= 1 && local_min; ++di)
                for (int dj = -1; dj <= 1; ++dj) {
                    const int ii = i + di, jj = (j + dj + nt) % nt;
                    if (ii < 0 || ii >= nr || (di == 0 && dj == 0)) continue;
                    if (val[static_cast<std::size_t>(ii)][static_cast<std::size_t>(jj)] < v) {
                        local_min = false;
                        break;
                    }
                }
            if (!local_min) continue;
            cplx z = pts[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            bool ok = false;
            try {
                for (int it = 0; it < 30; ++it) {
                    const Jet d = quartic_delta(model, z, 1).coeff;
                    const cplx step = d[0] / d[1];
                    z -= step;
                    if (std::abs(step) < 1e-12 * std::max(1.0, std::abs(z))) {
                        ok = true;
                        break;
                    }
                }
                if (ok) ok = std::abs(quartic_delta(model, z, 1).coeff.value()) < 1e-10;
            } catch (const Error&) {
                ok = false;
            }
            const double rz = std::abs(z - region.center);
            if (!ok || rz < region.r_in || rz > region.r_out) continue;
            bool dup = false;
            for (const cplx w : roots) dup = dup || std::abs(w - z) < 1e-8;
            if (!dup) roots.push_back(z);
        }
    }
    return roots;
}

Mat4C osculating_cycle(const CurveModel& model, cplx z0) { return reduce_frame(model, z0, 1).value(); }

CurveModel osculating_cycle_model(const CurveModel& model, cplx z0) {
    const Mat4C X = osculating_cycle(model, z0);
    return make_goursat(make_reparam(CurveModel(StandardCycle{}), parse_expr("z-" + fmt_c(z0))), X);
}

namespace {

// rounding level of the Taylor coefficients, relative to the largest one seen
constexpr double kContactFloor = 1e-12;

}  // namespace

int contact_order_lifts(const JetVec5& psi_a, const JetVec5& psi_b, int maxk, const ContactOptions& opt) {
    maxk = std::min({maxk, min_order(psi_a), min_order(psi_b)});
    const cplx za = psi_a[0].base(), zb = psi_b[0].base();
    const Vec5C a0 = coeff(psi_a, 0), b0 = coeff(psi_b, 0);
    const cplx r0 = b0.dot(a0) / b0.squaredNorm();
    if ((a0 - r0 * b0).norm() > opt.tol * a0.norm()) return -1;
    Jet h = Jet::constant(za, maxk, zb);
    Jet rho = Jet::constant(za, maxk, r0);
    const Vec5C b1 = coeff(psi_b, 1);
    double floor = a0.norm();
    for (int j = 1; j <= maxk; ++j) {
        Vec5C known;
        for (int i = 0; i < 5; ++i) {
            const Jet comp = opt.reparametrize ? compose(psi_b[static_cast<std::size_t>(i)].truncated(maxk), h)
                                               : Jet(za, psi_b[static_cast<std::size_t>(i)].truncated(maxk).coeffs());
            known(i) = (rho * comp)[j];
        }
        const Vec5C aj = coeff(psi_a, j);
        floor = std::max(floor, aj.norm());
        const Vec5C target = aj - known;
        Eigen::Matrix<cplx, 5, Eigen::Dynamic> M(5, opt.reparametrize ? 2 : 1);
        M.col(0) = b0;
        if (opt.reparametrize) M.col(1) = r0 * b1;
        const Eigen::Matrix<cplx, Eigen::Dynamic, 1> x = M.colPivHouseholderQr().solve(target);
        const double res = (target - M * x).norm();
        if (res > std::max(opt.tol * std::max(aj.norm(), known.norm()), kContactFloor * floor)) return j - 1;
        rho[j] = x(0);
        if (opt.reparametrize) h[j] = x(1);
    }
    return maxk;
}

int contact_order(const CurveModel& a, cplx za, const CurveModel& b, cplx zb, int maxk, const ContactOptions& opt) {
    const LagrangianJets ua = eval_curve(a, za, maxk + 1);
    const LagrangianJets ub = eval_curve(b, zb, maxk + 1);
    return contact_order_lifts(plucker(ua.u1, ua.u2), plucker(ub.u1, ub.u2), maxk, opt);
}

int contact_order(const CurveModel& a, const CurveModel& b, cplx z0, int maxk) {
    return contact_order(a, z0, b, z0, maxk);
}

}  // namespace isoq
