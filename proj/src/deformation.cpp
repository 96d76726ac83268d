#include "isoq/deformation.hpp"

#include <cmath>
#include <numbers>

#include "isoq/error.hpp"
#include "isoq/quadric.hpp"

namespace isoq {

namespace {

const cplx kI(0.0, 1.0);

Mat4C mat_p() { return elem4(2, 1) + elem4(4, 2) + elem4(1, 3) - elem4(3, 4); }
Mat4C mat_q() { return elem4(2, 4) + 0.75 * (elem4(1, 2) - elem4(4, 3)); }

bool preserves_plane(const Mat4C& X, int i, int j, double tol) {
    // X maps span(e_i, e_j) to itself, so [e_i ^ e_j] is a fixed point of the quadric
    const double s = tol * std::max(1.0, X.cwiseAbs().maxCoeff());
    for (int k = 0; k < 4; ++k) {
        if (k == i || k == j) continue;
        if (std::abs(X(k, i)) > s || std::abs(X(k, j)) > s) return false;
    }
    return true;
}

double factorial(int k) {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

class DeformedField : public CoefficientField {
public:
    DeformedField(Expr b, Expr a_hat) : b_(std::move(b)), a_(std::move(a_hat)) {}
    JetMat4 eval(cplx z, int order) override {
        const int o = order + 2;
        Jet ah, b;
        try {
            ah = a_.eval(Jet::variable(z, o));
            b = b_.eval(Jet::variable(z, o));
        } catch (const Error& e) {
            throw Error(ErrorKind::SingularityOnPath, e.what());
        }
        if (std::abs(ah.value()) < 1e-12) throw Error(ErrorKind::SingularityOnPath, "a_hat vanishes on the path");
        const Jet d1 = derive(ah);
        const Jet bh = b / ah + derive(d1) / (ah * ah) * 2.0 - d1 * d1 / pow_int(ah, 3) * 3.0;
        return existence_form(ah.truncated(order), bh.truncated(order));
    }

private:
    ContinuedEvaluator b_;
    ContinuedEvaluator a_;
};

Mat4C series_exp(const Mat4C& X) {
    Mat4C term = Mat4C::Identity(), sum = Mat4C::Identity();
    for (int k = 1; k < 30; ++k) {
        term = term * X / static_cast<double>(k);
        sum += term;
    }
    return sum;
}

JetVec5 spin_lift(const FrameJet& A) { return plucker(A.cols[1], A.cols[0]); }

}  // namespace

CurveModel goursat_apply(const CurveModel& model, const Mat4C& X) { return make_goursat(model, X); }

const char* to_string(GoursatClass c) {
    switch (c) {
        case GoursatClass::Classical: return "classical";
        case GoursatClass::Hyperbolic: return "hyperbolic";
        default: return "conformal";
    }
}

GoursatClass classify_goursat(const Mat4C& X, double tol) {
    if (symplectic_residual(X) > kGroupTol) throw Error(ErrorKind::NotSymplectic, "Goursat matrix is not symplectic");
    if (preserves_plane(X, 0, 1, tol) && preserves_plane(X, 2, 3, tol)) return GoursatClass::Classical;
    const bool fixes = (X.col(0) - Mat4C::Identity().col(0)).norm() <= tol && (X.col(2) - Mat4C::Identity().col(2)).norm() <= tol;
    if (fixes && preserves_plane(X, 1, 3, tol)) return GoursatClass::Hyperbolic;
    return GoursatClass::Conformal;
}

Mat4C bonnet_matrix(double b) {
    const Mat4C K = elem4(2, 1) + elem4(1, 2) - elem4(4, 3) - elem4(3, 4);
    return std::cosh(b / 2) * Mat4C::Identity() + std::sinh(b / 2) * K;
}

Mat4C thomsen_factor() {
    const cplx w = std::polar(1.0, std::numbers::pi / 4);
    Mat4C T = Mat4C::Zero();
    T(0, 0) = T(1, 1) = kI * w;
    T(2, 2) = T(3, 3) = -kI / w;
    return T;
}

DifferentialSample deformation_s(const Jet& a_hat) {
    if (std::abs(a_hat.value()) == 0.0) throw Error(ErrorKind::ZeroDenominator, "a_hat vanishes at the base");
    const Jet l = derive(a_hat) / a_hat;
    return {2, a_hat.base(), derive(a_hat, 2) / a_hat * 2.0 - l * l * 3.0};
}

CurveModel unimodular_curve(const AffineData& f) {
    return synthesize(Expr::constant(1.0), f.b, f.base, f.A0);
}

CurveModel deform4(const AffineData& f, const Expr& a_hat) {
    MCSystem sys;
    const Expr b = f.b;
    sys.field = [b, a_hat] { return std::make_unique<DeformedField>(b, a_hat); };
    sys.A0 = f.A0;
    sys.base = f.base;
    sys.label = "b=" + f.b.source() + ", a_hat=" + a_hat.source();
    const cplx a0 = a_hat.eval(f.base);
    if (std::abs(a0) < 1e-12) throw Error(ErrorKind::DVanishes, "a_hat vanishes at the base point");
    return mc_integrate(sys);
}

FrameJet frame_of(const CurveModel& model, cplx z0, int order) {
    return std::visit(
        [&](const auto& c) -> FrameJet {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, Synthesized>) {
                FrameJet F;
                F.cols = c.source->frame_jets(z0, order);
                return F;
            } else if constexpr (std::is_same_v<T, Goursat>) {
                return isoq::apply(c.X, frame_of(*c.inner, z0, order));
            } else {
                throw Error(ErrorKind::FrameUnavailable, "model does not carry a reduced frame: " + model.name());
            }
        },
        model.variant());
}

std::array<std::array<Jet, 5>, 5> pushforward_form(const Jet& a, const Jet& b) {
    const Mat5C NP = spin_pushforward(mat_p());
    const Mat5C NQ = spin_pushforward(mat_q());
    std::array<std::array<Jet, 5>, 5> N;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) N[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = a * NP(i, j) + b * NQ(i, j);
    return N;
}

Mat5C jet_recursion(const Jet& a, const Jet& b) {
    const auto N = pushforward_form(a, b);
    std::array<Jet, 5> cur;
    for (std::size_t i = 0; i < 5; ++i) cur[i] = Jet::constant(a.base(), a.order(), i == 0 ? 1.0 : 0.0);
    Mat5C F;
    for (int h = 0; h < 5; ++h) {
        for (int i = 0; i < 5; ++i) F(i, h) = cur[static_cast<std::size_t>(i)].value();
        std::array<Jet, 5> next;
        for (std::size_t i = 0; i < 5; ++i) {
            Jet s = derive(cur[i]);
            for (std::size_t j = 0; j < 5; ++j) s = s + N[i][j].truncated(s.order()) * cur[j].truncated(s.order());
            next[i] = s;
        }
        cur = next;
    }
    return F;
}

Mat5C pascal_r(const std::array<cplx, 5>& r) {
    Mat5C R = Mat5C::Zero();
    for (int j = 0; j < 5; ++j) {
        double c = 1.0;  // C(j, i)
        for (int i = 0; i <= j; ++i) {
            R(i, j) = c * r[static_cast<std::size_t>(j - i)];
            c = c * (j - i) / (i + 1);
        }
    }
    return R;
}

std::array<cplx, 5> r_closed_form(int eps, const Jet& a_hat, const Jet& b, const Jet& b_hat) {
    const auto d = [](const Jet& x, int k) { return x[k] * factorial(k); };
    const cplx ah = d(a_hat, 0), ah1 = d(a_hat, 1), ah2 = d(a_hat, 2), ah3 = d(a_hat, 3);
    const cplx bb = d(b, 0), b1 = d(b, 1);
    const cplx bh = d(b_hat, 0), bh1 = d(b_hat, 1), bh2 = d(b_hat, 2);
    const double e = eps;
    std::array<cplx, 5> r;
    r[0] = e * ah * ah;
    r[1] = 2.0 * e * ah * ah1;
    r[2] = e / 7.0 * (5.0 * (std::pow(ah, 3) * bh - ah * ah * bb) + 29.0 * ah1 * ah1 + 4.0 * ah * ah2);
    r[3] = e / (42.0 * ah) *
           (14.0 * ah * ah3 + 132.0 * ah * ah1 * ah2 + (390.0 * ah1 * ah1 - 200.0 * ah * ah * bb + 235.0 * std::pow(ah, 3) * bh) * ah1 -
            35.0 * std::pow(ah, 3) * b1 + 35.0 * std::pow(ah, 4) * bh1);
    r[4] = e / (294.0 * ah * ah) *
           (1372.0 * ah * ah * ah1 * ah3 +
            (1266.0 * std::pow(ah, 4) * bh + 480.0 * ah * ah1 * ah1 - 720.0 * std::pow(ah, 3) * bb + 624.0 * ah * ah * ah2) * ah2 +
            (2548.0 * std::pow(ah, 4) * bh1 - 1960.0 * std::pow(ah, 3) * b1) * ah1 +
            (8342.0 * std::pow(ah, 3) * bh - 6760.0 * ah * ah * bb) * ah1 * ah1 + 9195.0 * std::pow(ah1, 4) + 588.0 * std::pow(ah, 8) +
            (294.0 * bh2 - 900.0 * bb * bh) * std::pow(ah, 5) - (294.0 * (2.0 + bh2) + 513.0 * bb * bb) * std::pow(ah, 4) +
            387.0 * std::pow(ah, 6) * bh * bh);
    return r;
}

std::array<cplx, 5> r_solve(int eps, const Mat5C& F, const Mat5C& F_hat) {
    const Mat5C Gf = F.transpose() * gram() * F;
    const Mat5C Gh = F_hat.transpose() * gram() * F_hat;
    std::array<cplx, 5> r{};
    r[0] = static_cast<double>(eps) * std::sqrt(Gh(0, 4) / Gf(0, 4));
    // entry (k, 4) of R^T Gf R is affine in r_k once r_0..r_{k-1} are known
    for (std::size_t k = 1; k < 5; ++k) {
        auto entry = [&](cplx x) {
            auto rr = r;
            rr[k] = x;
            const Mat5C R = pascal_r(rr);
            return (R.transpose() * Gf * R)(static_cast<Eigen::Index>(k), 4);
        };
        const cplx f0 = entry(0.0), f1 = entry(1.0);
        r[k] = (Gh(static_cast<Eigen::Index>(k), 4) - f0) / (f1 - f0);
    }
    return r;
}

DeformationReport verify_deformation(const CurveModel& f, const CurveModel& f_hat, cplx z0) {
    const int order = kContactCap + 4;
    const FrameJet A = frame_of(f, z0, order);
    const FrameJet Ah = frame_of(f_hat, z0, order);
    const JetMat4 al = maurer_cartan(A);
    const JetMat4 alh = maurer_cartan(Ah);
    const auto gauge_residual = [](const JetMat4& m) {
        const JetMat4 ref = existence_form(m[1][0], m[1][3]);
        double r = 0.0;
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) r = std::max(r, (m[i][j] - ref[i][j]).max_abs());
        return r / std::max(1.0, m[1][0].max_abs() + m[1][3].max_abs());
    };
    if (gauge_residual(al) > 1e-7 || gauge_residual(alh) > 1e-7)
        throw Error(ErrorKind::FrameUnavailable, "frames are not in the unimodular affine gauge");
    const Jet a = al[1][0], b = al[1][3], ah = alh[1][0], bh = alh[1][3];
    if ((a - 1.0).max_abs() > 1e-7) throw Error(ErrorKind::FrameUnavailable, "base curve must have a = 1");

    const Mat5C F = jet_recursion(a, b);
    const Mat5C Fh = jet_recursion(ah, bh);
    const Mat5C cA = spin_cover(A.value());
    const Mat5C cAh = spin_cover(Ah.value());
    const Eigen::JacobiSVD<Mat5C> svd(F);
    DeformationReport best;
    best.orth_residual = 1e300;
    best.f_condition = svd.singularValues()(0) / svd.singularValues()(4);
    for (const bool closed : {true, false}) {
        for (const int eps : {1, -1}) {
            const auto r = closed ? r_closed_form(eps, ah, b, bh) : r_solve(eps, F, Fh);
            const Mat5C R = pascal_r(r);
            const Mat5C D = cAh * Fh * R.inverse() * F.inverse() * cA.inverse();
            const double res = gram_orthogonality_residual(D);
            if (closed && eps == 1) best.closed_form_residual = res;
            if (closed && eps == -1) best.closed_form_residual = std::min(best.closed_form_residual, res);
            if (res < best.orth_residual) {
                best.r = r;
                best.R = R;
                best.D = D;
                best.orth_residual = res;
                best.epsilon = eps;
                best.closed_form = closed;
            }
        }
    }
    best.valid = best.orth_residual < 1e-6;
    const JetVec5 psi = spin_lift(A);
    const JetVec5 psih = spin_lift(Ah);
    JetVec5 mapped;
    for (int i = 0; i < 5; ++i) {
        Jet s = psi[0] * best.D(i, 0);
        for (int j = 1; j < 5; ++j) s = s + psi[static_cast<std::size_t>(j)] * best.D(i, j);
        mapped[static_cast<std::size_t>(i)] = s;
    }
    ContactOptions opt;
    opt.reparametrize = false;
    best.contact_order = contact_order_lifts(psih, mapped, kContactCap, opt);
    return best;
}

NSelfTest n_self_test() {
    NSelfTest out;
    const Mat4C P = mat_p(), Q = mat_q();
    const Mat4C phi = cplx(0.7, -0.2) * P + cplx(-0.4, 0.9) * Q;
    const Mat5C N = spin_pushforward(phi);
    // Richardson-extrapolated central difference of t -> spin_cover(exp(t phi)) at t = 0
    const auto cd = [&](double h) -> Mat5C { return (spin_cover(series_exp(h * phi)) - spin_cover(series_exp(-h * phi))) / (2.0 * h); };
    const double h = 1e-3;
    const Mat5C fd = (4.0 * cd(h / 2) - cd(h)) / 3.0;
    out.pushforward_residual = (fd - N).cwiseAbs().maxCoeff();

    // transcribed matrix, b^i_j read as row j, column i
    const auto b = [](int i, int j) { return elem5(j, i); };
    const Mat5C Na = b(1, 2) + std::sqrt(2.0) * (b(3, 4) - b(2, 3)) - b(4, 1) - b(4, 5) + b(5, 2);
    out.a_part_residual = (Na - spin_pushforward(P)).cwiseAbs().maxCoeff();
    const Mat5C NQ = spin_pushforward(Q);
    out.b_coeff_derived = NQ(2, 3).real();
    out.b_coeff_transcribed = 3.0 / (3.0 * std::sqrt(2.0));
    return out;
}

}  // namespace isoq
