#include "isoq/curves.hpp"

#include <cmath>
#include <numeric>

#include "isoq/error.hpp"
#include "isoq/quadric.hpp"

namespace isoq {

namespace {

const cplx kI(0.0, 1.0);

JetVec4 zero_vec(cplx z0, int order) {
    JetVec4 v;
    for (auto& c : v) c = Jet::constant(z0, order, 0.0);
    return v;
}

Jet zpow(cplx z0, int order, int k) { return pow_int(Jet::variable(z0, order), k); }

LagrangianJets eval_wcurve(const WCurve& w, cplx z0, int order) {
    const int m = w.m, n = w.n;
    const int e = 1 + ((m + n) % 2 == 0 ? 0 : 1);
    const double mn = std::sqrt(static_cast<double>(m) * n);
    const Jet zm = zpow(z0, order, e * m);
    const Jet zn = zpow(z0, order, e * n);
    const Jet zh = zpow(z0, order, e * (m + n) / 2);
    LagrangianJets u{zero_vec(z0, order), zero_vec(z0, order)};
    u.u1[0] += double(m - n);
    u.u1[2] = zm * (-double(m + n));
    u.u1[3] = zh * (-2.0 * kI * mn);
    u.u2[1] += double(m - n);
    u.u2[2] = zh * (-2.0 * kI * mn);
    u.u2[3] = zn * double(m + n);
    return u;
}

LagrangianJets eval_cycle(cplx z0, int order) {
    const Jet z = Jet::variable(z0, order);
    const Jet z2 = z * z;
    LagrangianJets u{zero_vec(z0, order), zero_vec(z0, order)};
    u.u1[0] += 1.0;
    u.u1[2] = z2 * z / 3.0;
    u.u1[3] = z2 * (-0.5);
    u.u2[1] += 1.0;
    u.u2[2] = z2 * (-0.5);
    u.u2[3] = z;
    return u;
}

struct Lambdas {
    cplx l1, l2;
};

Lambdas bending_lambdas(cplx kappa) {
    const cplx c = std::sqrt(kappa);
    const cplx r = std::sqrt(c * c - 1.0);
    return {0.5 * std::sqrt(5.0 * c - 4.0 * r), 0.5 * std::sqrt(5.0 * c + 4.0 * r)};
}

LagrangianJets eval_constant_bending(const ConstantBending& cb, cplx z0, int order) {
    const auto [l1, l2] = bending_lambdas(cb.kappa);
    const Jet z = Jet::variable(z0, order);
    const cplx d = l1 - l2;
    const cplx p = (l1 + l2) / d;
    const cplx s = 2.0 * kI * std::sqrt(l1) * std::sqrt(l2) / d;
    const Jet e1 = exp(z * (2.0 * l1));
    const Jet e2 = exp(z * (2.0 * l2));
    const Jet e12 = exp(z * (l1 + l2));
    LagrangianJets u{zero_vec(z0, order), zero_vec(z0, order)};
    u.u1[0] += 1.0;
    u.u1[2] = e1 * (-p);
    u.u1[3] = e12 * (-s);
    u.u2[1] += 1.0;
    u.u2[2] = e12 * (-s);
    u.u2[3] = e2 * p;
    return u;
}

LagrangianJets eval_exceptional(cplx z0, int order) {
    const Jet z = Jet::variable(z0, order);
    LagrangianJets u{zero_vec(z0, order), zero_vec(z0, order)};
    u.u1[0] += 1.0;
    u.u1[2] = exp(z);
    u.u1[3] = z;
    u.u2[1] += 1.0;
    u.u2[2] = z;
    u.u2[3] = -exp(-z);
    return u;
}

JetVec4 bryant_xi(const Bryant& b, cplx z0, int order) {
    const Jet z = Jet::variable(z0, order + 2);
    const Jet g = b.g.eval(z), h = b.h.eval(z);
    const Jet dg = derive(g), dh = derive(h);
    return {dg * 2.0, g * dg * 2.0, h * dg * 2.0 - g * dh, dh};
}

LagrangianJets lift_legendre(const JetVec4& xi, int order) {
    return {truncated(xi, order), truncated(derive(xi), order)};
}

JetVec4 eval_exprs(const std::array<Expr, 4>& e, cplx z0, int order) {
    const Jet z = Jet::variable(z0, order);
    return {e[0].eval(z), e[1].eval(z), e[2].eval(z), e[3].eval(z)};
}

}  // namespace

std::string CurveModel::name() const {
    return std::visit(
        [](const auto& c) -> std::string {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, WCurve>) return "wcurve(" + std::to_string(c.m) + "," + std::to_string(c.n) + ")";
            else if constexpr (std::is_same_v<T, StandardCycle>) return "cycle";
            else if constexpr (std::is_same_v<T, ConstantBending>) return "constant_bending";
            else if constexpr (std::is_same_v<T, Exceptional1>) return "exceptional1";
            else if constexpr (std::is_same_v<T, Bryant>) return "bryant(" + c.g.source() + ", " + c.h.source() + ")";
            else if constexpr (std::is_same_v<T, LagrangianPair>) return "lagrangian_pair";
            else if constexpr (std::is_same_v<T, LegendreLift>) return "legendre";
            else if constexpr (std::is_same_v<T, LegendreFn>) return c.name;
            else if constexpr (std::is_same_v<T, Goursat>) return "goursat(" + c.inner->name() + ")";
            else if constexpr (std::is_same_v<T, Reparam>) return "reparam(" + c.inner->name() + ", " + c.h.source() + ")";
            else return "synthesized(" + c.source->describe() + ")";
        },
        v_);
}

CurveModel make_wcurve(int m, int n, std::string* notice) {
    if (n == 0 || m == 0) throw Error(ErrorKind::Validation, "W-curve needs nonzero m and n");
    const int m0 = m, n0 = n;
    m = std::abs(m);
    n = std::abs(n);
    const int g = std::gcd(m, n);
    m /= g;
    n /= g;
    if (m == n) throw Error(ErrorKind::Validation, "W-curve parameter q = m/n must not be +-1");
    if (m < n) std::swap(m, n);
    if (notice && (m != m0 || n != n0))
        *notice = "W-curve (" + std::to_string(m0) + "," + std::to_string(n0) + ") canonicalized to (" +
                  std::to_string(m) + "," + std::to_string(n) + ")";
    return CurveModel(WCurve{m, n});
}

CurveModel make_constant_bending(cplx kappa) {
    if (std::abs(kappa - 1.0) < 1e-12 || std::abs(kappa + 16.0 / 9.0) < 1e-12)
        throw Error(ErrorKind::ExceptionalKappa, "kappa = 1 and kappa = -16/9 are excluded");
    return CurveModel(ConstantBending{kappa});
}

CurveModel make_goursat(const CurveModel& inner, const Mat4C& X) {
    if (symplectic_residual(X) > kGroupTol * std::max(1.0, X.cwiseAbs2().maxCoeff()))
        throw Error(ErrorKind::NotSymplectic, "Goursat transform needs a symplectic matrix");
    return CurveModel(Goursat{std::make_shared<const CurveModel>(inner), X});
}

CurveModel make_reparam(const CurveModel& inner, const Expr& h) {
    return CurveModel(Reparam{std::make_shared<const CurveModel>(inner), h});
}

CurveModel kuy_example(int n) {
    if (n < 3) throw Error(ErrorKind::Validation, "KUY example needs n >= 3");
    const std::string N = std::to_string(n);
    const std::string e = "(" + std::to_string(2 - n) + "/" + N + ")";
    return CurveModel(Bryant{parse_expr("z^(-1)*(z^" + N + "-1)^" + e),
                             parse_expr("z^(-2)*(1+z^" + N + ")*(z^" + N + "-1)^" + e)});
}

bool is_wcurve_cycle(const WCurve& w) { return w.m == 3 && w.n == 1; }

LagrangianJets eval_curve(const CurveModel& model, cplx z0, int order) {
    return std::visit(
        [&](const auto& c) -> LagrangianJets {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, WCurve>) return eval_wcurve(c, z0, order);
            else if constexpr (std::is_same_v<T, StandardCycle>) return eval_cycle(z0, order);
            else if constexpr (std::is_same_v<T, ConstantBending>) return eval_constant_bending(c, z0, order);
            else if constexpr (std::is_same_v<T, Exceptional1>) return eval_exceptional(z0, order);
            else if constexpr (std::is_same_v<T, Bryant>) return lift_legendre(bryant_xi(c, z0, order), order);
            else if constexpr (std::is_same_v<T, LagrangianPair>)
                return {eval_exprs(c.u1, z0, order), eval_exprs(c.u2, z0, order)};
            else if constexpr (std::is_same_v<T, LegendreLift>)
                return lift_legendre(eval_exprs(c.xi, z0, order + 1), order);
            else if constexpr (std::is_same_v<T, LegendreFn>) return lift_legendre(c.xi(z0, order + 1), order);
            else if constexpr (std::is_same_v<T, Goursat>) {
                const LagrangianJets in = eval_curve(*c.inner, z0, order);
                return {apply(c.X, in.u1), apply(c.X, in.u2)};
            } else if constexpr (std::is_same_v<T, Reparam>) {
                const Jet h = c.h.eval(Jet::variable(z0, order));
                const LagrangianJets in = eval_curve(*c.inner, h.value(), order);
                LagrangianJets out;
                for (int i = 0; i < 4; ++i) {
                    out.u1[i] = compose(in.u1[i], h);
                    out.u2[i] = compose(in.u2[i], h);
                }
                return out;
            } else {
                const auto A = c.source->frame_jets(z0, order);
                return {A[0], A[1]};
            }
        },
        model.variant());
}

namespace {

struct Mdot {
    Jet m11, m12, m21, m22;
};

Mdot mdot(const LagrangianJets& u) {
    const JetVec4 d1 = derive(u.u1), d2 = derive(u.u2);
    return {omega_pair(u.u1, d1), omega_pair(u.u1, d2), omega_pair(u.u2, d1), omega_pair(u.u2, d2)};
}

// Largest |c_j|, j <= k + kValuationWindow, over the given jets.
double window_scale(std::initializer_list<const Jet*> js, int k) {
    double s = 0.0;
    for (const Jet* j : js)
        for (int i = 0; i <= std::min(k + kValuationWindow, j->order()); ++i) s = std::max(s, std::abs((*j)[i]));
    return s;
}

int min_valuation(const Mdot& m) {
    const int n = std::min({m.m11.order(), m.m12.order(), m.m21.order(), m.m22.order()});
    int k = 0;
    while (k <= n) {
        const double s = window_scale({&m.m11, &m.m12, &m.m21, &m.m22}, k);
        double c = 0.0;
        for (const Jet* j : {&m.m11, &m.m12, &m.m21, &m.m22}) c = std::max(c, std::abs((*j)[k]));
        if (c > 1e-11 * s) break;
        ++k;
    }
    return k;
}

// Strips the common valuation of a jet vector, so that its value is nonzero.
JetVec4 strip_common(const JetVec4& x, int* v_out = nullptr) {
    if (max_abs(x) == 0.0) throw Error(ErrorKind::ZeroJet, "vector jet vanishes");
    int v = 0;
    const int n = min_order(x);
    while (v <= n) {
        double m = 0.0;
        for (const auto& c : x) m = std::max(m, std::abs(c[v]));
        if (m > 1e-11 * window_scale({&x[0], &x[1], &x[2], &x[3]}, v)) break;
        ++v;
    }
    if (v > n) throw Error(ErrorKind::ZeroJet, "vector jet vanishes to its order");
    if (v_out) *v_out = v;
    if (v == 0) return x;
    JetVec4 r;
    for (int i = 0; i < 4; ++i) r[i] = shift_down(x[i], v);
    return r;
}

}  // namespace

JetVec4 legendre_associate(const LagrangianJets& u, int order) {
    Mdot m = mdot(u);
    const double scale = std::max({m.m11.max_abs(), m.m12.max_abs(), m.m21.max_abs(), m.m22.max_abs()});
    if (scale == 0.0) throw Error(ErrorKind::BranchPoint, "curve is constant");
    const int k1 = min_valuation(m);
    if (k1 > 0) {
        m.m11 = shift_down(m.m11, k1);
        m.m12 = shift_down(m.m12, k1);
        m.m21 = shift_down(m.m21, k1);
        m.m22 = shift_down(m.m22, k1);
    }
    const JetVec4 a = m.m12 * u.u2 - m.m22 * u.u1;
    const JetVec4 b = m.m21 * u.u1 - m.m11 * u.u2;
    const bool use_a = std::abs(m.m22.value()) + std::abs(m.m12.value()) >= std::abs(m.m11.value()) + std::abs(m.m21.value());
    if (std::abs(m.m22.value()) + std::abs(m.m12.value()) + std::abs(m.m11.value()) + std::abs(m.m21.value()) <=
        1e-11 * window_scale({&m.m11, &m.m12, &m.m21, &m.m22}, 0))
        throw Error(ErrorKind::BothDiagonalEntriesVanish, "mdot vanishes after stripping");
    const JetVec4 xi = strip_common(use_a ? a : b);
    if (min_order(xi) < order)
        throw Error(ErrorKind::OrderExhausted, "not enough jet order for the Legendre associate");
    return truncated(xi, order);
}

JetVec4 legendre_associate(const CurveModel& model, cplx z0, int order) {
    // one order for the derivative plus room for valuation stripping
    return legendre_associate(eval_curve(model, z0, order + 6), order);
}

CurveModel curve_from_legendre(const std::array<Expr, 4>& xi, cplx check_at) {
    const std::array<cplx, 4> probes = {check_at, check_at + cplx(0.11, 0.07), cplx(0.41, -0.23), cplx(-0.37, 0.52)};
    for (const cplx z : probes) {
        JetVec4 x;
        try {
            x = eval_exprs(xi, z, 6);
        } catch (const Error&) {
            continue;
        }
        const Jet r = contact_residual(x);
        const double scale = std::max(1.0, max_abs(x) * max_abs(x));
        if (r.max_abs() > 1e-9 * scale) throw Error(ErrorKind::NotLegendre, "contact residual does not vanish");
        return CurveModel(LegendreLift{xi});
    }
    throw Error(ErrorKind::NotLegendre, "could not evaluate xi at any probe point");
}

CurveModel curve_from_legendre(std::function<JetVec4(cplx, int)> xi, std::string name) {
    return CurveModel(LegendreFn{std::move(xi), std::move(name)});
}

Ramification ramification_indices(const CurveModel& model, cplx z0) {
    const int order = 16;
    const LagrangianJets u = eval_curve(model, z0, order);
    const Mdot m = mdot(u);
    Ramification r;
    r.k1 = min_valuation(m);
    const JetVec4 xi = legendre_associate(u, order - 2 - r.k1 - 2);
    const JetVec4 d1 = derive(xi);
    const Jet W = omega_pair(d1, derive(d1));
    r.k2 = valuation(W, 1e-10);
    return r;
}

cplx wcurve_delta_formula(int m, int n, cplx z) {
    const double M = m, N = n;
    return -(9 * M * M * M * M - 82 * M * M * N * N + 9 * N * N * N * N) / (100.0 * z * z * z * z);
}

cplx wcurve_gamma_formula(int m, int n, cplx z) { return 2.0 * double(m * m + n * n) / (5.0 * z * z); }

cplx wcurve_kappa_formula(int m, int n) {
    const double M = m, N = n;
    const double s = M * M + N * N;
    return -16.0 * s * s / (9 * M * M * M * M - 82 * M * M * N * N + 9 * N * N * N * N);
}

Vec4C wcurve_associate_formula(int m, int n, cplx z) {
    const int e = 1 + ((m + n) % 2 == 0 ? 0 : 1);
    const double sn = std::sqrt(double(n)), sm = std::sqrt(double(m));
    Vec4C x;
    x(0) = sn;
    x(1) = kI * sm * std::pow(z, e * (m - n) / 2);
    x(2) = sn * std::pow(z, e * m);
    x(3) = kI * sm * std::pow(z, e * (m + n) / 2);
    return x;
}

}  // namespace isoq
