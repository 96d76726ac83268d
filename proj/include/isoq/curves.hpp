#pragma once

#include <array>
#include <functional>
#include <memory>
#include <string>
#include <variant>

#include "isoq/expr.hpp"
#include "isoq/jetvec.hpp"
#include "isoq/symplin.hpp"

namespace isoq {

class CurveModel;

struct LagrangianJets {
    JetVec4 u1;
    JetVec4 u2;
};

// Curves produced by integrating a Maurer-Cartan system.
class FrameSource {
public:
    virtual ~FrameSource() = default;
    // Columns of the frame as jets at z0; the curve is [A1 ^ A2].
    virtual std::array<JetVec4, 4> frame_jets(cplx z0, int order) const = 0;
    virtual std::string describe() const = 0;
};

struct WCurve {
    int m = 5;
    int n = 1;
};
struct StandardCycle {};
struct ConstantBending {
    cplx kappa;
};
struct Exceptional1 {};
struct Bryant {
    Expr g;
    Expr h;
};
struct LagrangianPair {
    std::array<Expr, 4> u1;
    std::array<Expr, 4> u2;
};
// f = [xi ^ xi'] for a Legendre curve xi given by expressions.
struct LegendreLift {
    std::array<Expr, 4> xi;
};
// Same, with xi supplied as a jet evaluator.
struct LegendreFn {
    std::function<JetVec4(cplx, int)> xi;
    std::string name;
};
struct Goursat {
    std::shared_ptr<const CurveModel> inner;
    Mat4C X;
};
// f o h for a holomorphic change of parameter h.
struct Reparam {
    std::shared_ptr<const CurveModel> inner;
    Expr h;
};
struct Synthesized {
    std::shared_ptr<const FrameSource> source;
};

using CurveVariant = std::variant<WCurve, StandardCycle, ConstantBending, Exceptional1, Bryant, LagrangianPair,
                                  LegendreLift, LegendreFn, Goursat, Reparam, Synthesized>;

class CurveModel {
public:
    CurveModel() : v_(StandardCycle{}) {}
    CurveModel(CurveVariant v) : v_(std::move(v)) {}
    const CurveVariant& variant() const { return v_; }
    std::string name() const;

private:
    CurveVariant v_;
};

// Canonical W-curve: m > n > 0 coprime. notice receives a message when (m, n) was rewritten.
CurveModel make_wcurve(int m, int n, std::string* notice = nullptr);
CurveModel make_constant_bending(cplx kappa);
CurveModel make_goursat(const CurveModel& inner, const Mat4C& X);
CurveModel make_reparam(const CurveModel& inner, const Expr& h);
CurveModel kuy_example(int n);

bool is_wcurve_cycle(const WCurve& w);

LagrangianJets eval_curve(const CurveModel& model, cplx z0, int order);
JetVec4 legendre_associate(const CurveModel& model, cplx z0, int order);
JetVec4 legendre_associate(const LagrangianJets& u, int order);
CurveModel curve_from_legendre(const std::array<Expr, 4>& xi, cplx check_at = cplx(0.3, 0.2));
CurveModel curve_from_legendre(std::function<JetVec4(cplx, int)> xi, std::string name);

struct Ramification {
    int k1 = 0;
    int k2 = 0;
};
Ramification ramification_indices(const CurveModel& model, cplx z0);

// Closed forms attached to W-curves.
cplx wcurve_delta_formula(int m, int n, cplx z);
cplx wcurve_gamma_formula(int m, int n, cplx z);
cplx wcurve_kappa_formula(int m, int n);
// Closed-form representative of the Legendre associate of a W-curve.
Vec4C wcurve_associate_formula(int m, int n, cplx z);

}  // namespace isoq
