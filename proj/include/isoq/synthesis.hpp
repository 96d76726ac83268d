#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "isoq/curves.hpp"
#include "isoq/frames.hpp"

namespace isoq {

// sp(2,C)-valued coefficient N(z) dz, evaluated as jets. Implementations may keep branch state
// and expect to be queried at consecutive points of one path.
class CoefficientField {
public:
    virtual ~CoefficientField() = default;
    virtual JetMat4 eval(cplx z, int order) = 0;
};

using FieldFactory = std::function<std::unique_ptr<CoefficientField>()>;

struct MCSystem {
    FieldFactory field;
    Mat4C A0 = Mat4C::Identity();
    cplx base{0.0, 0.0};
    std::string label = "mc";
};

struct StepControl {
    int order = 10;
    double tol = 1e-11;
    double min_step = 1e-10;
};

struct PathResult {
    Mat4C A;
    int steps = 0;
    double symplectic_residual = 0.0;
};

FieldFactory constant_field(const Mat4C& N);
FieldFactory field_from(std::function<JetMat4(cplx, int)> f);

// Integrates A' = A N along the polyline path (path.front() must be sys.base).
PathResult integrate_path(const MCSystem& sys, const std::vector<cplx>& path, const StepControl& ctl = {});
// Frame evaluator: frame jets at z0 are obtained by integrating along the segment base -> z0.
CurveModel mc_integrate(const MCSystem& sys, const StepControl& ctl = {});

// Taylor jet of the solution of A' = A N through A(z0) = A0.
FrameJet taylor_frame(const Mat4C& A0, const JetMat4& N);

// The coefficient P D^{1/4} + Q Gamma D^{-1/4} of a curve with delta = D dz^4 and d(delta) = Gamma dz^2.
JetMat4 existence_form(const Jet& a, const Jet& b);
MCSystem existence_system(const Expr& D, const Expr& G, cplx base, const Mat4C& A0 = Mat4C::Identity());
CurveModel synthesize(const Expr& D, const Expr& G, cplx base, const Mat4C& A0 = Mat4C::Identity());

bool equivalent(const CurveModel& a, const CurveModel& b, const std::vector<cplx>& samples, double tol = 1e-6);

}  // namespace isoq
