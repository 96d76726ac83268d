#include "isoq/synthesis.hpp"

#include <cmath>
#include <optional>

#include "isoq/error.hpp"

namespace isoq {

namespace {

Mat4C coeff_mat(const JetMat4& N, int k) {
    Mat4C M;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            const Jet& e = N[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            M(i, j) = k <= e.order() ? e[k] : cplx(0.0);
        }
    return M;
}

int jm_order(const JetMat4& N) {
    int o = N[0][0].order();
    for (const auto& r : N)
        for (const auto& e : r) o = std::min(o, e.order());
    return o;
}

std::vector<Mat4C> taylor_coeffs(const Mat4C& A0, const JetMat4& N, int order) {
    std::vector<Mat4C> Nk(static_cast<std::size_t>(order));
    for (int k = 0; k < order; ++k) Nk[static_cast<std::size_t>(k)] = coeff_mat(N, k);
    std::vector<Mat4C> c(static_cast<std::size_t>(order + 1));
    c[0] = A0;
    for (int m = 0; m < order; ++m) {
        Mat4C s = Mat4C::Zero();
        for (int i = 0; i <= m; ++i) s += c[static_cast<std::size_t>(i)] * Nk[static_cast<std::size_t>(m - i)];
        c[static_cast<std::size_t>(m + 1)] = s / static_cast<double>(m + 1);
    }
    return c;
}

class ConstantField : public CoefficientField {
public:
    explicit ConstantField(Mat4C N) : N_(std::move(N)) {}
    JetMat4 eval(cplx z, int order) override {
        JetMat4 out;
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j)
                out[i][j] = Jet::constant(z, order, N_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
        return out;
    }

private:
    Mat4C N_;
};

class FnField : public CoefficientField {
public:
    explicit FnField(std::function<JetMat4(cplx, int)> f) : f_(std::move(f)) {}
    JetMat4 eval(cplx z, int order) override { return f_(z, order); }

private:
    std::function<JetMat4(cplx, int)> f_;
};

// Fourth root of D continued along the path from the principal value at its start.
class ExistenceField : public CoefficientField {
public:
    ExistenceField(Expr D, Expr G) : D_(std::move(D)), Gc_(std::move(G)) {}
    JetMat4 eval(cplx z, int order) override {
        const Jet zj = Jet::variable(z, order);
        Jet d, g;
        try {
            d = D_.eval(zj);
            g = Gc_.eval(zj);
        } catch (const Error& e) {
            throw Error(ErrorKind::SingularityOnPath, e.what());
        }
        if (std::abs(d.value()) < 1e-12) throw Error(ErrorKind::SingularityOnPath, "D vanishes on the path");
        Jet a = pow(d, 0.25);
        if (prev_) {
            int best = 0;
            double dist = 1e300;
            for (int k = 0; k < 4; ++k) {
                const double t = std::abs(a.value() * std::pow(cplx(0.0, 1.0), k) - *prev_);
                if (t < dist) dist = t, best = k;
            }
            a *= std::pow(cplx(0.0, 1.0), best);
        }
        prev_ = a.value();
        return existence_form(a, g / a);
    }

private:
    ContinuedEvaluator D_;
    ContinuedEvaluator Gc_;
    std::optional<cplx> prev_;
};

class SynthesizedSource : public FrameSource {
public:
    SynthesizedSource(MCSystem sys, StepControl ctl) : sys_(std::move(sys)), ctl_(ctl) {}
    std::array<JetVec4, 4> frame_jets(cplx z0, int order) const override {
        auto field = sys_.field();
        const Mat4C A = integrate_with(*field, {sys_.base, z0});
        return taylor_frame(A, field->eval(z0, order)).cols;
    }
    std::string describe() const override { return sys_.label; }

    Mat4C integrate_with(CoefficientField& field, const std::vector<cplx>& path) const {
        PathResult r;
        run(field, path, r);
        return r.A;
    }

    void run(CoefficientField& field, const std::vector<cplx>& path, PathResult& out) const {
        Mat4C A = sys_.A0;
        double h_prev = 1e300;
        for (std::size_t s = 1; s < path.size(); ++s) {
            cplx z = path[s - 1];
            const cplx end = path[s];
            while (std::abs(end - z) > 0.0) {
                const cplx dir = (end - z) / std::abs(end - z);
                double h = std::min(std::abs(end - z), 2.0 * h_prev);
                const auto c = taylor_coeffs(A, field.eval(z, ctl_.order), ctl_.order);
                const double scale = std::max(1.0, A.cwiseAbs().maxCoeff());
                const double cp = c.back().cwiseAbs().maxCoeff();
                while (cp * std::pow(h, ctl_.order) > ctl_.tol * scale) {
                    h *= 0.5;
                    if (h < ctl_.min_step) throw Error(ErrorKind::StepUnderflow, "step size underflow");
                }
                const cplx t = h >= std::abs(end - z) ? end - z : h * dir;
                Mat4C next = c.back();
                for (int k = ctl_.order - 1; k >= 0; --k) next = next * t + c[static_cast<std::size_t>(k)];
                if (!next.allFinite()) throw Error(ErrorKind::SingularityOnPath, "frame blew up");
                A = next;
                z = h >= std::abs(end - z) ? end : z + t;
                h_prev = h;
                ++out.steps;
            }
        }
        out.A = A;
        out.symplectic_residual = symplectic_residual(A);
    }

private:
    MCSystem sys_;
    StepControl ctl_;
};

}  // namespace

FieldFactory constant_field(const Mat4C& N) {
    return [N] { return std::make_unique<ConstantField>(N); };
}

FieldFactory field_from(std::function<JetMat4(cplx, int)> f) {
    return [f] { return std::make_unique<FnField>(f); };
}

FrameJet taylor_frame(const Mat4C& A0, const JetMat4& N) {
    const int order = jm_order(N) + 1;
    const auto c = taylor_coeffs(A0, N, order);
    const cplx base = N[0][0].base();
    FrameJet F;
    for (std::size_t j = 0; j < 4; ++j)
        for (std::size_t i = 0; i < 4; ++i) {
            std::vector<cplx> co(static_cast<std::size_t>(order + 1));
            for (int k = 0; k <= order; ++k)
                co[static_cast<std::size_t>(k)] = c[static_cast<std::size_t>(k)](static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            F.cols[j][i] = Jet(base, std::move(co));
        }
    return F;
}

PathResult integrate_path(const MCSystem& sys, const std::vector<cplx>& path, const StepControl& ctl) {
    if (path.empty() || std::abs(path.front() - sys.base) > 1e-14)
        throw Error(ErrorKind::BaseMismatch, "path must start at the base point");
    if (symplectic_residual(sys.A0) > 1e-9) throw Error(ErrorKind::NotSymplectic, "base frame is not symplectic");
    SynthesizedSource src(sys, ctl);
    auto field = sys.field();
    PathResult r;
    src.run(*field, path, r);
    return r;
}

CurveModel mc_integrate(const MCSystem& sys, const StepControl& ctl) {
    if (symplectic_residual(sys.A0) > 1e-9) throw Error(ErrorKind::NotSymplectic, "base frame is not symplectic");
    return CurveModel(Synthesized{std::make_shared<SynthesizedSource>(sys, ctl)});
}

JetMat4 existence_form(const Jet& a, const Jet& b) {
    const Jet zero = a * 0.0;
    JetMat4 N;
    for (auto& r : N) r.fill(zero);
    // P = e21 + e42 + e13 - e34
    N[1][0] = a;
    N[3][1] = a;
    N[0][2] = a;
    N[2][3] = -a;
    // Q = e24 + 3/4 (e12 - e43)
    N[1][3] = b;
    N[0][1] = b * 0.75;
    N[3][2] = b * -0.75;
    return N;
}

MCSystem existence_system(const Expr& D, const Expr& G, cplx base, const Mat4C& A0) {
    cplx d0;
    try {
        d0 = D.eval(base);
    } catch (const Error& e) {
        throw Error(ErrorKind::DVanishes, e.what());
    }
    if (std::abs(d0) < 1e-12) throw Error(ErrorKind::DVanishes, "D vanishes at the base point");
    MCSystem sys;
    sys.field = [D, G] { return std::make_unique<ExistenceField>(D, G); };
    sys.A0 = A0;
    sys.base = base;
    sys.label = "D=" + D.source() + ", G=" + G.source();
    return sys;
}

CurveModel synthesize(const Expr& D, const Expr& G, cplx base, const Mat4C& A0) {
    return mc_integrate(existence_system(D, G, base, A0));
}

bool equivalent(const CurveModel& a, const CurveModel& b, const std::vector<cplx>& samples, double tol) {
    for (const cplx z : samples) {
        const Invariants ia = invariants_at(a, z);
        const Invariants ib = invariants_at(b, z);
        const auto close = [tol](cplx x, cplx y) {
            if (std::isnan(x.real()) || std::isnan(y.real())) return std::isnan(x.real()) && std::isnan(y.real());
            return std::abs(x - y) <= tol * std::max({1.0, std::abs(x), std::abs(y)});
        };
        if (!close(ia.delta, ib.delta) || !close(ia.ddelta, ib.ddelta)) return false;
    }
    return true;
}

}  // namespace isoq
