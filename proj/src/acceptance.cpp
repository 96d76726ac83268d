#include "isoq/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "isoq/deformation.hpp"
#include "isoq/descriptor.hpp"
#include "isoq/error.hpp"
#include "isoq/frames.hpp"
#include "isoq/quadric.hpp"
#include "isoq/sampling.hpp"
#include "isoq/surfaces.hpp"
#include "isoq/synthesis.hpp"

namespace isoq {

namespace {

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

struct Check {
    std::ostringstream msg;
    bool ok = true;
    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            msg << "FAIL " << what << "; ";
        }
    }
    void note(const std::string& s) { msg << s << "; "; }
};

std::string sci(double x) {
    std::ostringstream s;
    s.precision(2);
    s << std::scientific << x;
    return s.str();
}

std::string short_complex(cplx z) {
    std::ostringstream s;
    s.precision(6);
    s << z.real() << std::showpos << z.imag() << "i";
    return s.str();
}

struct QSpec {
    int m, n;
    std::string label;
};
const std::vector<QSpec> kQs = {{5, 1, "5"}, {7, 1, "7"}, {5, 3, "5/3"}, {3, 2, "3/2"}};

void criterion_wcurve(Check& c, bool quadratic) {
    const auto t0 = std::chrono::steady_clock::now();
    Rng rng(101);
    const auto pts = annulus_points(rng, 20, 0.5, 2.0);
    for (const auto& q : kQs) {
        const CurveModel f = make_wcurve(q.m, q.n);
        double worst = 0.0;
        cplx ratio = 1.0;
        for (const cplx z : pts) {
            const Invariants inv = invariants_at(f, z);
            const cplx got = quadratic ? inv.ddelta : inv.delta;
            const cplx want = quadratic ? wcurve_gamma_formula(q.m, q.n, z) : wcurve_delta_formula(q.m, q.n, z);
            if (rel(got, want) > worst) worst = rel(got, want), ratio = got / want;
        }
        if (worst <= 1e-8) c.note("q=" + q.label + " rel " + sci(worst));
        else c.require(false, "q=" + q.label + " rel " + sci(worst) + ", computed/formula " + short_complex(ratio));
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    c.require(secs <= 10.0, "runtime above 10 s");
}

void criterion3(Check& c) {
    const cplx z(1.1, 0.4);
    const double k5 = -169.0 / 56.0;
    const double k7 = -16.0 * 50 * 50 / (9.0 * 2401 - 82.0 * 49 + 9);
    const double e5 = rel(bending(make_wcurve(5, 1), z), k5);
    const double e7 = rel(bending(make_wcurve(7, 1), z), k7);
    c.note("kappa(f5) " + sci(e5) + ", kappa(f7) " + sci(e7));
    c.require(e5 <= 1e-8 && e7 <= 1e-8, "W-curve bending");
    for (const cplx k : {cplx(2.0), cplx(-3.0), cplx(0.5, 1.2)}) {
        const double e = rel(bending(make_constant_bending(k), cplx(0.3, 0.2)), k);
        c.require(e <= 1e-6, "constant bending " + format_complex(k) + " rel " + sci(e));
    }
    const double ex = rel(bending(CurveModel(Exceptional1{}), cplx(0.3, 0.2)), 1.0);
    c.require(ex <= 1e-6, "exceptional kappa = 1, rel " + sci(ex));
    for (const int q : {5, 7, 9}) {
        const cplx r = r_map(wcurve_kappa_formula(q, 1));
        c.require(std::abs(r - double(q)) <= 1e-8, "r_map(kappa_" + std::to_string(q) + ") = " + format_complex(r));
    }
    c.note("constant bending, exceptional and r_map checked");
}

void criterion4(Check& c) {
    Rng rng(404);
    const CurveModel cyc(StandardCycle{});
    const auto pts = disk_points(rng, 20, 2.0, cplx(0.2, 0.1));
    double worst = 0.0;
    std::vector<CurveModel> models{cyc};
    for (int k = 0; k < 5; ++k) models.push_back(make_goursat(cyc, random_symplectic(rng)));
    for (const auto& m : models)
        for (const cplx z : pts) worst = std::max(worst, quartic_delta(m, z, 4).coeff.max_abs());
    c.note("max |delta| on cycles " + sci(worst));
    c.require(worst < 1e-10, "delta of cycle not below 1e-10");
    c.require(is_cycle_at(make_wcurve(3, 1), cplx(1.2, 0.3)), "WCurve(3,1) not detected as cycle");
    c.require(!is_cycle_at(make_wcurve(5, 1), cplx(1.2, 0.3)), "WCurve(5,1) wrongly detected as cycle");
}

void criterion5(Check& c) {
    Rng rng(505);
    const CurveModel f = make_wcurve(5, 1);
    const cplx z(1.2, 0.5);
    const Invariants base = invariants_at(f, z);
    double worst = 0.0;
    for (int k = 0; k < 10; ++k) {
        const Invariants g = invariants_at(make_goursat(f, random_symplectic(rng)), z);
        worst = std::max({worst, rel(g.delta, base.delta), rel(g.ddelta, base.ddelta), rel(g.kappa, base.kappa)});
    }
    c.note("Goursat invariance rel " + sci(worst));
    c.require(worst <= 1e-7, "Goursat invariance");
    double mworst = 0.0;
    for (int k = 0; k < 5; ++k) {
        const Mobius h = random_mobius(rng);
        const cplx w = h.inverse(z);
        const CurveModel fh = make_reparam(f, mobius_expr(h));
        const cplx got = quartic_delta(fh, w, 2).coeff.value();
        const cplx want = quartic_delta(f, h(w), 2).coeff.value() * std::pow(h.derivative(w), 4);
        mworst = std::max(mworst, rel(got, want));
    }
    c.note("Moebius law rel " + sci(mworst));
    c.require(mworst <= 1e-8, "delta transformation law");
}

void criterion6(Check& c) {
    Rng rng(606);
    double worst = 0.0;
    for (int k = 0; k < 20; ++k) {
        const cplx z0 = random_complex(rng, 0.3);
        std::vector<cplx> hc(9, 0.0);
        hc[0] = random_complex(rng);
        hc[1] = 1.0 + random_complex(rng, 0.3);
        for (std::size_t j = 2; j < hc.size(); ++j) hc[j] = random_complex(rng, 0.3 / double(j));
        const Jet h(z0, hc);
        std::vector<cplx> wc(9, 0.0);
        wc[0] = 1.0 + random_complex(rng, 0.3);
        for (std::size_t j = 1; j < wc.size(); ++j) wc[j] = random_complex(rng, 0.5 / double(j));
        worst = std::max(worst, d_transform_check(Jet(hc[0], wc), h));
    }
    c.note("transformation law " + sci(worst));
    c.require(worst < 1e-9, "transformation law residual");
    double sw = 0.0;
    for (int k = 0; k < 20; ++k) {
        const Mobius m = random_mobius(rng);
        const cplx z0 = random_complex(rng, 0.3);
        sw = std::max(sw, schwarzian(mobius_expr(m).eval(Jet::variable(z0, 8))).max_abs());
    }
    c.note("Moebius Schwarzian " + sci(sw));
    c.require(sw < 1e-11, "Schwarzian of Moebius maps");
    double tw = 0.0;
    const std::vector<std::pair<CurveModel, cplx>> cases = {
        {make_wcurve(5, 1), cplx(1.1, 0.3)},
        {make_wcurve(5, 3), cplx(0.8, -0.6)},
        {CurveModel(Bryant{parse_expr("z"), parse_expr("z^5+z^3")}), cplx(0.3, 0.4)},
        {make_constant_bending(cplx(0.5, 1.2)), cplx(0.2, 0.1)},
        {make_goursat(make_wcurve(7, 1), random_symplectic(rng)), cplx(1.3, -0.2)},
        {kuy_example(5), cplx(0.5, 0.3)},
    };
    for (const auto& [m, z] : cases) {
        const TwoPath t = ddelta_two_path(m, z);
        tw = std::max(tw, rel(t.corrected, t.z8));
    }
    c.note("two-path rel " + sci(tw));
    c.require(tw < 1e-8, "two-path agreement");
}

Expr wcurve_delta_expr(int m, int n) {
    const double M = m, N = n;
    const double num = 9 * M * M * M * M - 82 * M * M * N * N + 9 * N * N * N * N;
    return parse_expr("-(" + format_double(num) + ")/(100*z^4)");
}

Expr wcurve_gamma_expr(int m, int n) { return parse_expr("2*(" + std::to_string(m * m + n * n) + ")/(5*z^2)"); }

void criterion7(Check& c) {
    Rng rng(707);
    const std::vector<std::pair<std::string, std::string>> pairs = {
        {"1", "0"}, {"z+2", "z"}, {"1+0.5*z^2", "0.3-z"}, {"2-z+0.25*z^3", "1+i*z^2"}, {"(1+0.2*i)*(z^2+3)", "0.7*z^3-0.4"}};
    double worst = 0.0;
    for (const auto& [D, G] : pairs) {
        const Expr d = parse_expr(D), g = parse_expr(G);
        const CurveModel s = synthesize(d, g, 0.0);
        for (const cplx z : disk_points(rng, 4, 0.8)) {
            const Invariants inv = invariants_at(s, z);
            worst = std::max(worst, rel(inv.delta, d.eval(z)));
            const cplx gz = g.eval(z);
            worst = std::max(worst, std::abs(inv.ddelta - gz) / std::max(1.0, std::abs(gz)));
        }
    }
    c.note("round trip rel " + sci(worst));
    c.require(worst <= 1e-6, "round trip");
    const Expr d = parse_expr("z+2"), g = parse_expr("z");
    const auto samples = disk_points(rng, 5, 0.8);
    const bool same = equivalent(synthesize(d, g, 0.0), synthesize(d, g, 0.0, random_symplectic(rng)), samples);
    c.require(same, "synthesized copies with different base frames");
    const bool diff = equivalent(synthesize(d, g, 0.0), synthesize(d, parse_expr("z+0.1"), 0.0), samples);
    c.require(!diff, "equivalent() accepted different data");
    for (const auto& [m, n] : std::vector<std::pair<int, int>>{{3, 2}, {5, 2}}) {
        const CurveModel s = synthesize(wcurve_delta_expr(m, n), wcurve_gamma_expr(m, n), 1.0);
        const bool eq = equivalent(s, make_wcurve(m, n), annulus_points(rng, 5, 0.7, 1.3, 0.0));
        c.require(eq, "synthesized data of q=" + std::to_string(m) + "/" + std::to_string(n) + " vs W-curve");
    }
    {
        const CurveModel s = synthesize(wcurve_delta_expr(5, 1), wcurve_gamma_expr(5, 1), 1.0);
        const bool eq = equivalent(s, make_wcurve(5, 1), annulus_points(rng, 5, 0.7, 1.3, 0.0));
        c.note(std::string("informational q=5: ") + (eq ? "equivalent" : "not equivalent"));
    }
}

void criterion8(Check& c) {
    Rng rng(808);
    const CurveModel f = make_wcurve(5, 1);
    int bad = 0;
    for (const cplx z : annulus_points(rng, 10, 0.6, 1.8)) {
        const int k = contact_order(f, osculating_cycle_model(f, z), z, 8);
        if (k != 5) ++bad, c.note("contact " + std::to_string(k) + " at " + format_complex(z));
    }
    c.require(bad == 0, "osculating contact of f5 is not 5 everywhere");
    const CurveModel b(Bryant{parse_expr("z"), parse_expr("z^5+z^3")});
    const auto roots = heptactic_points(b, Region{0.0, 0.1, 1.5}, 32);
    c.require(!roots.empty(), "no heptactic point located");
    for (const cplx z : roots) {
        const double d = std::abs(quartic_delta(b, z, 1).coeff.value());
        const int k = contact_order(b, osculating_cycle_model(b, z), z, 9);
        c.note("root " + format_complex(z) + " |delta| " + sci(d) + " contact " + std::to_string(k));
        c.require(d < 1e-10 && k >= 6, "heptactic root check");
    }
}

void criterion9(Check& c) {
    const AffineData fd{parse_expr("0.3+0.2*z-0.1*z^2"), 0.0};
    const CurveModel f = unimodular_curve(fd);
    const CurveModel fh = deform4(fd, parse_expr("exp(0.1*z)"));
    double shift = 0.0;
    for (const cplx z : {cplx(0.3, 0.2), cplx(-0.4, 0.1), cplx(0.1, -0.5)})
        shift = std::max(shift, std::abs(invariants_at(fh, z).ddelta - invariants_at(f, z).ddelta + 0.01));
    c.note("gamma shift error " + sci(shift));
    c.require(shift <= 1e-7, "gamma shift");
    const DeformationReport r = verify_deformation(f, fh, cplx(0.3, 0.2));
    c.note("orth " + sci(r.orth_residual) + " contact " + std::to_string(r.contact_order));
    c.require(r.orth_residual < 1e-6 && r.contact_order == 4, "deformation of order exactly four");
    const DeformationReport t = verify_deformation(f, deform4(fd, parse_expr("1")), cplx(0.3, 0.2));
    c.require(t.contact_order == kContactCap, "trivial deformation contact " + std::to_string(t.contact_order));
}

void criterion10(Check& c) {
    const CurveModel cyc(StandardCycle{});
    const auto en = second_order_report(cyc, cplx(0.5, 0.2), SurfaceKind::MinR3);
    c.note("Enneper conformal " + sci(en.conformal_residual / en.E) + " harmonic " + sci(en.harmonic_residual));
    c.require(en.conformal_residual < 1e-6 * en.E && en.harmonic_residual < 1e-4, "minimal surface of the cycle");
    for (const auto& [name, m, z] : std::vector<std::tuple<std::string, CurveModel, cplx>>{
             {"cycle", cyc, cplx(1.0, 0.0)}, {"f5", make_wcurve(5, 1), cplx(1.1, 0.3)}}) {
        const auto r = second_order_report(m, z, SurfaceKind::Cmc1H3);
        c.require(std::abs(r.mean_curvature - 1.0) < 1e-3, "cmc1_h3 of " + name + " H = " + format_double(r.mean_curvature));
    }
    const auto mx = second_order_report(make_wcurve(5, 1), cplx(1.1, 0.3), SurfaceKind::MaxR12);
    c.require(mx.mean_curvature < 1e-3 && mx.causal_character == "spacelike", "maximal surface");
    const CurveModel kuy = kuy_example(5);
    double kmax = 0.0;
    for (const cplx z : {cplx(0.5, 0.3), cplx(-0.4, 0.6), cplx(1.4, 0.2), cplx(0.2, -1.3)})
        kmax = std::max(kmax, std::abs(second_order_report(kuy, z, SurfaceKind::FlatH3).gauss_curvature));
    c.note("flat front |K| " + sci(kmax));
    c.require(kmax < 1e-2, "flat front curvature");
    GridSpec g;
    g.r_in = 0.2;
    g.r_out = 1.6;
    g.nu = 40;
    g.nv = 80;
    const EndReport ends = detect_ends(kuy, g, SurfaceKind::FlatH3);
    bool at_roots = ends.clusters() == 5;
    for (const cplx e : ends.cluster_centers) {
        const double a = std::arg(e) * 5.0 / (2.0 * std::numbers::pi);
        at_roots = at_roots && std::abs(std::abs(e) - 1.0) < 0.05 && std::abs(a - std::round(a)) < 0.05;
    }
    c.note("flat front end clusters " + std::to_string(ends.clusters()));
    c.require(at_roots, "five ends at the fifth roots of unity");
    Rng rng(1010);
    double unit = 0.0, equi = 0.0;
    for (int k = 0; k < 10; ++k) {
        Vec4C xi;
        for (int i = 0; i < 4; ++i) xi(i) = random_complex(rng);
        const Vec5 x = twistor_project(CP3Point{xi});
        unit = std::max(unit, std::abs(x.norm() - 1.0));
        const Mat4C A = random_compact_sp2(rng);
        const Vec5 y = twistor_project(CP3Point{A * xi});
        const Vec5 img = real_coords(A * real_compose(x) * A.transpose(), 1e-6).coords;
        equi = std::max(equi, std::min((y - img).cwiseAbs().maxCoeff(), (y + img).cwiseAbs().maxCoeff()));
    }
    c.note("twistor unit " + sci(unit) + " equivariance " + sci(equi));
    c.require(unit < 1e-9 && equi < 1e-8, "twistor projection");
}

void criterion11(Check& c) {
    Rng rng(1111);
    double hom = 0.0, orth = 0.0, emb = 0.0, sym = 0.0;
    for (int k = 0; k < 10; ++k) {
        const Mat4C A = random_symplectic(rng), B = random_symplectic(rng);
        const Mat5C LA = spin_cover(A), LB = spin_cover(B), LAB = spin_cover(A * B);
        hom = std::max(hom, (LAB - LA * LB).cwiseAbs().maxCoeff() / std::max(1.0, LAB.cwiseAbs().maxCoeff()));
        orth = std::max(orth, gram_orthogonality_residual(LA) / std::max(1.0, LA.cwiseAbs2().maxCoeff()));
        const Mat2C x = random_sl2(rng), y = random_sl2(rng);
        const Mat4C Sx = embed_sl2(x), Sy = embed_sl2(y);
        emb = std::max(emb, (embed_sl2(x * y) - Sx * Sy).cwiseAbs().maxCoeff());
        sym = std::max(sym, symplectic_residual(Sx));
    }
    c.note("spin hom " + sci(hom) + " orth " + sci(orth) + " embed " + sci(emb) + " sympl " + sci(sym));
    c.require(hom < 1e-10 && orth < 1e-10, "spin cover");
    c.require(emb < 1e-11 && sym < 1e-11, "SL(2) embedding");
    Mat5C anti = Mat5C::Zero();
    for (int i = 0; i < 5; ++i) anti(i, 4 - i) = 1.0;
    const double g = std::max((gram() - anti).cwiseAbs().maxCoeff(), gram_self_test());
    c.note("gram " + sci(g));
    c.require(g <= 1e-14, "Gram matrix");
}

const std::vector<std::pair<std::string, std::function<void(Check&)>>>& table() {
    static const std::vector<std::pair<std::string, std::function<void(Check&)>>> t = {
        {"W-curve quartic differential", [](Check& c) { criterion_wcurve(c, false); }},
        {"W-curve quadratic differential", [](Check& c) { criterion_wcurve(c, true); }},
        {"bending constants", criterion3},
        {"cycle detection", criterion4},
        {"invariance suite", criterion5},
        {"projective structure law", criterion6},
        {"synthesis round trip", criterion7},
        {"contact orders", criterion8},
        {"fourth order deformation", criterion9},
        {"surface properties", criterion10},
        {"group theory", criterion11},
    };
    return t;
}

}  // namespace

CriterionResult run_criterion(int id) {
    const auto& t = table();
    if (id < 1 || id > static_cast<int>(t.size())) throw Error(ErrorKind::Validation, "no criterion " + std::to_string(id));
    CriterionResult r;
    r.id = id;
    r.title = t[static_cast<std::size_t>(id - 1)].first;
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        t[static_cast<std::size_t>(id - 1)].second(c);
    } catch (const std::exception& e) {
        c.ok = false;
        c.msg << "exception: " << e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.pass = c.ok;
    r.detail = c.msg.str();
    return r;
}

std::string format_result(const CriterionResult& r) {
    std::ostringstream s;
    s << "criterion " << r.id << " [" << r.title << "]: " << (r.pass ? "PASS" : "FAIL") << " (" << std::fixed;
    s.precision(2);
    s << r.seconds << " s) " << r.detail;
    return s.str();
}

std::vector<CriterionResult> run_acceptance(std::ostream* out) {
    std::vector<CriterionResult> all;
    for (int id = 1; id <= static_cast<int>(table().size()); ++id) {
        all.push_back(run_criterion(id));
        if (out) *out << format_result(all.back()) << std::endl;
    }
    return all;
}

}  // namespace isoq
