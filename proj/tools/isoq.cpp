#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "isoq/acceptance.hpp"
#include "isoq/curves.hpp"
#include "isoq/deformation.hpp"
#include "isoq/descriptor.hpp"
#include "isoq/error.hpp"
#include "isoq/expr.hpp"
#include "isoq/frames.hpp"
#include "isoq/surfaces.hpp"
#include "isoq/synthesis.hpp"
#include "isoq/table.hpp"

namespace {

using namespace isoq;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

struct GridOptions {
    std::string shape = "polar";
    std::string center = "0";
    double r_in = 0.1;
    double r_out = 1.5;
    double x0 = -1.0, x1 = 1.0, y0 = -1.0, y1 = 1.0;
    int nu = 32;
    int nv = 64;

    GridSpec spec() const {
        GridSpec g;
        g.shape = shape == "polar" ? GridSpec::Shape::Polar : GridSpec::Shape::Cartesian;
        g.center = parse_complex(center);
        g.r_in = r_in;
        g.r_out = r_out;
        g.x0 = x0, g.x1 = x1, g.y0 = y0, g.y1 = y1;
        g.nu = nu;
        g.nv = nv;
        if (g.nu < 2 || g.nv < 2) throw Error(ErrorKind::Validation, "grid needs at least 2 x 2 samples");
        if (g.shape == GridSpec::Shape::Polar && !(0.0 <= g.r_in && g.r_in < g.r_out))
            throw Error(ErrorKind::Validation, "polar grid needs 0 <= r-in < r-out");
        if (g.shape == GridSpec::Shape::Cartesian && !(g.x0 < g.x1 && g.y0 < g.y1))
            throw Error(ErrorKind::Validation, "cartesian grid needs x0 < x1 and y0 < y1");
        return g;
    }
};

void add_grid_options(CLI::App* sub, GridOptions& g) {
    sub->add_option("--grid", g.shape, "grid shape")->check(CLI::IsMember({"polar", "cartesian"}))->capture_default_str();
    sub->add_option("--center", g.center, "center of a polar grid")->capture_default_str();
    sub->add_option("--r-in", g.r_in, "inner radius")->capture_default_str();
    sub->add_option("--r-out", g.r_out, "outer radius")->capture_default_str();
    sub->add_option("--x0", g.x0)->capture_default_str();
    sub->add_option("--x1", g.x1)->capture_default_str();
    sub->add_option("--y0", g.y0)->capture_default_str();
    sub->add_option("--y1", g.y1)->capture_default_str();
    sub->add_option("--nu", g.nu, "radial (or x) samples")->capture_default_str();
    sub->add_option("--nv", g.nv, "angular (or y) samples")->capture_default_str();
}

TableFormat table_format(const std::string& s) { return s == "json" ? TableFormat::Json : TableFormat::Csv; }

std::vector<cplx> parse_points(const std::vector<std::string>& at) {
    std::vector<cplx> pts;
    for (const auto& s : at) pts.push_back(parse_complex(s));
    return pts;
}

CurveModel load_curve(const std::string& text) {
    std::vector<std::string> warnings;
    CurveModel m = load_descriptor(text, &warnings);
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
    return m;
}

// Jet order: the flag wins over ISOQ_JET_ORDER, which wins over the built-in default.
int resolve_order(const std::optional<int>& flag) {
    if (flag) {
        if (*flag < kMinInvariantOrder || *flag > 40) throw Error(ErrorKind::Validation, "--order out of range [6, 40]");
        return *flag;
    }
    if (const char* env = std::getenv("ISOQ_JET_ORDER")) {
        int v = 0;
        try {
            std::size_t used = 0;
            v = std::stoi(env, &used);
            if (used != std::string(env).size()) throw std::invalid_argument(env);
        } catch (const std::exception&) {
            throw Error(ErrorKind::Validation, std::string("ISOQ_JET_ORDER is not an integer: '") + env + "'");
        }
        if (v < kMinInvariantOrder || v > 40) throw Error(ErrorKind::Validation, "ISOQ_JET_ORDER out of range [6, 40]");
        return v;
    }
    return kDefaultOrder;
}

std::pair<int, int> parse_q(const std::string& s) {
    const auto slash = s.find('/');
    try {
        std::size_t used = 0;
        const int m = std::stoi(s.substr(0, slash), &used);
        if (used != (slash == std::string::npos ? s.size() : slash)) throw std::invalid_argument(s);
        int n = 1;
        if (slash != std::string::npos) {
            n = std::stoi(s.substr(slash + 1), &used);
            if (used != s.size() - slash - 1) throw std::invalid_argument(s);
        }
        return {m, n};
    } catch (const std::exception&) {
        throw Error(ErrorKind::Validation, "q must be m or m/n with integers m, n: '" + s + "'");
    }
}

double rel_err(cplx computed, cplx formula) { return std::abs(computed - formula) / std::max(std::abs(formula), 1e-300); }

int cmd_invariants(const std::string& curve, const std::vector<std::string>& at, int order, const std::string& fmt,
                   const std::string& out) {
    const CurveModel m = load_curve(curve);
    Table t{{"z", "delta", "ddelta", "kappa"}, {}};
    for (const cplx z : parse_points(at)) {
        const Invariants inv = invariants_at(m, z, order);
        t.rows.push_back({z, inv.delta, inv.ddelta, inv.kappa});
    }
    emit_table(t, table_format(fmt), out);
    return kExitOk;
}

int cmd_table_wcurves(const std::vector<std::string>& qs, const std::vector<std::string>& at, int order,
                      const std::string& fmt, const std::string& out) {
    Table t{{"q", "m", "n", "z", "delta_formula", "delta_computed", "delta_rel_err", "gamma_formula", "gamma_computed",
             "gamma_rel_err", "kappa_formula", "kappa_computed", "kappa_rel_err"},
            {}};
    for (const auto& q : qs) {
        const auto [m, n] = parse_q(q);
        std::string notice;
        const CurveModel f = make_wcurve(m, n, &notice);
        if (!notice.empty()) std::cerr << "warning: " << notice << "\n";
        for (const cplx z : parse_points(at)) {
            const Invariants inv = invariants_at(f, z, order);
            const cplx df = wcurve_delta_formula(m, n, z), gf = wcurve_gamma_formula(m, n, z);
            const cplx kf = wcurve_kappa_formula(m, n);
            t.rows.push_back({q, static_cast<long long>(m), static_cast<long long>(n), z, df, inv.delta,
                              rel_err(inv.delta, df), gf, inv.ddelta, rel_err(inv.ddelta, gf), kf, inv.kappa,
                              rel_err(inv.kappa, kf)});
        }
    }
    emit_table(t, table_format(fmt), out);
    return kExitOk;
}

int cmd_mesh(const std::string& curve, const std::string& kind_name, const std::string& out, const GridOptions& go) {
    const auto kind = surface_kind_from_string(kind_name);
    if (!kind) throw Error(ErrorKind::Validation, "unknown surface kind '" + kind_name + "'");
    const std::string ext = std::filesystem::path(out).extension().string();
    if (ext != ".obj" && ext != ".ply") throw Error(ErrorKind::Validation, "--out must end in .obj or .ply");
    const SurfaceMesh mesh = build_mesh(load_curve(curve), go.spec(), *kind);
    if (ext == ".obj")
        write_obj(mesh, out);
    else
        write_ply(mesh, out);
    int near_end = 0, singular = 0;
    for (const auto f : mesh.flags) near_end += f == kVertexNearEnd, singular += f == kVertexSingular;
    std::cout << "vertices " << mesh.vertices.size() << " faces " << mesh.faces.size() << " near_end " << near_end
              << " singular " << singular << "\n";
    return kExitOk;
}

int cmd_ends(const std::string& curve, const std::string& kind_name, double threshold, const GridOptions& go,
             const std::string& fmt, const std::string& out) {
    const auto kind = surface_kind_from_string(kind_name);
    if (!kind) throw Error(ErrorKind::Validation, "unknown surface kind '" + kind_name + "'");
    const EndReport r = detect_ends(load_curve(curve), go.spec(), *kind, threshold);
    Table t{{"cluster", "center"}, {}};
    for (std::size_t k = 0; k < r.cluster_centers.size(); ++k)
        t.rows.push_back({static_cast<long long>(k), r.cluster_centers[k]});
    emit_table(t, table_format(fmt), out);
    std::cerr << "flagged samples " << r.flagged.size() << ", clusters " << r.clusters() << "\n";
    return kExitOk;
}

int cmd_synthesize(const std::string& D, const std::string& G, const std::string& base, const std::vector<std::string>& at,
                   int order, const std::string& fmt, const std::string& out) {
    const Expr d = parse_expr(D), g = parse_expr(G);
    const CurveModel s = synthesize(d, g, parse_complex(base));
    Table t{{"z", "D", "delta", "delta_rel_err", "G", "ddelta", "ddelta_rel_err"}, {}};
    for (const cplx z : parse_points(at)) {
        const Invariants inv = invariants_at(s, z, order);
        const cplx dz = d.eval(z), gz = g.eval(z);
        t.rows.push_back({z, dz, inv.delta, rel_err(inv.delta, dz), gz, inv.ddelta,
                          std::abs(inv.ddelta - gz) / std::max(1.0, std::abs(gz))});
    }
    emit_table(t, table_format(fmt), out);
    return kExitOk;
}

int cmd_deform(const std::string& b, const std::string& ahat, const std::string& base, const std::string& at,
               const std::string& fmt, const std::string& out) {
    const AffineData fd{parse_expr(b), parse_complex(base)};
    const cplx z0 = parse_complex(at);
    const CurveModel f = unimodular_curve(fd);
    const CurveModel fh = deform4(fd, parse_expr(ahat));
    const DeformationReport r = verify_deformation(f, fh, z0);
    const cplx shift = invariants_at(fh, z0).ddelta - invariants_at(f, z0).ddelta;
    const DifferentialSample s = deformation_s(parse_expr(ahat).eval(Jet::variable(z0, 4)));
    Table t{{"quantity", "value"}, {}};
    t.rows.push_back({std::string("ddelta_shift"), shift});
    t.rows.push_back({std::string("s"), s.coeff.value()});
    t.rows.push_back({std::string("orth_residual"), r.orth_residual});
    t.rows.push_back({std::string("contact_order"), static_cast<long long>(r.contact_order)});
    t.rows.push_back({std::string("epsilon"), static_cast<long long>(r.epsilon)});
    t.rows.push_back({std::string("r_source"), std::string(r.closed_form ? "closed_form" : "orthogonality")});
    t.rows.push_back({std::string("closed_form_residual"), r.closed_form_residual});
    for (int k = 0; k < 5; ++k) t.rows.push_back({"r" + std::to_string(k), r.r[static_cast<std::size_t>(k)]});
    t.rows.push_back({std::string("valid"), std::string(r.valid ? "true" : "false")});
    emit_table(t, table_format(fmt), out);
    return r.valid ? kExitOk : kExitNumerical;
}

int cmd_contact(const std::string& curve, const std::string& other, const std::vector<std::string>& at, int maxk,
                const std::string& fmt, const std::string& out) {
    if (maxk < 0 || maxk > 12) throw Error(ErrorKind::Validation, "--max out of range [0, 12]");
    const CurveModel a = load_curve(curve);
    const bool osculating = other == "osculating";
    const std::optional<CurveModel> b = osculating ? std::nullopt : std::optional<CurveModel>(load_curve(other));
    Table t{{"z", "contact_order"}, {}};
    for (const cplx z : parse_points(at)) {
        const int k = osculating ? contact_order(a, osculating_cycle_model(a, z), z, maxk) : contact_order(a, *b, z, maxk);
        t.rows.push_back({z, static_cast<long long>(k)});
    }
    emit_table(t, table_format(fmt), out);
    return kExitOk;
}

int cmd_selftest(const std::vector<int>& only) {
    bool all = true;
    if (only.empty()) {
        for (const auto& r : run_acceptance(&std::cout)) all = all && r.pass;
    } else {
        for (const int id : only) {
            if (id < 1 || id > 11) throw Error(ErrorKind::Validation, "criterion ids are 1..11");
            const CriterionResult r = run_criterion(id);
            std::cout << format_result(r) << "\n";
            all = all && r.pass;
        }
    }
    return all ? kExitOk : kExitNumerical;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"isoq: moving frames, invariants and surfaces of isotropic curves"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "isoq 1.0");

    std::optional<int> order;
    std::string fmt = "csv", out;
    auto add_output = [&](CLI::App* sub) {
        sub->add_option("--format", fmt, "table format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
        sub->add_option("--out", out, "output file (default: standard output)");
    };

    std::string curve, other = "osculating", kind, D, G, base = "0", b, ahat, at_one = "0.3+0.2i";
    std::vector<std::string> at, qs = {"5", "7", "5/3", "3/2"};
    std::vector<int> only;
    int maxk = 8;
    double threshold = kEndFlagThreshold;
    GridOptions grid;

    auto* inv = app.add_subcommand("invariants", "delta, d(delta) and kappa at points");
    inv->add_option("--curve", curve, "descriptor: inline JSON, file path, 'cycle' or 'exceptional1'")->required();
    inv->add_option("--at", at, "evaluation point(s), e.g. 1+0.5i")->required();
    inv->add_option("--order", order, "jet order (overrides ISOQ_JET_ORDER)");
    add_output(inv);

    auto* table = app.add_subcommand("table", "formula-vs-computed tables");
    table->require_subcommand(1);
    auto* wc = table->add_subcommand("wcurves", "W-curve invariants against their closed forms");
    wc->add_option("--q", qs, "exponents m or m/n")->delimiter(',')->capture_default_str();
    std::vector<std::string> wc_at = {"1", "1.5+0.5i", "0.7-0.9i"};
    wc->add_option("--at", wc_at, "evaluation point(s)")->capture_default_str();
    wc->add_option("--order", order, "jet order (overrides ISOQ_JET_ORDER)");
    add_output(wc);

    auto* mesh = app.add_subcommand("mesh", "tamed surface mesh as OBJ or PLY");
    mesh->add_option("--curve", curve, "curve descriptor")->required();
    mesh->add_option("--kind", kind, "min_r3, max_r12, cmc1_h3, cmc1_h12, flat_h3, flat_h12, super_s4")->required();
    mesh->add_option("--out", out, "output path ending in .obj or .ply")->required();
    add_grid_options(mesh, grid);

    auto* ends = app.add_subcommand("ends", "locate ends of a tamed surface");
    ends->add_option("--curve", curve, "curve descriptor")->required();
    ends->add_option("--kind", kind, "surface kind")->required();
    ends->add_option("--threshold", threshold, "end measure flag threshold")->capture_default_str();
    add_grid_options(ends, grid);
    add_output(ends);

    auto* syn = app.add_subcommand("synthesize", "curve with prescribed delta = D dz^4 and d(delta) = G dz^2");
    syn->add_option("--D", D, "expression in z")->required();
    syn->add_option("--G", G, "expression in z")->required();
    syn->add_option("--base", base, "base point of the integration")->capture_default_str();
    syn->add_option("--at", at, "evaluation point(s)")->required();
    syn->add_option("--order", order, "jet order (overrides ISOQ_JET_ORDER)");
    add_output(syn);

    auto* def = app.add_subcommand("deform", "fourth order deformation of the curve with delta = dz^4, d(delta) = b dz^2");
    def->add_option("--b", b, "expression in z")->required();
    def->add_option("--ahat", ahat, "expression in z")->required();
    def->add_option("--base", base, "base point of the integration")->capture_default_str();
    def->add_option("--at", at_one, "point of comparison")->capture_default_str();
    add_output(def);

    auto* con = app.add_subcommand("contact", "analytic contact order of two curves");
    con->add_option("--curve", curve, "curve descriptor")->required();
    con->add_option("--other", other, "second curve descriptor, or 'osculating'")->capture_default_str();
    con->add_option("--at", at, "common parameter value(s)")->required();
    con->add_option("--max", maxk, "largest order tested")->capture_default_str();
    add_output(con);

    auto* self = app.add_subcommand("selftest", "run the acceptance suite");
    self->add_option("--only", only, "criterion ids to run")->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitValidation;
    }

    try {
        if (*inv) return cmd_invariants(curve, at, resolve_order(order), fmt, out);
        if (*wc) return cmd_table_wcurves(qs, wc_at, resolve_order(order), fmt, out);
        if (*mesh) return cmd_mesh(curve, kind, out, grid);
        if (*ends) return cmd_ends(curve, kind, threshold, grid, fmt, out);
        if (*syn) return cmd_synthesize(D, G, base, at, resolve_order(order), fmt, out);
        if (*def) return cmd_deform(b, ahat, base, at_one, fmt, out);
        if (*con) return cmd_contact(curve, other, at, maxk, fmt, out);
        if (*self) return cmd_selftest(only);
    } catch (const Error& e) {
        std::cerr << "isoq: " << e.what() << "\n";
        return is_validation(e.kind()) ? kExitValidation : kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "isoq: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitValidation;
}
