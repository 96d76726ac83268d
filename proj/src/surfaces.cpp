#include "isoq/surfaces.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numbers>

#include "isoq/error.hpp"

namespace isoq {

namespace {

struct KindInfo {
    SurfaceKind kind;
    const char* name;
    int dim;
};

constexpr KindInfo kKinds[] = {
    {SurfaceKind::MinR3, "min_r3", 3},     {SurfaceKind::MaxR12, "max_r12", 3},   {SurfaceKind::Cmc1H3, "cmc1_h3", 4},
    {SurfaceKind::Cmc1H12, "cmc1_h12", 4}, {SurfaceKind::FlatH3, "flat_h3", 4},   {SurfaceKind::FlatH12, "flat_h12", 4},
    {SurfaceKind::SuperS4, "super_s4", 5},
};

bool is_flat_target(SurfaceKind k) { return k == SurfaceKind::MinR3 || k == SurfaceKind::MaxR12; }
bool is_cmc(SurfaceKind k) { return k == SurfaceKind::Cmc1H3 || k == SurfaceKind::Cmc1H12; }
bool is_front(SurfaceKind k) { return k == SurfaceKind::FlatH3 || k == SurfaceKind::FlatH12; }

HyperbolicTarget hyp_target(SurfaceKind k) {
    return (k == SurfaceKind::Cmc1H3 || k == SurfaceKind::FlatH3) ? HyperbolicTarget::H3 : HyperbolicTarget::H12;
}

Vec5C plucker_at(const CurveModel& model, cplx z) {
    const LagrangianJets u = eval_curve(model, z, 0);
    return plucker_raw(coeff(u.u1, 0), coeff(u.u2, 0));
}

Vec4C associate_at(const CurveModel& model, cplx z) { return coeff(legendre_associate(model, z, 0), 0); }

// Metric of the ambient space: signature vector (diagonal) and curvature of the model hyperquadric.
struct Ambient {
    VecX eta;
    double curvature;
    double quadric;  // <x,x> on the hyperquadric, 0 for flat targets
};

Ambient ambient_of(SurfaceKind k) {
    switch (k) {
        case SurfaceKind::MinR3: return {VecX::Ones(3), 0.0, 0.0};
        case SurfaceKind::MaxR12: {
            VecX e = VecX::Ones(3);
            e(0) = -1.0;
            return {e, 0.0, 0.0};
        }
        case SurfaceKind::SuperS4: return {VecX::Ones(5), 1.0, 1.0};
        default: {
            VecX e = VecX::Ones(4);
            e(0) = -1.0;
            const bool h3 = hyp_target(k) == HyperbolicTarget::H3;
            return {e, h3 ? -1.0 : 1.0, h3 ? -1.0 : 1.0};
        }
    }
}

double ip(const VecX& a, const VecX& b, const VecX& eta) { return (a.array() * b.array() * eta.array()).sum(); }

}  // namespace

const char* to_string(SurfaceKind k) {
    for (const auto& i : kKinds)
        if (i.kind == k) return i.name;
    return "?";
}

std::optional<SurfaceKind> surface_kind_from_string(const std::string& s) {
    for (const auto& i : kKinds)
        if (s == i.name) return i.kind;
    return std::nullopt;
}

int ambient_dim(SurfaceKind k) {
    for (const auto& i : kKinds)
        if (i.kind == k) return i.dim;
    return 3;
}

double end_measure(const CurveModel& model, cplx z, SurfaceKind kind) {
    if (kind == SurfaceKind::SuperS4) return 1.0;
    if (is_front(kind)) {
        const Vec4C x = associate_at(model, z);
        return std::abs(x(1) * x(3) - x(0) * x(2)) / x.squaredNorm();
    }
    const Vec5C l = plucker_at(model, z);
    return std::abs(is_flat_target(kind) ? l(0) : l(2)) / l.norm();
}

VecX tamed_point(const CurveModel& model, cplx z, SurfaceKind kind, const std::optional<VecX>& sign_ref) {
    try {
        if (is_flat_target(kind)) {
            const Vec3 p = project_flat(affine_chart(plucker_at(model, z)), kind == SurfaceKind::MinR3 ? FlatTarget::R3 : FlatTarget::R12);
            return VecX(p);
        }
        if (is_cmc(kind)) return VecX(project_hyperbolic(unimodular_chart(plucker_at(model, z)), hyp_target(kind)));
        const Vec4C xi = associate_at(model, z);
        if (is_front(kind)) return VecX(project_hyperbolic(contact_chart(CP3Point{xi}), hyp_target(kind)));
        std::optional<Vec5> ref;
        if (sign_ref) ref = Vec5(*sign_ref);
        return VecX(twistor_project(CP3Point{xi}, ref));
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::OnHyperplaneSection || e.kind() == ErrorKind::OnQuadric)
            throw Error(ErrorKind::AtEnd, std::string(to_string(kind)) + " end: " + e.what());
        throw;
    }
}

Eigen::Vector3d display_point(const VecX& x, SurfaceKind kind) {
    switch (kind) {
        case SurfaceKind::MinR3:
        case SurfaceKind::MaxR12: return x.head<3>();
        case SurfaceKind::Cmc1H3:
        case SurfaceKind::FlatH3: return ball_model(Vec4(x));
        case SurfaceKind::SuperS4: return x.head<3>() / (1.0 - x(4));
        default: return x.head<3>();
    }
}

std::vector<cplx> grid_points(const GridSpec& g) {
    std::vector<cplx> pts;
    pts.reserve(static_cast<std::size_t>(g.nu * g.nv));
    for (int i = 0; i < g.nu; ++i) {
        for (int j = 0; j < g.nv; ++j) {
            if (g.shape == GridSpec::Shape::Polar) {
                const double r = g.nu == 1 ? g.r_out : g.r_in + (g.r_out - g.r_in) * i / (g.nu - 1);
                pts.push_back(g.center + std::polar(r, 2.0 * std::numbers::pi * j / g.nv));
            } else {
                const double x = g.x0 + (g.x1 - g.x0) * i / std::max(1, g.nu - 1);
                const double y = g.y0 + (g.y1 - g.y0) * j / std::max(1, g.nv - 1);
                pts.push_back(g.center + cplx(x, y));
            }
        }
    }
    return pts;
}

namespace {

// Grid neighbours of vertex index k (angular direction wraps for polar grids).
std::vector<int> neighbours(const GridSpec& g, int k) {
    const int i = k / g.nv, j = k % g.nv;
    std::vector<int> out;
    for (int di = -1; di <= 1; ++di)
        for (int dj = -1; dj <= 1; ++dj) {
            if (di == 0 && dj == 0) continue;
            const int ii = i + di;
            int jj = j + dj;
            if (ii < 0 || ii >= g.nu) continue;
            if (g.shape == GridSpec::Shape::Polar) jj = (jj + g.nv) % g.nv;
            else if (jj < 0 || jj >= g.nv) continue;
            out.push_back(ii * g.nv + jj);
        }
    return out;
}

std::vector<std::uint8_t> end_flags(const CurveModel& model, const std::vector<cplx>& pts, SurfaceKind kind, double threshold) {
    std::vector<std::uint8_t> flags(pts.size(), kVertexOk);
    for (std::size_t k = 0; k < pts.size(); ++k) {
        try {
            if (end_measure(model, pts[k], kind) < threshold) flags[k] = kVertexNearEnd;
        } catch (const Error&) {
            flags[k] = kVertexSingular;
        }
    }
    return flags;
}

}  // namespace

EndReport detect_ends(const CurveModel& model, const GridSpec& grid, SurfaceKind kind, double threshold) {
    const auto pts = grid_points(grid);
    const auto flags = end_flags(model, pts, kind, threshold);
    EndReport rep;
    std::vector<int> seen(pts.size(), 0);
    for (std::size_t k = 0; k < pts.size(); ++k) {
        if (flags[k] == kVertexOk) continue;
        rep.flagged.push_back(pts[k]);
        if (seen[k]) continue;
        // flood fill one cluster, centred at its point of smallest measure
        std::vector<int> stack{static_cast<int>(k)};
        seen[k] = 1;
        cplx best = pts[k];
        double best_m = 1e300;
        while (!stack.empty()) {
            const int c = stack.back();
            stack.pop_back();
            double m = 0.0;
            try {
                m = end_measure(model, pts[static_cast<std::size_t>(c)], kind);
            } catch (const Error&) {
            }
            if (m < best_m) best_m = m, best = pts[static_cast<std::size_t>(c)];
            for (const int n : neighbours(grid, c)) {
                if (seen[static_cast<std::size_t>(n)] || flags[static_cast<std::size_t>(n)] == kVertexOk) continue;
                seen[static_cast<std::size_t>(n)] = 1;
                stack.push_back(n);
            }
        }
        rep.cluster_centers.push_back(best);
    }
    return rep;
}

SurfaceMesh build_mesh(const CurveModel& model, const GridSpec& grid, SurfaceKind kind, const MeshOptions& opt) {
    const auto pts = grid_points(grid);
    SurfaceMesh mesh;
    mesh.kind = kind;
    mesh.dim = ambient_dim(kind);
    mesh.flags = end_flags(model, pts, kind, opt.end_threshold);
    mesh.vertices.assign(pts.size(), VecX::Zero(mesh.dim));
    std::optional<VecX> row_ref, prev;
    for (std::size_t k = 0; k < pts.size(); ++k) {
        if (k % static_cast<std::size_t>(grid.nv) == 0) prev = row_ref;
        if (mesh.flags[k] != kVertexOk) continue;
        try {
            mesh.vertices[k] = tamed_point(model, pts[k], kind, kind == SurfaceKind::SuperS4 ? prev : std::nullopt);
            if (kind == SurfaceKind::SuperS4) {
                if (k % static_cast<std::size_t>(grid.nv) == 0 || !row_ref) row_ref = mesh.vertices[k];
                prev = mesh.vertices[k];
            }
        } catch (const Error& e) {
            mesh.flags[k] = e.kind() == ErrorKind::AtEnd ? kVertexNearEnd : kVertexSingular;
        }
    }
    const auto ok = [&](int i, int j) {
        if (grid.shape == GridSpec::Shape::Polar) j %= grid.nv;
        return mesh.flags[static_cast<std::size_t>(i * grid.nv + j)] == kVertexOk;
    };
    const int jmax = grid.shape == GridSpec::Shape::Polar ? grid.nv : grid.nv - 1;
    for (int i = 0; i + 1 < grid.nu; ++i) {
        for (int j = 0; j < jmax; ++j) {
            const int j1 = (j + 1) % grid.nv;
            const int a = i * grid.nv + j, b = (i + 1) * grid.nv + j, c = (i + 1) * grid.nv + j1, d = i * grid.nv + j1;
            if (ok(i, j) && ok(i + 1, j) && ok(i + 1, j1)) mesh.faces.push_back({a, b, c});
            if (ok(i, j) && ok(i + 1, j1) && ok(i, j1)) mesh.faces.push_back({a, c, d});
        }
    }
    if (kind == SurfaceKind::Cmc1H3 || kind == SurfaceKind::FlatH3) (void)opt.ball_clamp;
    return mesh;
}

void write_obj(const SurfaceMesh& mesh, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::IoError, "cannot open " + path);
    out.imbue(std::locale::classic());
    out.precision(17);
    int flagged = 0;
    for (const auto f : mesh.flags) flagged += f != kVertexOk;
    out << "# isoq " << to_string(mesh.kind) << ": " << mesh.vertices.size() << " vertices, " << mesh.faces.size()
        << " faces\n";
    if (flagged) out << "# " << flagged << " vertices near an end or singular are placed at the origin and used by no face\n";
    for (const auto& v : mesh.vertices) {
        const Eigen::Vector3d p = display_point(v, mesh.kind);
        out << "v " << p(0) << ' ' << p(1) << ' ' << p(2) << '\n';
    }
    for (const auto& f : mesh.faces) out << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
    if (!out) throw Error(ErrorKind::IoError, "write failed: " + path);
}

void write_ply(const SurfaceMesh& mesh, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::IoError, "cannot open " + path);
    out << "ply\nformat binary_little_endian 1.0\n";
    out << "element vertex " << mesh.vertices.size() << '\n';
    static const char* axes[] = {"x", "y", "z", "w", "v"};
    for (int k = 0; k < mesh.dim; ++k) out << "property double " << axes[k] << '\n';
    out << "property uchar flags\n";
    out << "element face " << mesh.faces.size() << '\n';
    out << "property list uchar int vertex_indices\nend_header\n";
    const auto put = [&out](const auto& x) {
        char buf[sizeof x];
        std::memcpy(buf, &x, sizeof x);
        if constexpr (std::endian::native == std::endian::big) std::reverse(buf, buf + sizeof x);
        out.write(buf, sizeof x);
    };
    for (std::size_t k = 0; k < mesh.vertices.size(); ++k) {
        for (int i = 0; i < mesh.dim; ++i) put(mesh.vertices[k](i));
        put(mesh.flags[k]);
    }
    for (const auto& f : mesh.faces) {
        put(static_cast<std::uint8_t>(3));
        for (const int i : f) put(static_cast<std::int32_t>(i));
    }
    if (!out) throw Error(ErrorKind::IoError, "write failed: " + path);
}

SecondOrderReport second_order_report(const CurveModel& model, cplx z, SurfaceKind kind, double scale) {
    const double h = 1e-4 * scale;
    const VecX c = tamed_point(model, z, kind);
    std::optional<VecX> ref;
    if (kind == SurfaceKind::SuperS4) ref = c;
    const auto P = [&](double dx, double dy) { return tamed_point(model, z + cplx(dx, dy), kind, ref); };
    const VecX xp = P(h, 0), xm = P(-h, 0), yp = P(0, h), ym = P(0, -h);
    const VecX Fx = (xp - xm) / (2 * h), Fy = (yp - ym) / (2 * h);
    const VecX Fxx = (xp - 2 * c + xm) / (h * h), Fyy = (yp - 2 * c + ym) / (h * h);
    const VecX Fxy = (P(h, h) - P(h, -h) - P(-h, h) + P(-h, -h)) / (4 * h * h);

    const Ambient amb = ambient_of(kind);
    SecondOrderReport rep;
    rep.E = ip(Fx, Fx, amb.eta);
    rep.F = ip(Fx, Fy, amb.eta);
    rep.G = ip(Fy, Fy, amb.eta);
    rep.conformal_residual = std::abs(rep.E - rep.G) + std::abs(rep.F);
    const double detI = rep.E * rep.G - rep.F * rep.F;
    rep.causal_character = detI > 0 ? "spacelike" : (detI < 0 ? "timelike" : "degenerate");
    rep.ambient_residual = amb.quadric == 0.0 ? 0.0 : std::abs(ip(c, c, amb.eta) - amb.quadric);
    rep.harmonic_residual = (Fxx + Fyy).cwiseAbs().maxCoeff() /
                            std::max({Fxx.cwiseAbs().maxCoeff(), Fyy.cwiseAbs().maxCoeff(), 1e-300});
    const double first = std::max(std::abs(rep.E), std::abs(rep.G));
    if (std::abs(detI) <= 1e-10 * first * first || first == 0.0)
        throw Error(ErrorKind::SingularJacobian, "tamed map is singular at the point");

    // unit normal: orthogonal to the tangent plane and, for hyperquadrics, to the position vector
    const int n = static_cast<int>(c.size());
    Eigen::MatrixXd M(amb.quadric == 0.0 ? 2 : 3, n);
    M.row(0) = (Fx.array() * amb.eta.array()).matrix().transpose();
    M.row(1) = (Fy.array() * amb.eta.array()).matrix().transpose();
    if (amb.quadric != 0.0) M.row(2) = (c.array() * amb.eta.array()).matrix().transpose();
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeFullV);
    if (n - M.rows() != 1) {
        // S4 has codimension two; report the tangential data only
        rep.mean_curvature = std::numeric_limits<double>::quiet_NaN();
        rep.gauss_curvature = std::numeric_limits<double>::quiet_NaN();
        return rep;
    }
    VecX nv = svd.matrixV().col(n - 1);
    const double nn = ip(nv, nv, amb.eta);
    nv /= std::sqrt(std::abs(nn));
    const double eps = nn > 0 ? 1.0 : -1.0;
    const double L = ip(Fxx, nv, amb.eta), Mm = ip(Fxy, nv, amb.eta), N = ip(Fyy, nv, amb.eta);
    rep.mean_curvature = std::abs((L * rep.G - 2 * Mm * rep.F + N * rep.E) / (2 * detI));
    rep.gauss_curvature = amb.curvature + eps * (L * N - Mm * Mm) / detI;
    return rep;
}

}  // namespace isoq
