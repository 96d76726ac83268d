#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "isoq/curves.hpp"
#include "isoq/quadric.hpp"

namespace isoq {

enum class SurfaceKind { MinR3, MaxR12, Cmc1H3, Cmc1H12, FlatH3, FlatH12, SuperS4 };
const char* to_string(SurfaceKind k);
std::optional<SurfaceKind> surface_kind_from_string(const std::string& s);
int ambient_dim(SurfaceKind k);

using VecX = Eigen::VectorXd;

// Relative size of the chart denominator that vanishes on the end set of the given kind (1 when there is none).
double end_measure(const CurveModel& model, cplx z, SurfaceKind kind);

VecX tamed_point(const CurveModel& model, cplx z, SurfaceKind kind, const std::optional<VecX>& sign_ref = std::nullopt);
// 3D display coordinates: ball model for H3, drop-last-axis for H12 and (after stereographic projection) S4.
Eigen::Vector3d display_point(const VecX& x, SurfaceKind kind);

struct GridSpec {
    enum class Shape { Polar, Cartesian } shape = Shape::Polar;
    cplx center{0.0, 0.0};
    double r_in = 0.0;
    double r_out = 1.0;
    // cartesian rectangle [x0, x1] x [y0, y1]
    double x0 = -1.0, x1 = 1.0, y0 = -1.0, y1 = 1.0;
    int nu = 32;
    int nv = 32;
};
std::vector<cplx> grid_points(const GridSpec& g);

struct EndReport {
    std::vector<cplx> flagged;
    std::vector<cplx> cluster_centers;
    int clusters() const { return static_cast<int>(cluster_centers.size()); }
};
inline constexpr double kEndFlagThreshold = 2e-2;
EndReport detect_ends(const CurveModel& model, const GridSpec& grid, SurfaceKind kind, double threshold = kEndFlagThreshold);

enum VertexFlag : std::uint8_t { kVertexOk = 0, kVertexNearEnd = 1, kVertexSingular = 2 };

struct SurfaceMesh {
    SurfaceKind kind = SurfaceKind::MinR3;
    int dim = 3;
    std::vector<VecX> vertices;
    std::vector<std::array<int, 3>> faces;
    std::vector<std::uint8_t> flags;
};

struct MeshOptions {
    double end_threshold = kEndFlagThreshold;
    double ball_clamp = 1.0 - 1e-9;
};
SurfaceMesh build_mesh(const CurveModel& model, const GridSpec& grid, SurfaceKind kind, const MeshOptions& opt = {});

void write_obj(const SurfaceMesh& mesh, const std::string& path);
void write_ply(const SurfaceMesh& mesh, const std::string& path);

struct SecondOrderReport {
    double E = 0.0, F = 0.0, G = 0.0;
    double conformal_residual = 0.0;  // |E - G| + |F|
    double mean_curvature = 0.0;      // orientation chosen with H >= 0
    double gauss_curvature = 0.0;     // intrinsic, via the Gauss equation
    double harmonic_residual = 0.0;   // |F_xx + F_yy| relative to the second derivatives
    double ambient_residual = 0.0;    // deviation from the model hyperquadric
    std::string causal_character;
};
SecondOrderReport second_order_report(const CurveModel& model, cplx z, SurfaceKind kind, double scale = 1.0);

}  // namespace isoq
