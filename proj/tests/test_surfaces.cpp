#include <doctest.h>

#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "isoq/error.hpp"
#include "isoq/sampling.hpp"
#include "isoq/surfaces.hpp"

using namespace isoq;

namespace {

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("isoq_test_" + name)).string();
}

}  // namespace

TEST_SUITE("surfaces") {

TEST_CASE("kind names") {
    for (const SurfaceKind k : {SurfaceKind::MinR3, SurfaceKind::MaxR12, SurfaceKind::Cmc1H3, SurfaceKind::Cmc1H12,
                                SurfaceKind::FlatH3, SurfaceKind::FlatH12, SurfaceKind::SuperS4}) {
        const std::optional<SurfaceKind> back = surface_kind_from_string(to_string(k));
        REQUIRE(back.has_value());
        CHECK(*back == k);
    }
    CHECK_FALSE(surface_kind_from_string("minimal").has_value());
    CHECK(ambient_dim(SurfaceKind::SuperS4) == 5);
    CHECK(ambient_dim(SurfaceKind::Cmc1H3) == 4);
    CHECK(ambient_dim(SurfaceKind::MinR3) == 3);
}

TEST_CASE("Enneper surface from the standard cycle") {
    const CurveModel c(StandardCycle{});
    const SecondOrderReport r = second_order_report(c, cplx(0.5, 0.2), SurfaceKind::MinR3);
    CHECK(r.conformal_residual < 1e-6 * r.E);
    CHECK(std::abs(r.mean_curvature) < 1e-3);
    CHECK(r.gauss_curvature < 0.0);
    CHECK(r.harmonic_residual < 1e-4);
}

TEST_CASE("constant mean curvature one in hyperbolic space") {
    const CurveModel c(StandardCycle{});
    for (const cplx z : {cplx(1.0, 0.0), cplx(0.7, 0.6)}) {
        const SecondOrderReport r = second_order_report(c, z, SurfaceKind::Cmc1H3);
        CHECK(std::abs(r.mean_curvature - 1.0) < 1e-3);
        CHECK(r.ambient_residual < 1e-10);
    }
    const SecondOrderReport w = second_order_report(make_wcurve(3, 1), cplx(0.8, 0.3), SurfaceKind::Cmc1H3);
    CHECK(std::abs(w.mean_curvature - 1.0) < 1e-3);
}

TEST_CASE("Lorentzian targets are spacelike") {
    const CurveModel c(StandardCycle{});
    const SecondOrderReport m = second_order_report(c, cplx(0.5, 0.2), SurfaceKind::MaxR12);
    CHECK(m.causal_character == "spacelike");
    CHECK(std::abs(m.mean_curvature) < 1e-3);
    const SecondOrderReport h = second_order_report(c, cplx(0.9, 0.4), SurfaceKind::Cmc1H12);
    CHECK(h.causal_character == "spacelike");
}

TEST_CASE("flat fronts") {
    const CurveModel k = kuy_example(5);
    const SecondOrderReport r = second_order_report(k, cplx(0.4, 0.3), SurfaceKind::FlatH3);
    CHECK(std::abs(r.gauss_curvature) < 1e-2);
    CHECK(r.ambient_residual < 1e-10);
    CHECK_THROWS_AS(tamed_point(k, std::polar(1.0, 2.0 * std::numbers::pi / 5.0), SurfaceKind::FlatH3), Error);
}

TEST_CASE("end detection") {
    GridSpec g;
    g.r_in = 0.5;
    g.r_out = 1.5;
    g.nu = 32;
    g.nv = 80;
    const EndReport e = detect_ends(kuy_example(5), g, SurfaceKind::FlatH3);
    REQUIRE(e.clusters() == 5);
    for (const cplx c : e.cluster_centers) CHECK(std::abs(std::pow(c, 5) - 1.0) < 0.1);
    GridSpec d;
    d.r_out = 3.0;
    CHECK(detect_ends(CurveModel(StandardCycle{}), d, SurfaceKind::MinR3).flagged.empty());
    const EndReport h = detect_ends(CurveModel(StandardCycle{}), d, SurfaceKind::Cmc1H3);
    REQUIRE(h.clusters() == 1);
    CHECK(std::abs(h.cluster_centers[0]) < 0.2);
}

TEST_CASE("sphere and hyperboloid constraints") {
    const CurveModel f = make_wcurve(5, 1);
    for (const cplx z : {cplx(0.3, 0.4), cplx(-0.8, 0.2)}) {
        const VecX s = tamed_point(f, z, SurfaceKind::SuperS4);
        CHECK(std::abs(s.norm() - 1.0) < 1e-9);
        const VecX h = tamed_point(f, z, SurfaceKind::Cmc1H3);
        CHECK(std::abs(h(0) * h(0) - h.tail(3).squaredNorm() - 1.0) < 1e-10 * h.squaredNorm());
    }
}

TEST_CASE("meshes skip flagged vertices") {
    GridSpec g;
    g.r_in = 0.5;
    g.r_out = 1.5;
    g.nu = 32;
    g.nv = 80;
    const SurfaceMesh m = build_mesh(kuy_example(5), g, SurfaceKind::FlatH3);
    CHECK(m.vertices.size() == grid_points(g).size());
    CHECK(m.flags.size() == m.vertices.size());
    int flagged = 0;
    for (const auto f : m.flags) flagged += f != kVertexOk;
    CHECK(flagged > 0);
    for (const auto& f : m.faces)
        for (const int v : f) {
            REQUIRE(v >= 0);
            REQUIRE(v < static_cast<int>(m.vertices.size()));
            CHECK(m.flags[static_cast<std::size_t>(v)] == kVertexOk);
        }
    GridSpec p;
    p.r_in = 0.5;
    p.r_out = 2.0;
    p.nu = 64;
    p.nv = 64;
    const SurfaceMesh w = build_mesh(make_wcurve(5, 1), p, SurfaceKind::MinR3);
    CHECK(w.vertices.size() == 4096);
    const SurfaceMesh s = build_mesh(make_wcurve(5, 1), g, SurfaceKind::SuperS4);
    for (std::size_t i = 0; i < s.vertices.size(); ++i)
        if (s.flags[i] == kVertexOk) CHECK(std::abs(s.vertices[i].norm() - 1.0) < 1e-9);
}

TEST_CASE("mesh files") {
    GridSpec g;
    g.nu = 6;
    g.nv = 8;
    g.r_in = 0.2;
    const SurfaceMesh m = build_mesh(CurveModel(StandardCycle{}), g, SurfaceKind::MinR3);
    const std::string obj = temp_path("mesh.obj"), ply = temp_path("mesh.ply");
    write_obj(m, obj);
    std::ifstream in(obj);
    std::string line;
    std::size_t v = 0, f = 0;
    while (std::getline(in, line)) {
        CHECK(line.find('\r') == std::string::npos);
        if (line.rfind("v ", 0) == 0) ++v;
        if (line.rfind("f ", 0) == 0) ++f;
    }
    CHECK(v == m.vertices.size());
    CHECK(f == m.faces.size());
    write_ply(m, ply);
    std::ifstream pin(ply, std::ios::binary);
    std::stringstream ss;
    ss << pin.rdbuf();
    const std::string data = ss.str();
    CHECK(data.rfind("ply\nformat binary_little_endian 1.0\n", 0) == 0);
    CHECK(data.find("property uchar flags") != std::string::npos);
    CHECK(data.find("element vertex " + std::to_string(m.vertices.size())) != std::string::npos);
    std::filesystem::remove(obj);
    std::filesystem::remove(ply);
    CHECK_THROWS_AS(write_obj(m, "/nonexistent/dir/x.obj"), Error);
}

}
