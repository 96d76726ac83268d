#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "isoq/descriptor.hpp"
#include "isoq/error.hpp"
#include "isoq/frames.hpp"

using namespace isoq;

namespace {

ErrorKind kind_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error thrown");
    return ErrorKind::Validation;
}

}  // namespace

TEST_SUITE("descriptor") {

TEST_CASE("descriptors round trip") {
    for (const std::string d : {R"({"type":"wcurve","m":5,"n":1})", R"({"type":"cycle"})",
                          R"({"type":"constant_bending","kappa":[2.0,0.5]})",
                          R"({"type":"bryant","g":"z","h":"z^5+z^3"})", R"({"type":"kuy","n":5})"}) {
        CAPTURE(d);
        const CurveModel a = load_descriptor(d);
        const CurveModel b = load_descriptor(descriptor_of(a));
        const cplx z(0.9, 0.3);
        const Invariants ia = invariants_at(a, z), ib = invariants_at(b, z);
        CHECK(std::abs(ia.delta - ib.delta) <= 1e-12 * std::max(1.0, std::abs(ia.delta)));
    }
    CHECK(load_descriptor("cycle").name() == load_descriptor(R"({"type":"cycle"})").name());
}

TEST_CASE("descriptor files") {
    const std::string path = (std::filesystem::temp_directory_path() / "isoq_test_curve.json").string();
    std::ofstream(path) << R"({"type":"wcurve","m":7,"n":1})" << "\n";
    const Invariants inv = invariants_at(load_descriptor(path), 1.0);
    CHECK(std::abs(inv.kappa - wcurve_kappa_formula(7, 1)) < 1e-8 * std::abs(inv.kappa));
    std::filesystem::remove(path);
}

TEST_CASE("schema errors name the offending field") {
    try {
        (void)load_descriptor(R"({"type":"reparam","h":"z","inner":{"type":"wcurve","m":"five","n":1}})");
        FAIL("expected a schema error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::SchemaError);
        CHECK(std::string(e.what()).find("/inner") != std::string::npos);
    }
    CHECK(kind_of([] { (void)load_descriptor(R"({"type":"spiral"})"); }) == ErrorKind::SchemaError);
    CHECK(kind_of([] { (void)load_descriptor("{not json"); }) == ErrorKind::SchemaError);
    CHECK(kind_of([] { (void)load_descriptor(""); }) == ErrorKind::SchemaError);
    try {
        (void)load_descriptor(R"({"type":"bryant","g":"z^^2","h":"z"})");
        FAIL("expected a schema error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::SchemaError);
        CHECK(std::string(e.what()).find("/g: SyntaxError") != std::string::npos);
    }
    CHECK(kind_of([] { (void)load_descriptor(R"({"type":"wcurve","m":2,"n":2})"); }) == ErrorKind::SchemaError);
}

TEST_CASE("warnings") {
    std::vector<std::string> w;
    (void)load_descriptor(R"({"type":"wcurve","m":3,"n":1})", &w);
    REQUIRE(w.size() == 1);
    CHECK(w[0].find("cycle") != std::string::npos);
    w.clear();
    (void)load_descriptor(R"({"type":"wcurve","m":1,"n":5})", &w);
    CHECK(w.size() == 1);
}

TEST_CASE("complex numbers") {
    CHECK(parse_complex("1.5") == cplx(1.5, 0.0));
    CHECK(parse_complex("-2i") == cplx(0.0, -2.0));
    CHECK(parse_complex("1.5-0.25i") == cplx(1.5, -0.25));
    CHECK(parse_complex("i") == cplx(0.0, 1.0));
    CHECK(parse_complex("1e-3+2e2i") == cplx(1e-3, 2e2));
    CHECK_THROWS_AS(parse_complex("1+"), Error);
    CHECK_THROWS_AS(parse_complex("abc"), Error);
    const cplx z(0.1, -1.0 / 3.0);
    CHECK(parse_complex(format_complex(z)) == z);
}

TEST_CASE("doubles print with 17 significant digits") {
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
    CHECK(format_double(2.0) == "2");
}

}
