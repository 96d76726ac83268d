#pragma once

#include <random>
#include <string>
#include <vector>

#include "isoq/expr.hpp"
#include "isoq/symplin.hpp"

namespace isoq {

using Rng = std::mt19937_64;

cplx random_complex(Rng& rng, double scale = 1.0);
// Uniform in angle and radius on r_in < |z| < r_out.
std::vector<cplx> annulus_points(Rng& rng, int count, double r_in, double r_out, cplx center = 0.0);
std::vector<cplx> disk_points(Rng& rng, int count, double radius, cplx center = 0.0);

Mat4C matrix_exp(const Mat4C& X);
// exp of a random element of sp(2,C) with entries of size ~scale.
Mat4C random_symplectic(Rng& rng, double scale = 0.5);
// exp of a random element of the compact form sp(2).
Mat4C random_compact_sp2(Rng& rng, double scale = 0.5);
Mat2C random_sl2(Rng& rng, double scale = 0.5);

struct Mobius {
    cplx a, b, c, d;  // ad - bc = 1
    cplx operator()(cplx z) const { return (a * z + b) / (c * z + d); }
    cplx derivative(cplx z) const { return 1.0 / ((c * z + d) * (c * z + d)); }
    cplx inverse(cplx w) const { return (d * w - b) / (-c * w + a); }
};
Mobius random_mobius(Rng& rng, double scale = 0.3);
std::string complex_literal(cplx z);
Expr mobius_expr(const Mobius& m);

}  // namespace isoq
