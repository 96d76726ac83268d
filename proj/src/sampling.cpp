#include "isoq/sampling.hpp"

#include <cstdio>
#include <numbers>

namespace isoq {

cplx random_complex(Rng& rng, double scale) {
    std::normal_distribution<double> n(0.0, scale);
    return {n(rng), n(rng)};
}

std::vector<cplx> annulus_points(Rng& rng, int count, double r_in, double r_out, cplx center) {
    std::uniform_real_distribution<double> r(r_in, r_out), t(0.0, 2.0 * std::numbers::pi);
    std::vector<cplx> out;
    for (int k = 0; k < count; ++k) out.push_back(center + std::polar(r(rng), t(rng)));
    return out;
}

std::vector<cplx> disk_points(Rng& rng, int count, double radius, cplx center) {
    std::uniform_real_distribution<double> u(0.0, 1.0), t(0.0, 2.0 * std::numbers::pi);
    std::vector<cplx> out;
    for (int k = 0; k < count; ++k) out.push_back(center + std::polar(radius * std::sqrt(u(rng)), t(rng)));
    return out;
}

Mat4C matrix_exp(const Mat4C& X) {
    // scaling and squaring with a Taylor core
    int s = 0;
    double n = X.cwiseAbs().rowwise().sum().maxCoeff();
    while (n > 0.5) n /= 2, ++s;
    const Mat4C Y = X / std::pow(2.0, s);
    Mat4C term = Mat4C::Identity(), sum = Mat4C::Identity();
    for (int k = 1; k < 20; ++k) {
        term = term * Y / static_cast<double>(k);
        sum += term;
    }
    for (int k = 0; k < s; ++k) sum = sum * sum;
    return sum;
}

Mat4C random_symplectic(Rng& rng, double scale) {
    Mat4C S;
    for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j) S(i, j) = S(j, i) = random_complex(rng, scale);
    // J Y symmetric  <=>  Y in sp(2,C)
    return matrix_exp(-J() * S);
}

Mat4C random_compact_sp2(Rng& rng, double scale) {
    Mat2C a, b;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) a(i, j) = random_complex(rng, scale), b(i, j) = random_complex(rng, scale);
    a = (a - a.adjoint()).eval();
    b = (b + b.transpose()).eval();
    Mat4C X;
    X << a, b, -b.conjugate(), a.conjugate();
    return matrix_exp(X);
}

Mat2C random_sl2(Rng& rng, double scale) {
    Mat2C x;
    x << 1.0 + random_complex(rng, scale), random_complex(rng, scale), random_complex(rng, scale), 1.0 + random_complex(rng, scale);
    return x / std::sqrt(x.determinant());
}

Mobius random_mobius(Rng& rng, double scale) {
    const Mat2C x = random_sl2(rng, scale);
    return {x(0, 0), x(0, 1), x(1, 0), x(1, 1)};
}

std::string complex_literal(cplx z) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "(%.17g+(%.17g)*i)", z.real(), z.imag());
    return buf;
}

Expr mobius_expr(const Mobius& m) {
    return parse_expr("(" + complex_literal(m.a) + "*z+" + complex_literal(m.b) + ")/(" + complex_literal(m.c) + "*z+" +
                      complex_literal(m.d) + ")");
}

}  // namespace isoq
