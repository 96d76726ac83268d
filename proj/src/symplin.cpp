#include "isoq/symplin.hpp"

#include <array>
#include <cmath>

#include "isoq/error.hpp"

namespace isoq {

namespace {

const double kSqrt2 = std::sqrt(2.0);
const cplx kI(0.0, 1.0);

// Weights of e1..e4 against the cubic monomials a111, a112, a222, a122.
const std::array<double, 4>& cube_weights() {
    static const std::array<double, 4> w = {1.0, -std::sqrt(2.0 / 3.0), std::sqrt(6.0), 1.0};
    return w;
}

// Exponent of a2 in the monomial attached to e1..e4.
constexpr std::array<int, 4> kA2Power = {0, 1, 3, 2};

double max_abs(const auto& M) { return M.cwiseAbs().maxCoeff(); }

}  // namespace

Mat4C elem4(int i, int j) {
    Mat4C M = Mat4C::Zero();
    M(i - 1, j - 1) = 1.0;
    return M;
}

Mat5C elem5(int i, int j) {
    Mat5C M = Mat5C::Zero();
    M(i - 1, j - 1) = 1.0;
    return M;
}

Mat2C elem2(int i, int j) {
    Mat2C M = Mat2C::Zero();
    M(i - 1, j - 1) = 1.0;
    return M;
}

const Mat4C& J() {
    static const Mat4C j = elem4(1, 3) + elem4(2, 4) - elem4(3, 1) - elem4(4, 2);
    return j;
}

cplx omega_pair(const Vec4C& x, const Vec4C& y) { return x(0) * y(2) - x(2) * y(0) + x(1) * y(3) - x(3) * y(1); }

double symplectic_residual(const Mat4C& A) { return max_abs(A.transpose() * J() * A - J()); }

double sp_algebra_residual(const Mat4C& X) { return max_abs(X.transpose() * J() + J() * X); }

const Mat4C& lbasis(int k) {
    static const std::array<Mat4C, 5> L = [] {
        std::array<Mat4C, 5> b;
        b[0] = elem4(2, 1) - elem4(1, 2);
        b[1] = elem4(4, 1) - elem4(1, 4);
        b[2] = (elem4(3, 1) - elem4(1, 3) - elem4(4, 2) + elem4(2, 4)) / kSqrt2;
        b[3] = elem4(3, 2) - elem4(2, 3);
        b[4] = elem4(4, 3) - elem4(3, 4);
        return b;
    }();
    return L.at(static_cast<std::size_t>(k - 1));
}

Vec5C lbasis_decompose(const Mat4C& X, double tol) {
    Vec5C c;
    c(0) = X(1, 0);
    c(1) = X(3, 0);
    c(2) = (X(2, 0) + X(1, 3)) / kSqrt2;
    c(3) = X(2, 1);
    c(4) = X(3, 2);
    const double res = max_abs(X - lbasis_compose(c));
    if (res > tol * std::max(1.0, max_abs(X))) throw Error(ErrorKind::NotInSpan, "matrix is not in span(L1..L5)");
    return c;
}

Mat4C lbasis_compose(const Vec5C& c) {
    Mat4C X = Mat4C::Zero();
    for (int k = 0; k < 5; ++k) X += c(k) * lbasis(k + 1);
    return X;
}

cplx gfrak(const Mat4C& X, const Mat4C& Y) { return 0.5 * (J() * X * J() * Y).trace(); }

const Mat5C& gram() {
    static const Mat5C G = [] {
        Mat5C g = Mat5C::Zero();
        for (int k = 1; k <= 5; ++k) g(k - 1, 5 - k) = 1.0;
        return g;
    }();
    return G;
}

double gram_self_test() {
    double m = 0.0;
    for (int a = 1; a <= 5; ++a)
        for (int b = 1; b <= 5; ++b) m = std::max(m, std::abs(gfrak(lbasis(a), lbasis(b)) - gram()(a - 1, b - 1)));
    return m;
}

double gram_orthogonality_residual(const Mat5C& M) { return max_abs(M.transpose() * gram() * M - gram()); }

Mat5C spin_cover(const Mat4C& A) {
    if (symplectic_residual(A) > kGroupTol * std::max(1.0, max_abs(A) * max_abs(A)))
        throw Error(ErrorKind::NotSymplectic, "spin_cover needs a symplectic matrix");
    Mat5C M;
    for (int k = 1; k <= 5; ++k) M.col(k - 1) = lbasis_decompose(A * lbasis(k) * A.transpose(), 1e-6);
    return M;
}

Mat5C spin_pushforward(const Mat4C& a) {
    Mat5C M;
    for (int k = 1; k <= 5; ++k) {
        const Mat4C& L = lbasis(k);
        M.col(k - 1) = lbasis_decompose(a * L + L * a.transpose(), 1e-6);
    }
    return M;
}

Mat4C embed_sl2(const Mat2C& x) {
    const cplx det = x.determinant();
    if (std::abs(det - 1.0) > kGroupTol) throw Error(ErrorKind::NotUnimodular, "embed_sl2 needs det = 1");
    const auto& w = cube_weights();
    Mat4C S = Mat4C::Zero();
    for (int col = 0; col < 4; ++col) {
        // image of a1^(3-k) a2^k as a polynomial in a2 power -> coefficient
        const int k = kA2Power[static_cast<std::size_t>(col)];
        std::array<cplx, 4> poly = {1.0, 0.0, 0.0, 0.0};
        auto mul_linear = [&](cplx c1, cplx c2) {
            std::array<cplx, 4> r = {0.0, 0.0, 0.0, 0.0};
            for (int p = 0; p < 3; ++p) {
                r[static_cast<std::size_t>(p)] += poly[static_cast<std::size_t>(p)] * c1;
                r[static_cast<std::size_t>(p + 1)] += poly[static_cast<std::size_t>(p)] * c2;
            }
            poly = r;
        };
        for (int i = 0; i < 3 - k; ++i) mul_linear(x(0, 0), x(1, 0));
        for (int i = 0; i < k; ++i) mul_linear(x(0, 1), x(1, 1));
        for (int row = 0; row < 4; ++row) {
            const int kp = kA2Power[static_cast<std::size_t>(row)];
            S(row, col) = poly[static_cast<std::size_t>(kp)] * w[static_cast<std::size_t>(row)] /
                          w[static_cast<std::size_t>(col)];
        }
    }
    return S;
}

Mat4C embed_sl2_algebra(const Mat2C& y) {
    const auto& w = cube_weights();
    Mat4C S = Mat4C::Zero();
    auto row_of = [](int power) {
        for (int r = 0; r < 4; ++r)
            if (kA2Power[static_cast<std::size_t>(r)] == power) return r;
        return -1;
    };
    for (int col = 0; col < 4; ++col) {
        const int k = kA2Power[static_cast<std::size_t>(col)];
        const std::array<std::pair<int, cplx>, 3> terms = {{{k, double(3 - k) * y(0, 0) + double(k) * y(1, 1)},
                                                            {k + 1, double(3 - k) * y(1, 0)},
                                                            {k - 1, double(k) * y(0, 1)}}};
        for (const auto& [power, c] : terms) {
            const int row = row_of(power);
            if (row < 0) continue;
            S(row, col) += c * w[static_cast<std::size_t>(row)] / w[static_cast<std::size_t>(col)];
        }
    }
    return S;
}

bool h1_preimage(const Mat4C& g, Mat2C& x, double tol) {
    const auto& w = cube_weights();
    const cplx r = std::pow(g(0, 0), 1.0 / 3.0);
    double best = 1e300;
    for (int k = 0; k < 3; ++k) {
        const cplx x11 = r * std::polar(1.0, 2.0 * M_PI * k / 3.0);
        Mat2C c = Mat2C::Zero();
        c(0, 0) = x11;
        c(1, 1) = 1.0 / x11;
        // column e2 of S(x): x11^2 x12 / w2 in row 1
        c(0, 1) = g(0, 1) * w[1] / (x11 * x11);
        const double res = max_abs(embed_sl2(c) - g);
        if (res < best) {
            best = res;
            x = c;
        }
    }
    return best <= tol * std::max(1.0, max_abs(g));
}

const Mat4C& real_basis(int k) {
    static const std::array<Mat4C, 5> E = [] {
        std::array<Mat4C, 5> b;
        b[0] = (lbasis(1) + lbasis(5)) / kSqrt2;
        b[1] = kI * (lbasis(1) - lbasis(5)) / kSqrt2;
        b[2] = lbasis(3);
        b[3] = (lbasis(2) + lbasis(4)) / kSqrt2;
        b[4] = kI * (lbasis(2) - lbasis(4)) / kSqrt2;
        return b;
    }();
    return E.at(static_cast<std::size_t>(k - 1));
}

RealCoords real_coords(const Mat4C& X, double tol) {
    const Vec5C c = lbasis_decompose(X, tol);
    // invert the L -> E change of basis
    Vec5C e;
    e(0) = (c(0) + c(4)) / kSqrt2;
    e(1) = (c(0) - c(4)) / (kSqrt2 * kI);
    e(2) = c(2);
    e(3) = (c(1) + c(3)) / kSqrt2;
    e(4) = (c(1) - c(3)) / (kSqrt2 * kI);
    RealCoords out;
    out.coords = e.real();
    out.residual = e.imag().cwiseAbs().maxCoeff();
    return out;
}

Mat4C real_compose(const Vec5& x) {
    Mat4C X = Mat4C::Zero();
    for (int k = 0; k < 5; ++k) X += x(k) * real_basis(k + 1);
    return X;
}

}  // namespace isoq
