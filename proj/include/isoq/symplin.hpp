#pragma once

#include <Eigen/Dense>
#include <complex>

namespace isoq {

using cplx = std::complex<double>;
using Mat2C = Eigen::Matrix<cplx, 2, 2>;
using Mat4C = Eigen::Matrix<cplx, 4, 4>;
using Mat5C = Eigen::Matrix<cplx, 5, 5>;
using Vec4C = Eigen::Matrix<cplx, 4, 1>;
using Vec5C = Eigen::Matrix<cplx, 5, 1>;
using Vec5 = Eigen::Matrix<double, 5, 1>;

inline constexpr double kGroupTol = 1e-9;

// Elementary matrix with a 1 in row i, column j (1-based).
Mat4C elem4(int i, int j);
Mat5C elem5(int i, int j);
Mat2C elem2(int i, int j);

const Mat4C& J();
cplx omega_pair(const Vec4C& x, const Vec4C& y);
double symplectic_residual(const Mat4C& A);
// Residual of X^T J + J X for a Lie algebra element.
double sp_algebra_residual(const Mat4C& X);

// L_1..L_5, k is 1-based.
const Mat4C& lbasis(int k);
Vec5C lbasis_decompose(const Mat4C& X, double tol = kGroupTol);
Mat4C lbasis_compose(const Vec5C& c);

cplx gfrak(const Mat4C& X, const Mat4C& Y);
// Antidiagonal Gram matrix of L_1..L_5.
const Mat5C& gram();
// Max deviation between gram() and gfrak evaluated on the basis.
double gram_self_test();
double gram_orthogonality_residual(const Mat5C& M);

Mat5C spin_cover(const Mat4C& A);
// Differential of the spin cover: X -> aX + Xa^T on the L-basis, for a in sp(2,C).
Mat5C spin_pushforward(const Mat4C& a);

Mat4C embed_sl2(const Mat2C& x);
// Lie algebra version of embed_sl2.
Mat4C embed_sl2_algebra(const Mat2C& y);
// Finds x upper triangular with embed_sl2(x) = g when g lies in the image of the Borel subgroup.
bool h1_preimage(const Mat4C& g, Mat2C& x, double tol = 1e-8);

// E_1..E_5, k is 1-based.
const Mat4C& real_basis(int k);

struct RealCoords {
    Vec5 coords;
    double residual = 0.0;  // distance from the real span
};
RealCoords real_coords(const Mat4C& X, double tol = kGroupTol);
Mat4C real_compose(const Vec5& x);

}  // namespace isoq
