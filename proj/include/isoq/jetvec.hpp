#pragma once

#include <array>

#include "isoq/jets.hpp"
#include "isoq/symplin.hpp"

namespace isoq {

template <std::size_t N>
using JetVec = std::array<Jet, N>;
using JetVec4 = JetVec<4>;
using JetVec5 = JetVec<5>;

template <std::size_t N>
JetVec<N> operator+(const JetVec<N>& a, const JetVec<N>& b) {
    JetVec<N> r;
    for (std::size_t i = 0; i < N; ++i) r[i] = a[i] + b[i];
    return r;
}

template <std::size_t N>
JetVec<N> operator-(const JetVec<N>& a, const JetVec<N>& b) {
    JetVec<N> r;
    for (std::size_t i = 0; i < N; ++i) r[i] = a[i] - b[i];
    return r;
}

template <std::size_t N>
JetVec<N> operator*(const Jet& s, const JetVec<N>& a) {
    JetVec<N> r;
    for (std::size_t i = 0; i < N; ++i) r[i] = s * a[i];
    return r;
}

template <std::size_t N>
JetVec<N> operator*(cplx s, const JetVec<N>& a) {
    JetVec<N> r;
    for (std::size_t i = 0; i < N; ++i) r[i] = a[i] * s;
    return r;
}

template <std::size_t N>
JetVec<N> derive(const JetVec<N>& a, int k = 1) {
    JetVec<N> r;
    for (std::size_t i = 0; i < N; ++i) r[i] = derive(a[i], k);
    return r;
}

template <std::size_t N>
JetVec<N> truncated(const JetVec<N>& a, int order) {
    JetVec<N> r;
    for (std::size_t i = 0; i < N; ++i) r[i] = a[i].truncated(order);
    return r;
}

template <std::size_t N>
int min_order(const JetVec<N>& a) {
    int o = a[0].order();
    for (std::size_t i = 1; i < N; ++i) o = std::min(o, a[i].order());
    return o;
}

template <std::size_t N>
double max_abs(const JetVec<N>& a) {
    double m = 0.0;
    for (std::size_t i = 0; i < N; ++i) m = std::max(m, a[i].max_abs());
    return m;
}

inline Jet omega_pair(const JetVec4& x, const JetVec4& y) {
    return x[0] * y[2] - x[2] * y[0] + x[1] * y[3] - x[3] * y[1];
}

// Constant matrix times jet vector.
template <typename M, std::size_t N>
JetVec<N> apply(const M& mat, const JetVec<N>& v) {
    JetVec<N> r;
    for (std::size_t i = 0; i < N; ++i) {
        r[i] = v[0] * mat(Eigen::Index(i), 0);
        for (std::size_t j = 1; j < N; ++j) r[i] += v[j] * mat(Eigen::Index(i), Eigen::Index(j));
    }
    return r;
}

template <std::size_t N>
Eigen::Matrix<cplx, int(N), 1> value(const JetVec<N>& v) {
    Eigen::Matrix<cplx, int(N), 1> r;
    for (std::size_t i = 0; i < N; ++i) r(Eigen::Index(i)) = v[i].value();
    return r;
}

// Taylor coefficient k of each component.
template <std::size_t N>
Eigen::Matrix<cplx, int(N), 1> coeff(const JetVec<N>& v, int k) {
    Eigen::Matrix<cplx, int(N), 1> r;
    for (std::size_t i = 0; i < N; ++i) r(Eigen::Index(i)) = v[i][k];
    return r;
}

template <std::size_t N>
JetVec<N> constant_vec(cplx base, int order, const Eigen::Matrix<cplx, int(N), 1>& x) {
    JetVec<N> r;
    for (std::size_t i = 0; i < N; ++i) r[i] = Jet::constant(base, order, x(Eigen::Index(i)));
    return r;
}

}  // namespace isoq
