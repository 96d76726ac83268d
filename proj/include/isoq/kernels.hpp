#pragma once

#include <complex>
#include <string>

namespace isoq::kernels {

using cplx = std::complex<double>;

// out[k] = sum_{j<=k} a[j] b[k-j] for k < n; a and b hold at least n entries.
using CauchyFn = void (*)(const cplx* a, const cplx* b, cplx* out, int n);

void cauchy_scalar(const cplx* a, const cplx* b, cplx* out, int n);
void cauchy_avx2(const cplx* a, const cplx* b, cplx* out, int n);

bool avx2_available();

// Selected once at first use; ISOQ_KERNEL=scalar forces the reference kernel.
CauchyFn cauchy();
std::string cauchy_name();

}  // namespace isoq::kernels
