#include "isoq/kernels.hpp"

#include <cstdlib>
#include <cstring>

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>
#define ISOQ_X86 1
#else
#define ISOQ_X86 0
#endif

namespace isoq::kernels {

void cauchy_scalar(const cplx* a, const cplx* b, cplx* out, int n) {
    for (int k = 0; k < n; ++k) {
        double re = 0.0, im = 0.0;
        for (int j = 0; j <= k; ++j) {
            const cplx x = a[j];
            const cplx y = b[k - j];
            re += x.real() * y.real() - x.imag() * y.imag();
            im += x.real() * y.imag() + x.imag() * y.real();
        }
        out[k] = cplx(re, im);
    }
}

#if ISOQ_X86
__attribute__((target("avx2,fma"))) void cauchy_avx2(const cplx* a, const cplx* b, cplx* out, int n) {
    const double* pa = reinterpret_cast<const double*>(a);
    const double* pb = reinterpret_cast<const double*>(b);
    for (int k = 0; k < n; ++k) {
        // lanes: (re, im) products for two j at a time
        __m256d acc_rr = _mm256_setzero_pd();
        __m256d acc_x = _mm256_setzero_pd();
        int j = 0;
        for (; j + 1 <= k; j += 2) {
            __m256d va = _mm256_loadu_pd(pa + 2 * j);            // a[j], a[j+1]
            __m256d vb = _mm256_loadu_pd(pb + 2 * (k - j - 1));  // b[k-j-1], b[k-j]
            vb = _mm256_permute2f128_pd(vb, vb, 0x01);           // b[k-j], b[k-j-1]
            __m256d bre = _mm256_movedup_pd(vb);
            __m256d bim = _mm256_permute_pd(vb, 0xF);
            acc_rr = _mm256_fmadd_pd(va, bre, acc_rr);  // (ar*br, ai*br)
            acc_x = _mm256_fmadd_pd(va, bim, acc_x);    // (ar*bi, ai*bi)
        }
        alignas(32) double r[4], x[4];
        _mm256_store_pd(r, acc_rr);
        _mm256_store_pd(x, acc_x);
        double re = (r[0] + r[2]) - (x[1] + x[3]);
        double im = (r[1] + r[3]) + (x[0] + x[2]);
        for (; j <= k; ++j) {
            const cplx p = a[j] * b[k - j];
            re += p.real();
            im += p.imag();
        }
        out[k] = cplx(re, im);
    }
}

bool avx2_available() {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}
#else
void cauchy_avx2(const cplx* a, const cplx* b, cplx* out, int n) { cauchy_scalar(a, b, out, n); }
bool avx2_available() { return false; }
#endif

namespace {

CauchyFn select() {
    const char* env = std::getenv("ISOQ_KERNEL");
    if (env && std::strcmp(env, "scalar") == 0) return cauchy_scalar;
    return avx2_available() ? cauchy_avx2 : cauchy_scalar;
}

}  // namespace

CauchyFn cauchy() {
    static const CauchyFn fn = select();
    return fn;
}

std::string cauchy_name() { return cauchy() == cauchy_avx2 ? "avx2" : "scalar"; }

}  // namespace isoq::kernels
