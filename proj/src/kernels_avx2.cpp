// AVX2/FMA kernel variants. This TU is the only one compiled with
// -mavx2 -mfma; callers reach it through the runtime dispatch table.

#include <immintrin.h>

#include "kernels_impl.hpp"

namespace gaw::kernels::detail {

namespace {

// One __m256d holds two complex doubles as [re0, im0, re1, im1].
// y += alpha * x for two lanes: with ar/ai broadcast,
//   swapped = [im0, re0, im1, re1]
//   fmaddsub(ar, x, ai*swapped) = [ar*re - ai*im, ar*im + ai*re, ...]
inline __m256d cmul_acc(__m256d acc, __m256d ar, __m256d ai, __m256d x) {
  const __m256d swapped = _mm256_permute_pd(x, 0b0101);
  return _mm256_add_pd(acc, _mm256_fmaddsub_pd(ar, x, _mm256_mul_pd(ai, swapped)));
}

void axpy_avx2(std::int64_t n, cx alpha, const cx* x, cx* y) {
  const __m256d ar = _mm256_set1_pd(alpha.real());
  const __m256d ai = _mm256_set1_pd(alpha.imag());
  const double* xs = reinterpret_cast<const double*>(x);
  double* ys = reinterpret_cast<double*>(y);
  std::int64_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xs + 2 * i);
    const __m256d yv = _mm256_loadu_pd(ys + 2 * i);
    _mm256_storeu_pd(ys + 2 * i, cmul_acc(yv, ar, ai, xv));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void matvec_avx2(std::int64_t n, std::int64_t m, const cx* a, const cx* x, cx* y) {
  for (std::int64_t i = 0; i < n; ++i) y[i] = cx(0.0, 0.0);
  for (std::int64_t j = 0; j < m; ++j) axpy_avx2(n, x[j], a + j * n, y);
}

void matmul_avx2(std::int64_t n, std::int64_t k, std::int64_t m, const cx* a,
                 const cx* b, cx* c) {
  std::int64_t j = 0;
  for (; j + 4 <= m; j += 4) {
    double* c0 = reinterpret_cast<double*>(c + (j + 0) * n);
    double* c1 = reinterpret_cast<double*>(c + (j + 1) * n);
    double* c2 = reinterpret_cast<double*>(c + (j + 2) * n);
    double* c3 = reinterpret_cast<double*>(c + (j + 3) * n);
    for (std::int64_t i = 0; i < 2 * n; ++i) c0[i] = c1[i] = c2[i] = c3[i] = 0.0;
    for (std::int64_t l = 0; l < k; ++l) {
      const double* al = reinterpret_cast<const double*>(a + l * n);
      const cx b0 = b[l + (j + 0) * k];
      const cx b1 = b[l + (j + 1) * k];
      const cx b2 = b[l + (j + 2) * k];
      const cx b3 = b[l + (j + 3) * k];
      const __m256d b0r = _mm256_set1_pd(b0.real()), b0i = _mm256_set1_pd(b0.imag());
      const __m256d b1r = _mm256_set1_pd(b1.real()), b1i = _mm256_set1_pd(b1.imag());
      const __m256d b2r = _mm256_set1_pd(b2.real()), b2i = _mm256_set1_pd(b2.imag());
      const __m256d b3r = _mm256_set1_pd(b3.real()), b3i = _mm256_set1_pd(b3.imag());
      std::int64_t i = 0;
      for (; i + 2 <= n; i += 2) {
        const __m256d av = _mm256_loadu_pd(al + 2 * i);
        _mm256_storeu_pd(c0 + 2 * i, cmul_acc(_mm256_loadu_pd(c0 + 2 * i), b0r, b0i, av));
        _mm256_storeu_pd(c1 + 2 * i, cmul_acc(_mm256_loadu_pd(c1 + 2 * i), b1r, b1i, av));
        _mm256_storeu_pd(c2 + 2 * i, cmul_acc(_mm256_loadu_pd(c2 + 2 * i), b2r, b2i, av));
        _mm256_storeu_pd(c3 + 2 * i, cmul_acc(_mm256_loadu_pd(c3 + 2 * i), b3r, b3i, av));
      }
      for (; i < n; ++i) {
        const cx av = (a + l * n)[i];
        (c + (j + 0) * n)[i] += av * b0;
        (c + (j + 1) * n)[i] += av * b1;
        (c + (j + 2) * n)[i] += av * b2;
        (c + (j + 3) * n)[i] += av * b3;
      }
    }
  }
  for (; j < m; ++j) matvec_avx2(n, k, a, b + j * k, c + j * n);
}

constexpr Vtable kAvx2{axpy_avx2, matvec_avx2, matmul_avx2};

}  // namespace

const Vtable& avx2_vtable() { return kAvx2; }

bool avx2_supported() {
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

}  // namespace gaw::kernels::detail
