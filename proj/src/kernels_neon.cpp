// NEON kernel variants for aarch64, where Advanced SIMD is baseline. One
// float64x2_t holds a single complex double; FCMLA-free formulation keeps the
// code standard NEON.

#include <arm_neon.h>

#include "kernels_impl.hpp"

namespace gaw::kernels::detail {

namespace {

// acc += alpha * x with one complex per vector: [re, im].
//   t    = [ar*re, ar*im]
//   swap = [im, re]
//   res  = t + ai * [-im, re]  (negate even lane of swap)
inline float64x2_t cmul_acc(float64x2_t acc, float64x2_t ar, float64x2_t ai,
                            float64x2_t x) {
  const float64x2_t swap = vextq_f64(x, x, 1);
  const float64x2_t sign = {-1.0, 1.0};
  return vfmaq_f64(vfmaq_f64(acc, ar, x), ai, vmulq_f64(swap, sign));
}

void axpy_neon(std::int64_t n, cx alpha, const cx* x, cx* y) {
  const float64x2_t ar = vdupq_n_f64(alpha.real());
  const float64x2_t ai = vdupq_n_f64(alpha.imag());
  const double* xs = reinterpret_cast<const double*>(x);
  double* ys = reinterpret_cast<double*>(y);
  for (std::int64_t i = 0; i < n; ++i) {
    const float64x2_t xv = vld1q_f64(xs + 2 * i);
    const float64x2_t yv = vld1q_f64(ys + 2 * i);
    vst1q_f64(ys + 2 * i, cmul_acc(yv, ar, ai, xv));
  }
}

void matvec_neon(std::int64_t n, std::int64_t m, const cx* a, const cx* x, cx* y) {
  for (std::int64_t i = 0; i < n; ++i) y[i] = cx(0.0, 0.0);
  for (std::int64_t j = 0; j < m; ++j) axpy_neon(n, x[j], a + j * n, y);
}

void matmul_neon(std::int64_t n, std::int64_t k, std::int64_t m, const cx* a,
                 const cx* b, cx* c) {
  std::int64_t j = 0;
  for (; j + 4 <= m; j += 4) {
    cx* c0 = c + (j + 0) * n;
    cx* c1 = c + (j + 1) * n;
    cx* c2 = c + (j + 2) * n;
    cx* c3 = c + (j + 3) * n;
    for (std::int64_t i = 0; i < n; ++i) c0[i] = c1[i] = c2[i] = c3[i] = cx(0.0, 0.0);
    for (std::int64_t l = 0; l < k; ++l) {
      const double* al = reinterpret_cast<const double*>(a + l * n);
      const cx b0 = b[l + (j + 0) * k];
      const cx b1 = b[l + (j + 1) * k];
      const cx b2 = b[l + (j + 2) * k];
      const cx b3 = b[l + (j + 3) * k];
      const float64x2_t b0r = vdupq_n_f64(b0.real()), b0i = vdupq_n_f64(b0.imag());
      const float64x2_t b1r = vdupq_n_f64(b1.real()), b1i = vdupq_n_f64(b1.imag());
      const float64x2_t b2r = vdupq_n_f64(b2.real()), b2i = vdupq_n_f64(b2.imag());
      const float64x2_t b3r = vdupq_n_f64(b3.real()), b3i = vdupq_n_f64(b3.imag());
      for (std::int64_t i = 0; i < n; ++i) {
        const float64x2_t av = vld1q_f64(al + 2 * i);
        double* p0 = reinterpret_cast<double*>(c0 + i);
        double* p1 = reinterpret_cast<double*>(c1 + i);
        double* p2 = reinterpret_cast<double*>(c2 + i);
        double* p3 = reinterpret_cast<double*>(c3 + i);
        vst1q_f64(p0, cmul_acc(vld1q_f64(p0), b0r, b0i, av));
        vst1q_f64(p1, cmul_acc(vld1q_f64(p1), b1r, b1i, av));
        vst1q_f64(p2, cmul_acc(vld1q_f64(p2), b2r, b2i, av));
        vst1q_f64(p3, cmul_acc(vld1q_f64(p3), b3r, b3i, av));
      }
    }
  }
  for (; j < m; ++j) matvec_neon(n, k, a, b + j * k, c + j * n);
}

constexpr Vtable kNeon{axpy_neon, matvec_neon, matmul_neon};

}  // namespace

const Vtable& neon_vtable() { return kNeon; }

}  // namespace gaw::kernels::detail
