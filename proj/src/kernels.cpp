#include "gaw/kernels.hpp"

#include <cstdlib>
#include <cstring>

#include "gaw/geometry.hpp"  // ConfigError
#include "kernels_impl.hpp"

namespace gaw::kernels {

namespace {

void axpy_scalar(std::int64_t n, cx alpha, const cx* x, cx* y) {
  for (std::int64_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void matvec_scalar(std::int64_t n, std::int64_t m, const cx* a, const cx* x, cx* y) {
  for (std::int64_t i = 0; i < n; ++i) y[i] = cx(0.0, 0.0);
  for (std::int64_t j = 0; j < m; ++j) axpy_scalar(n, x[j], a + j * n, y);
}

// Column-blocked so each column of A streams through once per four output
// columns instead of once per output column.
void matmul_scalar(std::int64_t n, std::int64_t k, std::int64_t m, const cx* a,
                   const cx* b, cx* c) {
  std::int64_t j = 0;
  for (; j + 4 <= m; j += 4) {
    cx* c0 = c + j * n;
    cx* c1 = c0 + n;
    cx* c2 = c1 + n;
    cx* c3 = c2 + n;
    for (std::int64_t i = 0; i < n; ++i) c0[i] = c1[i] = c2[i] = c3[i] = cx(0.0, 0.0);
    for (std::int64_t l = 0; l < k; ++l) {
      const cx* al = a + l * n;
      const cx b0 = b[l + (j + 0) * k];
      const cx b1 = b[l + (j + 1) * k];
      const cx b2 = b[l + (j + 2) * k];
      const cx b3 = b[l + (j + 3) * k];
      for (std::int64_t i = 0; i < n; ++i) {
        const cx ai = al[i];
        c0[i] += ai * b0;
        c1[i] += ai * b1;
        c2[i] += ai * b2;
        c3[i] += ai * b3;
      }
    }
  }
  for (; j < m; ++j) matvec_scalar(n, k, a, b + j * k, c + j * n);
}

constexpr detail::Vtable kScalar{axpy_scalar, matvec_scalar, matmul_scalar};

struct Dispatch {
  const detail::Vtable* table = &kScalar;
  Backend backend = Backend::Scalar;

  Dispatch() {
    const char* req = std::getenv("GAW_KERNELS");
#if GAW_HAVE_AVX2_TU
    if (detail::avx2_supported() && (!req || std::strcmp(req, "avx2") == 0)) {
      table = &detail::avx2_vtable();
      backend = Backend::Avx2;
      return;
    }
#endif
#if GAW_HAVE_NEON_TU
    if (!req || std::strcmp(req, "neon") == 0) {
      table = &detail::neon_vtable();
      backend = Backend::Neon;
      return;
    }
#endif
    (void)req;
  }
};

Dispatch& dispatch() {
  static Dispatch d;
  return d;
}

}  // namespace

const char* backend_name(Backend b) {
  switch (b) {
    case Backend::Scalar: return "scalar";
    case Backend::Avx2: return "avx2";
    case Backend::Neon: return "neon";
  }
  return "scalar";
}

Backend active_backend() { return dispatch().backend; }

void force_backend(Backend b) {
  switch (b) {
    case Backend::Scalar:
      dispatch().table = &kScalar;
      dispatch().backend = b;
      return;
    case Backend::Avx2:
#if GAW_HAVE_AVX2_TU
      if (detail::avx2_supported()) {
        dispatch().table = &detail::avx2_vtable();
        dispatch().backend = b;
        return;
      }
#endif
      throw ConfigError("kernels: avx2 backend not available on this host");
    case Backend::Neon:
#if GAW_HAVE_NEON_TU
      dispatch().table = &detail::neon_vtable();
      dispatch().backend = b;
      return;
#else
      throw ConfigError("kernels: neon backend not available on this host");
#endif
  }
}

void caxpy(std::int64_t n, cx alpha, const cx* x, cx* y) {
  dispatch().table->axpy(n, alpha, x, y);
}

void cmatvec(std::int64_t n, std::int64_t m, const cx* a, const cx* x, cx* y) {
  dispatch().table->matvec(n, m, a, x, y);
}

void cmatmul(std::int64_t n, std::int64_t k, std::int64_t m, const cx* a, const cx* b,
             cx* c) {
  dispatch().table->matmul(n, k, m, a, b, c);
}

}  // namespace gaw::kernels
