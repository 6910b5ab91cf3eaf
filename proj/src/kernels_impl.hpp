#pragma once

// Internal dispatch table shared between the generic kernels TU and the
// per-instruction-set TUs. Each variant fills one of these tables.

#include "gaw/kernels.hpp"

namespace gaw::kernels::detail {

struct Vtable {
  void (*axpy)(std::int64_t, cx, const cx*, cx*);
  void (*matvec)(std::int64_t, std::int64_t, const cx*, const cx*, cx*);
  void (*matmul)(std::int64_t, std::int64_t, std::int64_t, const cx*, const cx*, cx*);
};

#if GAW_HAVE_AVX2_TU
const Vtable& avx2_vtable();
bool avx2_supported();
#endif

#if GAW_HAVE_NEON_TU
const Vtable& neon_vtable();
#endif

}  // namespace gaw::kernels::detail
