#pragma once

#include <complex>
#include <cstdint>

namespace gaw::kernels {

using cx = std::complex<double>;

enum class Backend { Scalar, Avx2, Neon };

const char* backend_name(Backend b);

// Backend selected at startup: the widest instruction set the host supports,
// overridable with the GAW_KERNELS environment variable (scalar|avx2|neon).
Backend active_backend();

// Pins the backend explicitly (used by the equivalence tests). Throws
// ConfigError if the host cannot execute the requested variant.
void force_backend(Backend b);

// y += alpha * x
void caxpy(std::int64_t n, cx alpha, const cx* x, cx* y);

// y = A x with A column-major n-by-m
void cmatvec(std::int64_t n, std::int64_t m, const cx* a, const cx* x, cx* y);

// C = A B with A n-by-k, B k-by-m, all column-major; C must not alias A or B
void cmatmul(std::int64_t n, std::int64_t k, std::int64_t m, const cx* a, const cx* b,
             cx* c);

}  // namespace gaw::kernels
