#pragma once

#include <cstddef>
#include <string>

// Vector kernels behind every inner loop (correlation scans, factorizations,
// Gibbs sweeps). A scalar reference implementation always exists; AVX2 (x86-64)
// and NEON (aarch64) variants are selected once at startup from CPU features.
// Set CPBENCH_KERNELS=scalar|avx2|neon to override; the variants are
// equivalence-tested against the scalar reference.
namespace cpbench::kernels {

enum class Backend { scalar, avx2, neon };

Backend active_backend();
bool backend_available(Backend b);
// Switch backends (tests use this to compare implementations). Throws
// cpbench::DataError if the backend is not available on this CPU.
void force_backend(Backend b);
const char* backend_name(Backend b);

// sum_i x[i]*y[i]
double dot(const double* x, const double* y, std::size_t n);
// sum_i x[i]^2
double sumsq(const double* x, std::size_t n);
// sum_i x[i]
double sum(const double* x, std::size_t n);
// y[i] += a*x[i]
void axpy(double a, const double* x, double* y, std::size_t n);
// x[i] *= a
void scale(double a, double* x, std::size_t n);

}  // namespace cpbench::kernels
