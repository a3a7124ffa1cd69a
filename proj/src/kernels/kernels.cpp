#include "cpbench/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

#include "cpbench/errors.hpp"

namespace cpbench::kernels {

namespace scalar {

double dot(const double* x, const double* y, std::size_t n) {
  double s0 = 0.0, s1 = 0.0;
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    s0 += x[i] * y[i];
    s1 += x[i + 1] * y[i + 1];
  }
  if (i < n) s0 += x[i] * y[i];
  return s0 + s1;
}

double sumsq(const double* x, std::size_t n) { return dot(x, x, n); }

double sum(const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i];
  return s;
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void scale(double a, double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
double dot(const double* x, const double* y, std::size_t n);
double sumsq(const double* x, std::size_t n);
double sum(const double* x, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
void scale(double a, double* x, std::size_t n);
}  // namespace avx2
#endif

#if defined(__aarch64__)
namespace neon {
double dot(const double* x, const double* y, std::size_t n);
double sumsq(const double* x, std::size_t n);
double sum(const double* x, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
void scale(double a, double* x, std::size_t n);
}  // namespace neon
#endif

namespace {

struct Vtable {
  double (*dot)(const double*, const double*, std::size_t);
  double (*sumsq)(const double*, std::size_t);
  double (*sum)(const double*, std::size_t);
  void (*axpy)(double, const double*, double*, std::size_t);
  void (*scale)(double, double*, std::size_t);
};

constexpr Vtable kScalarTable{scalar::dot, scalar::sumsq, scalar::sum,
                              scalar::axpy, scalar::scale};

bool avx2_supported() {
#if defined(__x86_64__) || defined(_M_X64)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

bool neon_supported() {
#if defined(__aarch64__)
  return true;  // NEON is baseline on aarch64
#else
  return false;
#endif
}

Vtable table_for(Backend b) {
  switch (b) {
    case Backend::scalar:
      return kScalarTable;
#if defined(__x86_64__) || defined(_M_X64)
    case Backend::avx2:
      return Vtable{avx2::dot, avx2::sumsq, avx2::sum, avx2::axpy, avx2::scale};
#endif
#if defined(__aarch64__)
    case Backend::neon:
      return Vtable{neon::dot, neon::sumsq, neon::sum, neon::axpy, neon::scale};
#endif
    default:
      return kScalarTable;
  }
}

Backend detect_backend() {
  if (const char* env = std::getenv("CPBENCH_KERNELS")) {
    if (std::strcmp(env, "scalar") == 0) return Backend::scalar;
    if (std::strcmp(env, "avx2") == 0 && avx2_supported()) return Backend::avx2;
    if (std::strcmp(env, "neon") == 0 && neon_supported()) return Backend::neon;
    // unknown or unavailable name: fall through to autodetect
  }
  if (avx2_supported()) return Backend::avx2;
  if (neon_supported()) return Backend::neon;
  return Backend::scalar;
}

struct Dispatch {
  Backend backend;
  Vtable table;
  Dispatch() : backend(detect_backend()), table(table_for(backend)) {}
};

Dispatch& dispatch() {
  static Dispatch d;
  return d;
}

}  // namespace

Backend active_backend() { return dispatch().backend; }

bool backend_available(Backend b) {
  switch (b) {
    case Backend::scalar:
      return true;
    case Backend::avx2:
      return avx2_supported();
    case Backend::neon:
      return neon_supported();
  }
  return false;
}

void force_backend(Backend b) {
  if (!backend_available(b))
    throw DataError(std::string("kernel backend not available: ") + backend_name(b));
  dispatch().backend = b;
  dispatch().table = table_for(b);
}

const char* backend_name(Backend b) {
  switch (b) {
    case Backend::scalar:
      return "scalar";
    case Backend::avx2:
      return "avx2";
    case Backend::neon:
      return "neon";
  }
  return "?";
}

double dot(const double* x, const double* y, std::size_t n) {
  return dispatch().table.dot(x, y, n);
}
double sumsq(const double* x, std::size_t n) { return dispatch().table.sumsq(x, n); }
double sum(const double* x, std::size_t n) { return dispatch().table.sum(x, n); }
void axpy(double a, const double* x, double* y, std::size_t n) {
  dispatch().table.axpy(a, x, y, n);
}
void scale(double a, double* x, std::size_t n) { dispatch().table.scale(a, x, n); }

}  // namespace cpbench::kernels
