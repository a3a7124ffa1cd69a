#include <doctest.h>

#include <cmath>
#include <vector>

#include "cpbench/kernels.hpp"
#include "cpbench/rng.hpp"

using namespace cpbench;

namespace {

std::vector<double> random_vec(std::size_t n, rng::Stream& rs) {
  std::vector<double> v(n);
  for (double& x : v) x = rs.gaussian();
  return v;
}

struct BackendGuard {
  kernels::Backend saved;
  BackendGuard() : saved(kernels::active_backend()) {}
  ~BackendGuard() { kernels::force_backend(saved); }
};

}  // namespace

TEST_CASE("simd variants match the scalar reference") {
  BackendGuard guard;
  rng::Stream rs(7, 0, 0);
  for (kernels::Backend b : {kernels::Backend::avx2, kernels::Backend::neon}) {
    if (!kernels::backend_available(b)) continue;
    CAPTURE(kernels::backend_name(b));
    for (std::size_t n : {0ul, 1ul, 3ul, 4ul, 7ul, 16ul, 17ul, 801ul, 4096ul}) {
      const std::vector<double> x = random_vec(n, rs);
      const std::vector<double> y = random_vec(n, rs);

      kernels::force_backend(kernels::Backend::scalar);
      const double dot_ref = kernels::dot(x.data(), y.data(), n);
      const double sumsq_ref = kernels::sumsq(x.data(), n);
      const double sum_ref = kernels::sum(x.data(), n);
      std::vector<double> axpy_ref = y;
      kernels::axpy(0.37, x.data(), axpy_ref.data(), n);
      std::vector<double> scale_ref = x;
      kernels::scale(-1.25, scale_ref.data(), n);

      kernels::force_backend(b);
      const double tol = 1e-12 * (1.0 + static_cast<double>(n));
      CHECK(kernels::dot(x.data(), y.data(), n) == doctest::Approx(dot_ref).epsilon(1e-12).scale(tol));
      CHECK(kernels::sumsq(x.data(), n) == doctest::Approx(sumsq_ref).epsilon(1e-12).scale(tol));
      CHECK(kernels::sum(x.data(), n) == doctest::Approx(sum_ref).epsilon(1e-12).scale(tol));
      std::vector<double> axpy_simd = y;
      kernels::axpy(0.37, x.data(), axpy_simd.data(), n);
      std::vector<double> scale_simd = x;
      kernels::scale(-1.25, scale_simd.data(), n);
      for (std::size_t i = 0; i < n; ++i) {
        CHECK(axpy_simd[i] == doctest::Approx(axpy_ref[i]).epsilon(1e-14));
        CHECK(scale_simd[i] == doctest::Approx(scale_ref[i]).epsilon(1e-15));
      }
    }
  }
}

TEST_CASE("kernel basics on known values") {
  const double x[] = {1.0, 2.0, 3.0, 4.0, 5.0};
  const double y[] = {2.0, 0.0, -1.0, 1.0, 0.5};
  CHECK(kernels::dot(x, y, 5) == doctest::Approx(5.5));
  CHECK(kernels::sumsq(x, 5) == doctest::Approx(55.0));
  CHECK(kernels::sum(x, 5) == doctest::Approx(15.0));
  double z[] = {1.0, 1.0, 1.0, 1.0, 1.0};
  kernels::axpy(2.0, x, z, 5);
  CHECK(z[0] == doctest::Approx(3.0));
  CHECK(z[4] == doctest::Approx(11.0));
  kernels::scale(0.5, z, 5);
  CHECK(z[0] == doctest::Approx(1.5));
}
