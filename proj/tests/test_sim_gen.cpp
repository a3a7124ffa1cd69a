#include <doctest.h>

#include <cmath>
#include <map>
#include <vector>

#include "cpbench/errors.hpp"
#include "cpbench/kernels.hpp"
#include "cpbench/sim_gen.hpp"
#include "oracles.hpp"

using namespace cpbench;

TEST_CASE("cluster beta: values, count and placement") {
  SimScenario sc;
  const std::vector<double> beta = build_cluster_beta(sc);
  int nonzero = 0;
  for (double b : beta) nonzero += (b != 0.0);
  CHECK(nonzero == 105);
  CHECK(sc.nonzero_count() == 105);
  CHECK(sc.cluster_count() == 15);
  // center of the first cluster: 1-based 25 -> index 24, value 4^1.25
  CHECK(beta[24] == doctest::Approx(5.65685424949238).epsilon(1e-12));
  // offset +-3: value 1
  CHECK(beta[21] == doctest::Approx(1.0));
  CHECK(beta[27] == doctest::Approx(1.0));
  CHECK(beta[20] == 0.0);
  CHECK(beta[28] == 0.0);
  // symmetric form peaks at the center
  CHECK(beta[23] == doctest::Approx(std::pow(3.0, 1.25)));
  CHECK(beta[25] == doctest::Approx(std::pow(3.0, 1.25)));
}

TEST_CASE("cluster beta: literal asymmetric form differs") {
  SimScenario sc;
  sc.literal_offset_form = true;
  const std::vector<double> beta = build_cluster_beta(sc);
  // |h - j| at j = -3 is 7
  CHECK(beta[21] == doctest::Approx(std::pow(7.0, 1.25)));
  CHECK(beta[27] == doctest::Approx(1.0));
}

TEST_CASE("banded quadratic form equals the dense oracle") {
  SimScenario sc;
  const std::vector<double> beta = build_cluster_beta(sc);
  for (double rho : {0.0, 0.5, 0.9}) {
    const double banded = quadratic_form_banded(beta, rho);
    const double dense = oracle::dense_quadratic_form(beta, rho);
    CHECK(banded == doctest::Approx(dense).epsilon(1e-9));
  }
  // frozen dense-oracle values
  CHECK(quadratic_form_banded(beta, 0.0) ==
        doctest::Approx(1147.35934552837).epsilon(1e-10));
  CHECK(quadratic_form_banded(beta, 0.9) ==
        doctest::Approx(6149.08815299369).epsilon(1e-9));
}

TEST_CASE("calibration: constants and the exact R2 identity") {
  SimScenario sc;
  const std::vector<double> base = build_cluster_beta(sc);
  const GroundTruth gt0 = calibrate_beta(base, 0.0, 0.75, 1.0);
  CHECK(gt0.calibration_constant ==
        doctest::Approx(0.0511341332281262).epsilon(1e-10));
  // post-calibration signal is exactly r2/(1-r2)*sigma2 = 3
  CHECK(gt0.theoretical_signal == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(static_cast<int>(gt0.nonzero_set.size()) == 105);

  const GroundTruth gt9 = calibrate_beta(base, 0.9, 0.75, 1.0);
  CHECK(gt9.calibration_constant ==
        doctest::Approx(0.0220879427410732).epsilon(1e-10));
  CHECK(gt9.calibration_constant < gt0.calibration_constant);

  const std::vector<double> zeros(10, 0.0);
  CHECK_THROWS_AS(calibrate_beta(zeros, 0.0, 0.75, 1.0), DataError);
}

TEST_CASE("ar1 covariates: sample correlations match the target") {
  const int n = 10000, m = 6;
  auto sample_corr = [&](const Mat& x, int a, int b) {
    double saa = 0, sbb = 0, sab = 0, sa = 0, sb = 0;
    for (int i = 0; i < n; ++i) {
      const double u = x(i, a), v = x(i, b);
      sa += u;
      sb += v;
      saa += u * u;
      sbb += v * v;
      sab += u * v;
    }
    const double ca = saa - sa * sa / n, cb = sbb - sb * sb / n,
                 cab = sab - sa * sb / n;
    return cab / std::sqrt(ca * cb);
  };

  {
    rng::Stream rs = rng::make_stream(31, rng::Domain::covariates, 0);
    const Mat x = gen_ar1_covariates(n, m, 0.0, rs);
    for (int a = 0; a < m; ++a)
      for (int b = a + 1; b < m; ++b) CHECK(std::abs(sample_corr(x, a, b)) < 0.05);
  }
  {
    rng::Stream rs = rng::make_stream(32, rng::Domain::covariates, 0);
    const Mat x = gen_ar1_covariates(n, m, 0.9, rs);
    for (int a = 0; a + 1 < m; ++a)
      CHECK(sample_corr(x, a, a + 1) == doctest::Approx(0.9).epsilon(0.03));
    for (int a = 0; a + 2 < m; ++a)
      CHECK(sample_corr(x, a, a + 2) == doctest::Approx(0.81).epsilon(0.04));
  }
  rng::Stream rs(0, 0, 0);
  CHECK_THROWS_AS(gen_ar1_covariates(10, 2, -0.1, rs), DataError);
  CHECK_THROWS_AS(gen_ar1_covariates(10, 2, 1.0, rs), DataError);
}

TEST_CASE("simulate_dataset: determinism, ground-truth wiring, noiseless case") {
  SimScenario sc;
  sc.n = 60;
  sc.m = 100;
  sc.cluster_spacing = 25;
  sc.seed = 77;
  const Dataset a = simulate_dataset(sc, 3);
  const Dataset b = simulate_dataset(sc, 3);
  CHECK(a.X.data == b.X.data);
  CHECK(a.y == b.y);
  const Dataset c = simulate_dataset(sc, 4);
  CHECK(a.y != c.y);

  a.validate();  // mu_true == X beta_true within tolerance

  SimScenario noiseless = sc;
  noiseless.noise_sigma2 = 0.0;
  const Dataset d0 = simulate_dataset(noiseless, 0);
  for (std::size_t i = 0; i < d0.y.size(); ++i) CHECK(d0.y[i] == d0.mu_true[i]);
  // calibration falls back to sigma2=1, so the signal is unchanged
  const Dataset d1 = simulate_dataset(sc, 0);
  for (std::size_t j = 0; j < d0.beta_true.size(); ++j)
    CHECK(d0.beta_true[j] == d1.beta_true[j]);
}

TEST_CASE("empirical R2 sits at the calibrated target") {
  for (double rho : {0.0, 0.9}) {
    SimScenario sc;
    sc.rho = rho;
    sc.seed = 5;
    const double r2 = empirical_r2(sc, 100000, 0);
    CHECK(r2 > 0.74);
    CHECK(r2 < 0.76);
  }
}

TEST_CASE("random orthogonal design: exact orthonormality and truth") {
  rng::Stream rs = rng::make_stream(41, rng::Domain::ortho_design, 0);
  const std::vector<double> mags = {3.0, 2.0, 1.5};
  const Dataset d = gen_random_orthogonal(12, 5, 3, mags, rs);
  for (std::size_t a = 0; a < 5; ++a)
    for (std::size_t b = 0; b < 5; ++b)
      CHECK(kernels::dot(d.X.col(a), d.X.col(b), 12) == (a == b ? 1.0 : 0.0));
  for (int j = 0; j < 3; ++j)
    CHECK(std::abs(d.beta_true[static_cast<std::size_t>(j)]) ==
          doctest::Approx(mags[static_cast<std::size_t>(j)]));
  CHECK(d.beta_true[3] == 0.0);
  CHECK(d.beta_true[4] == 0.0);
  d.validate();

  rng::Stream rs2 = rng::make_stream(41, rng::Domain::ortho_design, 1);
  const Dataset null_d = gen_random_orthogonal(8, 4, 0, {}, rs2);
  for (double v : null_d.mu_true) CHECK(v == 0.0);

  rng::Stream rs3 = rng::make_stream(41, rng::Domain::ortho_design, 2);
  CHECK_THROWS_AS(gen_random_orthogonal(3, 5, 0, {}, rs3), DataError);
}

TEST_CASE("random orthogonal design: column subset is uniform") {
  // n=6, m=2: 15 unordered pairs; chi-square GOF over 6000 draws,
  // df=14, 0.001 critical value 36.12
  const int n = 6, reps = 6000;
  std::map<std::pair<int, int>, int> counts;
  for (int r = 0; r < reps; ++r) {
    rng::Stream rs = rng::make_stream(99, rng::Domain::ortho_design,
                                      static_cast<std::uint64_t>(r));
    const Dataset d = gen_random_orthogonal(n, 2, 0, {}, rs);
    std::pair<int, int> key{-1, -1};
    for (int i = 0; i < n; ++i) {
      if (d.X(i, 0) == 1.0) key.first = i;
      if (d.X(i, 1) == 1.0) key.second = i;
    }
    if (key.first > key.second) std::swap(key.first, key.second);
    counts[key]++;
  }
  CHECK(counts.size() == 15);
  const double expect = reps / 15.0;
  double chi2 = 0.0;
  for (const auto& [_, c] : counts) chi2 += (c - expect) * (c - expect) / expect;
  CHECK(chi2 < 36.12);
}

TEST_CASE("pinned first draws per stream keep the seeding contract stable") {
  // counter-based streams: (seed, domain, id, sub) fixes the whole sequence
  rng::Stream s1 = rng::make_stream(1, rng::Domain::covariates, 0);
  CHECK(s1.next_u64() == 0x2a4d7ef242da5a2cULL);
  CHECK(s1.next_u64() == 0x422ad5c0f1b94100ULL);
  CHECK(s1.next_u64() == 0xbc62a2959da323a1ULL);
  CHECK(s1.next_u64() == 0x67b98cbeb5e7b03dULL);
  rng::Stream s2 = rng::make_stream(1, rng::Domain::noise, 0);
  CHECK(s2.next_u64() == 0x541d09136573e5a4ULL);
  CHECK(s2.next_u64() == 0x1807dd containerULL);
}

TEST_CASE("ortho calibrated magnitudes match the energy target") {
  SimScenario sc;  // defaults: n=800, r2=0.75 -> sum beta^2 = 2400
  const std::vector<double> mags = ortho_calibrated_magnitudes(sc);
  CHECK(static_cast<int>(mags.size()) == 105);
  double energy = 0.0;
  for (double v : mags) energy += v * v;
  CHECK(energy == doctest::Approx(2400.0).epsilon(1e-10));
}
