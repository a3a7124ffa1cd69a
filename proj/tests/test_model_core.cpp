#include <doctest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "cpbench/errors.hpp"
#include "cpbench/kernels.hpp"
#include "cpbench/model_core.hpp"
#include "cpbench/rng.hpp"
#include "oracles.hpp"

using namespace cpbench;

namespace {

Dataset random_dataset(std::size_t n, std::size_t m, rng::Stream& rs) {
  Dataset d;
  d.X = Mat(n, m);
  for (double& v : d.X.data) v = rs.gaussian();
  d.y.resize(n);
  for (double& v : d.y) v = rs.gaussian();
  return d;
}

}  // namespace

TEST_CASE("standardize: forced column values and centered response") {
  Dataset d;
  d.X = Mat(3, 1);
  d.X(0, 0) = 1;
  d.X(1, 0) = 2;
  d.X(2, 0) = 3;
  d.y = {0, 0, 0};
  const StandardizedDataset sd = standardize(d);
  const double s = 1.0 / std::sqrt(2.0);
  CHECK(sd.Xs(0, 0) == doctest::Approx(-s).epsilon(1e-12));
  CHECK(sd.Xs(1, 0) == doctest::Approx(0.0).scale(1).epsilon(1e-12));
  CHECK(sd.Xs(2, 0) == doctest::Approx(s).epsilon(1e-12));
  CHECK(sd.ys[0] == 0.0);
  CHECK(sd.column_means[0] == doctest::Approx(2.0));
}

TEST_CASE("standardize: idempotent on standardized data") {
  rng::Stream rs(11, 0, 0);
  Dataset d = random_dataset(20, 4, rs);
  const StandardizedDataset once = standardize(d);
  Dataset d2;
  d2.X = once.Xs;
  d2.y = once.ys;
  const StandardizedDataset twice = standardize(d2);
  for (std::size_t i = 0; i < d2.X.data.size(); ++i)
    CHECK(twice.Xs.data[i] == doctest::Approx(once.Xs.data[i]).epsilon(1e-12));
  for (std::size_t i = 0; i < d2.y.size(); ++i)
    CHECK(twice.ys[i] == doctest::Approx(once.ys[i]).epsilon(1e-12));
}

TEST_CASE("standardize: constant column rejected with its index") {
  Dataset d;
  d.X = Mat(4, 2);
  for (int i = 0; i < 4; ++i) {
    d.X(i, 0) = i;
    d.X(i, 1) = 5.0;
  }
  d.y = {1, 2, 3, 4};
  CHECK_THROWS_WITH_AS(standardize(d), doctest::Contains("column 1"), DataError);
}

TEST_CASE("standardize: column sums and norms meet the contract") {
  rng::Stream rs(12, 0, 0);
  Dataset d = random_dataset(57, 9, rs);
  const StandardizedDataset sd = standardize(d);
  for (std::size_t j = 0; j < sd.m(); ++j) {
    CHECK(std::abs(kernels::sum(sd.Xs.col(j), sd.n())) < 1e-9 * sd.n());
    CHECK(kernels::sumsq(sd.Xs.col(j), sd.n()) == doctest::Approx(1.0).epsilon(1e-9));
  }
  CHECK(std::abs(kernels::sum(sd.ys.data(), sd.n())) < 1e-9 * sd.n());
}

TEST_CASE("ols_subset: empty subset is the zero fit") {
  rng::Stream rs(13, 0, 0);
  Dataset d = random_dataset(15, 3, rs);
  const StandardizedDataset sd = standardize(d);
  const OlsFit fit = ols_subset(sd, std::vector<int>{});
  CHECK(fit.rss == doctest::Approx(kernels::sumsq(sd.ys.data(), sd.n())));
  for (double v : fit.mu_hat) CHECK(v == 0.0);
}

TEST_CASE("ols_subset: orthonormal columns give inner-product coefficients") {
  // build two exactly orthonormal columns inside R^6 and project directly
  Dataset d;
  const std::size_t n = 6;
  d.X = Mat(n, 2);
  d.X(0, 0) = 1.0;
  d.X(3, 1) = 1.0;
  d.y = {2.5, -1, 0.5, 3.25, 1, -2};
  StandardizedDataset sd;  // bypass centering: columns already unit norm
  sd.Xs = d.X;
  sd.ys = d.y;
  sd.column_means = {0, 0};
  sd.column_scales = {1, 1};
  const std::vector<int> subset = {0, 1};
  const OlsFit fit = ols_subset(sd, subset);
  CHECK(fit.beta_sub[0] == doctest::Approx(2.5).epsilon(1e-12));
  CHECK(fit.beta_sub[1] == doctest::Approx(3.25).epsilon(1e-12));
}

TEST_CASE("ols_subset: agrees with the normal-equations oracle") {
  rng::Stream rs(14, 0, 0);
  Dataset d = random_dataset(10, 4, rs);
  const StandardizedDataset sd = standardize(d);
  const std::vector<int> subset = {0, 1, 2, 3};
  const OlsFit fit = ols_subset(sd, subset);
  const std::vector<double> ref = oracle::normal_equations(sd.Xs, subset, sd.ys);
  for (std::size_t i = 0; i < ref.size(); ++i)
    CHECK(fit.beta_sub[i] == doctest::Approx(ref[i]).epsilon(1e-9));
}

TEST_CASE("ols_subset: projection idempotence and nested monotonicity") {
  rng::Stream rs(15, 0, 0);
  Dataset d = random_dataset(30, 6, rs);
  const StandardizedDataset sd = standardize(d);
  const std::vector<int> small = {1, 4};
  const std::vector<int> big = {1, 2, 4, 5};
  const OlsFit fs = ols_subset(sd, small);
  const OlsFit fb = ols_subset(sd, big);
  CHECK(fb.rss <= fs.rss + 1e-9);

  // re-projecting the fitted values reproduces them
  StandardizedDataset sd2 = sd;
  sd2.ys = fs.mu_hat;
  const OlsFit again = ols_subset(sd2, small);
  CHECK(again.rss < 1e-9);
  for (std::size_t i = 0; i < again.mu_hat.size(); ++i)
    CHECK(again.mu_hat[i] == doctest::Approx(fs.mu_hat[i]).epsilon(1e-9).scale(1.0));
}

TEST_CASE("ols_subset: rejects bad subsets and rank deficiency") {
  rng::Stream rs(16, 0, 0);
  Dataset d = random_dataset(12, 3, rs);
  // duplicate a column to force exact collinearity
  for (std::size_t i = 0; i < 12; ++i) d.X(i, 2) = d.X(i, 0);
  const StandardizedDataset sd = standardize(d);
  CHECK_THROWS_AS(ols_subset(sd, std::vector<int>{0, 0}), DataError);
  CHECK_THROWS_AS(ols_subset(sd, std::vector<int>{0, 7}), DataError);
  CHECK_THROWS_WITH_AS(ols_subset(sd, std::vector<int>{0, 1, 2}),
                       doctest::Contains("{0,1,2}"), DataError);
}

TEST_CASE("estimate_sigma2_full: exact residual case and n<=m rejection") {
  rng::Stream rs(17, 0, 0);
  Dataset d = random_dataset(8, 2, rs);
  // y inside the span of the centered columns -> degenerate
  const StandardizedDataset pre = standardize(d);
  Dataset d2 = d;
  d2.y.assign(8, 0.0);
  for (std::size_t i = 0; i < 8; ++i)
    d2.y[i] = 2.0 * pre.Xs(i, 0) - 0.5 * pre.Xs(i, 1);
  const StandardizedDataset sd = standardize(d2);
  const Sigma2Estimate est = estimate_sigma2_full(sd);
  CHECK(est.degenerate);
  CHECK(est.value == doctest::Approx(0.0).scale(1).epsilon(1e-12));

  Dataset tiny = random_dataset(3, 3, rs);
  CHECK_THROWS_AS(estimate_sigma2_full(standardize(tiny)), DataError);
}

TEST_CASE("estimate_sigma2_full: concentrates near the true variance") {
  // n=800, m=400 draw with unit noise: RSS/(n-m) ~ chi^2_400/400
  rng::Stream rs(18, 0, 0);
  Dataset d = random_dataset(800, 400, rs);
  const StandardizedDataset sd = standardize(d);
  const Sigma2Estimate est = estimate_sigma2_full(sd);
  CHECK(!est.degenerate);
  CHECK(est.value > 0.85);
  CHECK(est.value < 1.15);
}

TEST_CASE("estimate_sigma2_full: unbiased on a tiny orthonormal design") {
  // n=3, one unit-norm column, pure noise response: E[RSS/(n-1)] = 1
  double sum = 0.0;
  const int reps = 4000;
  rng::Stream rs(19, 0, 0);
  for (int r = 0; r < reps; ++r) {
    StandardizedDataset sd;
    sd.Xs = Mat(3, 1);
    sd.Xs(0, 0) = 1.0;  // exactly unit norm, uncentered on purpose
    sd.ys = {rs.gaussian(), rs.gaussian(), rs.gaussian()};
    sd.column_means = {0.0};
    sd.column_scales = {1.0};
    sum += estimate_sigma2_full(sd).value;
  }
  const double mean = sum / reps;
  // SE of the mean of chi^2_2/2 over 4000 reps is 1/sqrt(4000) ~ 0.0158
  CHECK(mean == doctest::Approx(1.0).epsilon(3 * 0.0158 + 0.001));
}

TEST_CASE("cp_value: identities and errors") {
  CHECK(cp_value(100.0, 1.0, 80, 5) == doctest::Approx(30.0));
  CHECK(cp_value(50.0 * 2.0, 2.0, 50, 0) == doctest::Approx(0.0));
  CHECK_THROWS_AS(cp_value(1.0, 0.0, 10, 1), DataError);
  CHECK_THROWS_AS(cp_value(1.0, -2.0, 10, 1), DataError);
  CHECK_THROWS_AS(cp_value(1.0, 1.0, 10, 11), DataError);
}

TEST_CASE("cp identity: full model Cp equals m exactly") {
  rng::Stream rs(20, 0, 0);
  Dataset d = random_dataset(40, 7, rs);
  const StandardizedDataset sd = standardize(d);
  const Sigma2Estimate s2 = estimate_sigma2_full(sd);
  std::vector<int> all(7);
  std::iota(all.begin(), all.end(), 0);
  const OlsFit fit = ols_subset(sd, all);
  CHECK(cp_value(fit.rss, s2.value, 40, 7) == doctest::Approx(7.0).epsilon(1e-9));
}

TEST_CASE("make_cp_curve: argmin and tie-break to smallest k") {
  std::vector<std::pair<int, double>> k_rss;
  // sigma2=1, n=10: cp = rss - 10 + 2k
  k_rss.push_back({0, 20.0});  // cp 10
  k_rss.push_back({1, 14.0});  // cp 6
  k_rss.push_back({2, 14.0});  // cp 8
  const CpCurve c = make_cp_curve(k_rss, 1.0, 10);
  CHECK(c.k_min == 1);
  CHECK(c.entries[1].cp == doctest::Approx(6.0));

  // two equal minima at k=5 and k=9 -> k=5
  std::vector<std::pair<int, double>> tie;
  for (int k = 0; k <= 9; ++k) tie.push_back({k, 30.0 - 2.0 * k});
  tie[5].second = 30.0 - 2.0 * 5 - 4.0;  // cp at 5 = 16
  tie[9].second = 30.0 - 2.0 * 9 - 4.0 + 8.0 - 8.0;
  CpCurve c2 = make_cp_curve(tie, 1.0, 10);
  const double cp5 = c2.entries[5].cp;
  const double cp9 = c2.entries[9].cp;
  CHECK(cp5 == doctest::Approx(cp9));
  CHECK(c2.k_min == 5);
}
