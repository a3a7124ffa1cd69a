#include "cpbench/rng.hpp"

#include <cmath>
#include <numbers>

#include "cpbench/errors.hpp"

namespace cpbench::rng {

namespace {

constexpr std::uint64_t kM0 = 0xD2E7470EE14C6C93ULL;
constexpr std::uint64_t kM1 = 0xCA5A826395121157ULL;
constexpr std::uint64_t kW0 = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kW1 = 0xBB67AE8584CAA73BULL;

inline std::uint64_t mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t* hi) {
  __uint128_t p = static_cast<__uint128_t>(a) * b;
  *hi = static_cast<std::uint64_t>(p >> 64);
  return static_cast<std::uint64_t>(p);
}

}  // namespace

Stream::Stream(std::uint64_t seed, std::uint64_t stream_hi, std::uint64_t stream_lo)
    : key_{seed, 0}, stream_hi_(stream_hi), stream_lo_(stream_lo) {}

void Stream::refill() {
  std::uint64_t c[4] = {block_lo_, block_hi_, stream_lo_, stream_hi_};
  std::uint64_t k0 = key_[0], k1 = key_[1];
  for (int r = 0; r < 10; ++r) {
    if (r > 0) {
      k0 += kW0;
      k1 += kW1;
    }
    std::uint64_t hi0, hi1;
    std::uint64_t lo0 = mulhilo(kM0, c[0], &hi0);
    std::uint64_t lo1 = mulhilo(kM1, c[2], &hi1);
    std::uint64_t n0 = hi1 ^ c[1] ^ k0;
    std::uint64_t n2 = hi0 ^ c[3] ^ k1;
    c[0] = n0;
    c[1] = lo1;
    c[2] = n2;
    c[3] = lo0;
  }
  buf_[0] = c[0];
  buf_[1] = c[1];
  buf_[2] = c[2];
  buf_[3] = c[3];
  buf_pos_ = 0;
  if (++block_lo_ == 0) ++block_hi_;
}

std::uint64_t Stream::next_u64() {
  if (buf_pos_ >= 4) refill();
  return buf_[buf_pos_++];
}

std::uint64_t Stream::next_below(std::uint64_t bound) {
  if (bound == 0) throw DataError("next_below: zero bound");
  const std::uint64_t limit = bound * ((~std::uint64_t{0}) / bound);
  for (;;) {
    const std::uint64_t u = next_u64();
    if (u < limit) return u % bound;
  }
}

double Stream::uniform01() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Stream::uniform_open() {
  // (0, 1]: complement of [0, 1) keeps log() finite
  return 1.0 - uniform01();
}

double Stream::gaussian() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = uniform_open();
  double u2 = uniform01();
  double r = std::sqrt(-2.0 * std::log(u1));
  double t = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(t);
  have_spare_ = true;
  return r * std::cos(t);
}

// Marsaglia-Tsang squeeze; shape < 1 boosted through the shape+1 identity.
double Stream::gamma(double shape, double scale) {
  if (!(shape > 0.0) || !(scale > 0.0))
    throw DataError("gamma draw requires positive shape and scale");
  if (shape < 1.0) {
    double u = uniform_open();
    return gamma(shape + 1.0, scale) * std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = gaussian();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    double u = uniform_open();
    if (u < 1.0 - 0.0331 * x * x * x * x) return scale * d * v;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return scale * d * v;
  }
}

double Stream::inverse_gamma(double shape, double scale) {
  // X ~ Gamma(shape, rate=scale)  =>  1/X ~ InvGamma(shape, scale)
  return 1.0 / gamma(shape, 1.0 / scale);
}

double Stream::beta(double a, double b) {
  double g1 = gamma(a, 1.0);
  double g2 = gamma(b, 1.0);
  return g1 / (g1 + g2);
}

Stream make_stream(std::uint64_t seed, Domain domain, std::uint64_t id,
                   std::uint64_t sub) {
  const std::uint64_t hi = (static_cast<std::uint64_t>(domain) << 48) | (id & 0xFFFFFFFFFFFFULL);
  return Stream(seed, hi, sub);
}

}  // namespace cpbench::rng
