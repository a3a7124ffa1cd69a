#pragma once

#include <cstdint>

// Counter-based RNG (Philox4x64-10). Each Stream is identified by
// (seed, domain, id, sub):
//
//   key     = (seed, 0)
//   counter = (block, carry, sub, domain<<48 | id)
//
// `block` increments once per 4-word batch, so any two streams with distinct
// (domain, id, sub) walk disjoint counter blocks forever under the same seed:
// replications, chains and per-coordinate lanes can never overlap. The first
// four 64-bit draws of selected streams are pinned in the test suite.
namespace cpbench::rng {

enum class Domain : std::uint64_t {
  covariates = 1,   // id = replication
  noise = 2,        // id = replication
  ortho_design = 3, // id = replication (basis-column choice)
  ortho_sign = 4,   // id = replication (coefficient signs)
  svs_coord = 5,    // id = chain, sub = coordinate
  svs_shared = 6,   // id = chain (w, sigma2 draws)
  svs_rows = 7,     // id = chain (row-space perturbation)
  theory = 8,       // id = replication
  generic = 9,
};

class Stream {
 public:
  Stream(std::uint64_t seed, std::uint64_t stream_hi, std::uint64_t stream_lo);

  std::uint64_t next_u64();
  std::uint64_t next_below(std::uint64_t bound);  // uniform on [0, bound), unbiased
  double uniform01();      // [0, 1), 53-bit mantissa
  double uniform_open();   // (0, 1]
  double gaussian();       // standard normal, Box-Muller
  double gamma(double shape, double scale);
  double inverse_gamma(double shape, double scale);
  double beta(double a, double b);

 private:
  void refill();

  std::uint64_t key_[2];
  std::uint64_t stream_hi_, stream_lo_;
  std::uint64_t block_lo_ = 0, block_hi_ = 0;
  std::uint64_t buf_[4];
  int buf_pos_ = 4;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

Stream make_stream(std::uint64_t seed, Domain domain, std::uint64_t id,
                   std::uint64_t sub = 0);

}  // namespace cpbench::rng
