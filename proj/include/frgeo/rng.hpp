#pragma once

#include <array>
#include <cstdint>

namespace frgeo {

// Philox4x32-10 counter-based generator (Salmon et al., SC'11 constants).
// Streams derived from the same seed with different stream indices are
// statistically independent, which gives per-worker determinism: worker k
// draws from stream k regardless of scheduling.
class Philox {
 public:
  explicit Philox(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint32_t next_u32();
  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  // Standard normal via Box-Muller; both outputs of a pair are used.
  double normal();

 private:
  void refill();

  std::array<std::uint32_t, 4> counter_;
  std::array<std::uint32_t, 2> key_;
  std::array<std::uint32_t, 4> block_;
  int idx_;
  bool has_spare_;
  double spare_;
};

}  // namespace frgeo
