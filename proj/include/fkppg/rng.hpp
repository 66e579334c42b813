#pragma once

#include <array>
#include <cstdint>

namespace fkppg {

/// Philox4x32-10 block: encrypts a 128-bit counter under a 64-bit key.
/// This is the keyed counter construction the whole engine is built on;
/// the exact constants and round count are part of the on-disk/reported
/// reproducibility contract and must never change.
std::array<uint32_t, 4> philox4x32(const std::array<uint32_t, 4>& counter,
                                   const std::array<uint32_t, 2>& key);

/// Counter-based uniform stream. Every draw is addressed by
/// (seed, step, slot, draw): no hidden state, so scalar and vectorized
/// engines (and any thread schedule) observe identical values.
///
/// Addressing: counter = {step, slot, draw, 0}, key = seed split into
/// 32-bit halves. The uniform is built from the first two output words
/// as a 53-bit mantissa, yielding a double in [0, 1).
class RngStream {
 public:
  explicit RngStream(uint64_t seed) : seed_(seed) {}

  double uniform(uint32_t step, uint32_t slot, uint32_t draw) const;

  uint64_t seed() const { return seed_; }

  /// Reserved slot id for the per-step resampling channel. Particle slots
  /// are 0..N-1, so N must stay below this value.
  static constexpr uint32_t kResampleSlot = 0xFFFFFFFFu;

 private:
  uint64_t seed_;
};

/// Auto-incrementing view of one (step, slot) lane. The n-th call to
/// `take()` returns the draw at position n, which is how "the i-th sample
/// statement consumes draw i" is realized in both engines.
struct DrawCursor {
  const RngStream* stream = nullptr;
  uint32_t step = 0;
  uint32_t slot = 0;
  uint32_t next = 0;

  double take() { return stream->uniform(step, slot, next++); }
  double at(uint32_t draw) const { return stream->uniform(step, slot, draw); }
};

/// Standard normal quantile function for u in [0, 1); u = 0 maps to -inf.
/// Rational initial guess refined by one Halley step against erfc.
double inverse_normal_cdf(double u);

}  // namespace fkppg
