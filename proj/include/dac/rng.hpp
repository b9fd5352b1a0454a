#pragma once

#include <cstdint>
#include <random>

namespace dac {

// Named random stream. The engine is std::mt19937_64 seeded through
// std::seed_seq with the 32-bit halves of (seed, stream_id); both are fully
// specified by the standard, so a stream is reproducible on any conforming
// implementation. Distinct stream ids give independent-looking streams.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  std::uint64_t next() { return engine_(); }
  // Uniform on [0,1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  // Exact at the endpoints: p <= 0 never fires, p >= 1 always fires.
  bool bernoulli(double p) { return uniform() < p; }

  // Stream id for the index-th child of this stream.
  RngStream substream(std::uint64_t index) const;

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
};

// splitmix64 finalizer; used to derive child stream ids.
std::uint64_t mix64(std::uint64_t x);

}  // namespace dac
