#include "dac/rng.hpp"

namespace dac {

namespace {

std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream_id) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream_id), static_cast<std::uint32_t>(stream_id >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id), engine_(make_engine(seed, stream_id)) {}

RngStream RngStream::substream(std::uint64_t index) const {
  return RngStream(seed_, mix64(stream_id_ ^ mix64(index + 1)));
}

}  // namespace dac
