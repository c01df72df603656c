#pragma once

#include <cstdint>

namespace opinionfp {

/// SplitMix64 finaliser.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Counter-based stream: draw number `counter` of the stream named `key` is a
/// pure function of both, so any partition of the counters across threads
/// reproduces the serial sequence bit for bit.
constexpr std::uint64_t counter_hash(std::uint64_t key, std::uint64_t counter) {
  return splitmix64(key ^ splitmix64(counter));
}

/// Uniform double in [0, 1) from the top 53 bits.
constexpr double to_unit_interval(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

constexpr std::uint64_t stream_key(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(splitmix64(seed) + 0x632be59bd9b4e019ULL * (stream + 1));
}

}  // namespace opinionfp
