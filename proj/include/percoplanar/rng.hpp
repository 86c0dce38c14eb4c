#pragma once

#include <cstdint>

// Counter-based random streams. Every variate is a pure function of
// (stream base, counter) or (stream base, edge key), so trials are
// reproducible under any execution order or thread schedule.

namespace percoplanar::rng {

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

// SplitMix64 finalizer; bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

constexpr double to_unit(std::uint64_t w) noexcept {
  return static_cast<double>(w >> 11) * 0x1.0p-53;
}

// Derives an independent stream base from a parent base and a tag.
constexpr std::uint64_t substream(std::uint64_t base, std::uint64_t tag) noexcept {
  return mix64((base ^ mix64(tag + 0x632be59bd9b4e019ULL)) + kGolden);
}

// Fixed derivation used for per-trial seeds: (master, grid index, trial index).
constexpr std::uint64_t derive(std::uint64_t master, std::uint64_t a, std::uint64_t b) noexcept {
  return substream(substream(master, a), b);
}

constexpr std::uint64_t edge_key(int u, int v) noexcept {
  if (u > v) { int t = u; u = v; v = t; }
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) |
         static_cast<std::uint32_t>(v);
}

// Uniform [0,1) variate attached to an undirected edge of a stream.
constexpr double edge_unit(std::uint64_t base, int u, int v) noexcept {
  return to_unit(mix64(base + (edge_key(u, v) + 1) * kGolden));
}

// Indexed counter stream: word(i) = mix64(base + (i+1)*golden).
struct Stream {
  std::uint64_t base = 0;

  std::uint64_t word(std::uint64_t counter) const noexcept {
    return mix64(base + (counter + 1) * kGolden);
  }
  double unit(std::uint64_t counter) const noexcept { return to_unit(word(counter)); }
};

// Sequential wrapper over a Stream for generators that draw in order.
struct SequentialStream {
  Stream stream;
  std::uint64_t counter = 0;

  explicit SequentialStream(std::uint64_t base) : stream{base} {}

  std::uint64_t next_word() noexcept { return stream.word(counter++); }
  double next_unit() noexcept { return to_unit(next_word()); }
  // Uniform integer in [0, bound) via the multiply-shift reduction.
  std::uint64_t next_below(std::uint64_t bound) noexcept {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_word()) * bound) >> 64);
  }
  // Uniform in (0,1], safe as a log() argument.
  double next_unit_positive() noexcept {
    return static_cast<double>((next_word() >> 11) + 1) * 0x1.0p-53;
  }
};

}  // namespace percoplanar::rng
