#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace epiq {

/// splitmix64 finalizer; used to derive stream seeds from (master, index...).
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Random engine with the handful of draws the library needs.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the
/// standard. The draws below are written out instead of using
/// <random> distributions so that results are identical across standard
/// library implementations.
class Rng {
  __extension__ using u128 = unsigned __int128;

 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }
  result_type operator()() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform integer on [0, bound), bound > 0 (Lemire's method).
  std::uint64_t below(std::uint64_t bound) {
    u128 m = static_cast<u128>(engine_()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        m = static_cast<u128>(engine_()) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  bool bernoulli(double p) { return uniform() < p; }

  /// Exponential waiting time with the given rate (> 0).
  double exponential(double rate) { return -std::log1p(-uniform()) / rate; }

 private:
  std::mt19937_64 engine_;
};

/// Master seed plus the rule that turns (master, indices...) into an
/// independent stream. Identical inputs always yield identical streams.
struct Seed {
  std::uint64_t master = 0;

  std::uint64_t derive(std::initializer_list<std::uint64_t> indices) const {
    std::uint64_t h = mix64(master);
    for (std::uint64_t i : indices) h = mix64(h ^ mix64(i + 0x632be59bd9b4e019ULL));
    return h;
  }

  Rng stream(std::initializer_list<std::uint64_t> indices = {}) const {
    return Rng(derive(indices));
  }

  Seed child(std::uint64_t index) const { return Seed{derive({index})}; }
};

}  // namespace epiq
