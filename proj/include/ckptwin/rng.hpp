#pragma once

#include <cstdint>
#include <limits>
#include <string_view>

namespace ckptwin {

/// Counter-based 64-bit generator. Output i of a stream is a pure function of
/// (key, i), so streams can be split by name and indexed randomly without
/// consuming shared state. Satisfies UniformRandomBitGenerator.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t seed) : key_(mix(seed ^ 0x6a09e667f3bcc909ULL)) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() { return at(counter_++); }

  /// Value at position `index`, independent of the current counter.
  result_type at(std::uint64_t index) const {
    return mix(key_ ^ mix(index + 0x9e3779b97f4a7c15ULL));
  }

  /// Uniform in [0, 1).
  double uniform() { return to_unit((*this)()); }
  double uniform_at(std::uint64_t index) const { return to_unit(at(index)); }

  /// Uniform in (0, 1), safe for log().
  double uniform_open() { return to_open_unit((*this)()); }
  double uniform_open_at(std::uint64_t index) const { return to_open_unit(at(index)); }

  /// Independent child stream.
  CounterRng split(std::uint64_t stream) const {
    return CounterRng(Key{mix(key_ ^ mix(stream ^ 0xbb67ae8584caa73bULL))});
  }
  CounterRng split(std::string_view name) const { return split(hash(name)); }

  std::uint64_t counter() const { return counter_; }

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// FNV-1a.
  static constexpr std::uint64_t hash(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : s) {
      h ^= static_cast<unsigned char>(c);
      h *= 0x100000001b3ULL;
    }
    return h;
  }

 private:
  struct Key {
    std::uint64_t value;
  };
  explicit CounterRng(Key k) : key_(k.value) {}

  static double to_unit(std::uint64_t x) { return static_cast<double>(x >> 11) * 0x1.0p-53; }
  static double to_open_unit(std::uint64_t x) {
    return (static_cast<double>(x >> 11) + 0.5) * 0x1.0p-53;
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace ckptwin
