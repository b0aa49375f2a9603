#pragma once

// Error types, seeded RNG and content hashing shared by every module.

#include <cstdint>
#include <cstring>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace treedistill {

// Errors carry a short machine-readable kind so the CLI can map them to exit
// codes and structured stderr diagnostics.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

#define TD_ERROR_TYPE(Name, Kind)                             \
  class Name : public Error {                                 \
   public:                                                    \
    explicit Name(const std::string& m) : Error(Kind, m) {}   \
  }

TD_ERROR_TYPE(ParseError, "parse");
TD_ERROR_TYPE(SchemaError, "schema");
TD_ERROR_TYPE(InconsistencyError, "inconsistency");
TD_ERROR_TYPE(ArgumentError, "argument");
TD_ERROR_TYPE(SizeError, "size");
TD_ERROR_TYPE(CapExceededError, "cap_exceeded");
TD_ERROR_TYPE(IoError, "io");
TD_ERROR_TYPE(VersionError, "version");
TD_ERROR_TYPE(ShapeError, "shape");
TD_ERROR_TYPE(DepthError, "depth");
TD_ERROR_TYPE(ConfigError, "config");
TD_ERROR_TYPE(DegenerateError, "degenerate");

#undef TD_ERROR_TYPE

// Seeded generator. All helper draws are built directly on the mt19937_64
// word stream; std:: distributions are avoided because their outputs are not
// pinned by the standard.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, n); n > 0. Modulo bias is negligible for the small n used here.
  std::uint64_t below(std::uint64_t n) { return next_u64() % n; }

  int range_int(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  bool bernoulli(double p) { return uniform01() < p; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[static_cast<std::size_t>(below(i))]);
    }
  }

  // Index draw proportional to non-negative weights; at least one must be positive.
  std::size_t weighted(const std::vector<double>& weights) {
    double total = 0.0;
    for (double w : weights) total += w;
    double u = uniform01() * total;
    double acc = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      acc += weights[i];
      if (u < acc) return i;
    }
    return weights.size() - 1;
  }

 private:
  std::mt19937_64 engine_;
};

inline std::uint64_t fnv1a64(const void* data, std::size_t size,
                             std::uint64_t h = 1469598103934665603ULL) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < size; ++i) {
    h ^= p[i];
    h *= 1099511628211ULL;
  }
  return h;
}

inline std::string fnv1a64_hex(std::string_view bytes) {
  std::uint64_t h = fnv1a64(bytes.data(), bytes.size());
  char buf[17];
  static const char* digits = "0123456789abcdef";
  for (int i = 15; i >= 0; --i) {
    buf[i] = digits[h & 0xF];
    h >>= 4;
  }
  buf[16] = '\0';
  return std::string(buf);
}

}  // namespace treedistill
