#pragma once

// Seeded generator with platform-independent bounded draws.

#include <torelli/scalar.hpp>

#include <cstdint>
#include <random>

namespace torelli {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [lo, hi] by rejection, identical on every platform.
  long uniform(long lo, long hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % span);
    std::uint64_t v;
    do {
      v = engine_();
    } while (v >= limit);
    return lo + static_cast<long>(v % span);
  }

  // Coefficients in [-m, m] on every power of the generator.
  Scalar small_scalar(const FieldPtr& f, long m) {
    poly::Poly p;
    for (int k = 0; k < f->degree(); ++k) p.emplace_back(uniform(-m, m));
    return Scalar(f, p);
  }

  FVector small_vector(const FieldPtr& f, std::size_t n, long m) {
    std::vector<Scalar> xs;
    xs.reserve(n);
    for (std::size_t i = 0; i < n; ++i) xs.push_back(small_scalar(f, m));
    return FVector(f, std::move(xs));
  }

  IntVector small_integers(std::size_t n, long m) {
    IntVector v(n);
    for (auto& x : v) x = uniform(-m, m);
    return v;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace torelli
