#pragma once

#include <complex>
#include <cstdint>

namespace bargweyl {

// splitmix64-based generator. Hand-rolled so that seeded draws are
// bit-identical across standard libraries (std:: distributions are not).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // uniform in [0,1)
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  // Re and Im uniform in [-r, r]
  std::complex<double> complex_in_box(double r) {
    double re = uniform(-r, r);
    double im = uniform(-r, r);
    return {re, im};
  }

 private:
  std::uint64_t state_;
};

}  // namespace bargweyl
