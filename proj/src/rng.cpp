#include "charpoly/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace charpoly {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::uint64_t hash_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t s = master;
  std::uint64_t h = splitmix64(s);
  s = h ^ (index * 0x9E3779B97F4A7C15ull + 0x632BE59BD9B4E019ull);
  return splitmix64(s);
}

double Rng::uniform() {
  // 53-bit mantissa, strictly inside (0, 1)
  const std::uint64_t r = eng_() >> 11;
  return (static_cast<double>(r) + 0.5) * (1.0 / 9007199254740992.0);
}

double Rng::normal() {
  if (have_cached_) {
    have_cached_ = false;
    return cached_;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double th = 2.0 * M_PI * u2;
  cached_ = r * std::sin(th);
  have_cached_ = true;
  return r * std::cos(th);
}

double Rng::gamma(double shape) {
  if (shape < 0.05) throw std::invalid_argument("Rng::gamma: shape too small");
  if (shape < 1.0) {
    // boost from shape+1
    const double u = uniform();
    return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x = 0.0, v = 0.0;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double Rng::chi(double dof) { return std::sqrt(2.0 * gamma(0.5 * dof)); }

}  // namespace charpoly
