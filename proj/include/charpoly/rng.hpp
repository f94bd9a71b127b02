#pragma once
#include <cstdint>
#include <random>

namespace charpoly {

// splitmix64: seed expansion / hashing for per-chain streams.
std::uint64_t splitmix64(std::uint64_t& state);
std::uint64_t hash_seed(std::uint64_t master, std::uint64_t index);

// mt19937_64 with hand-rolled transforms so sequences do not depend on the
// standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform();                  // (0, 1)
  double normal();                   // Box-Muller, cached pair
  double gamma(double shape);        // Marsaglia-Tsang, shape >= 0.05
  double chi(double dof);            // sqrt of chi-square

 private:
  std::mt19937_64 eng_;
  bool have_cached_ = false;
  double cached_ = 0.0;
};

}  // namespace charpoly
