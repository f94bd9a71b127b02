#pragma once
#include <cstdint>
#include <vector>

#include "charpoly/ensemble.hpp"
#include "charpoly/orthopoly.hpp"
#include "charpoly/rng.hpp"
#include "charpoly/scaled.hpp"

namespace charpoly {

enum class SamplerMethod { gaussian_direct, metropolis_loggas };

struct SamplerSpec {
  SamplerMethod method = SamplerMethod::metropolis_loggas;
  int burn_in = 500;      // tuning sweeps before measurement
  int thinning = 5;       // sweeps between kept samples
  double step = 0.5;      // initial proposal sigma (auto-tuned during burn-in)
  std::uint64_t seed = 12345;
};

// Streams eigenvalue configurations with density
// exp(-N sum V(x_i)) Delta^2(x).  gaussian_direct uses the tridiagonal
// beta = 2 construction (diagonal normals, chi off-diagonals) and is exact
// for V = c x^2; metropolis_loggas random-walks the log-gas for any
// admissible potential, with Robbins-Monro step tuning frozen after burn-in.
class SpectrumSampler {
 public:
  SpectrumSampler(const EnsembleConfig& cfg, const SamplerSpec& spec);
  const std::vector<double>& next();
  double acceptance_rate() const;

 private:
  void metropolis_sweep(bool tune);

  EnsembleConfig cfg_;
  SamplerSpec spec_;
  Rng rng_;
  std::vector<double> state_;
  std::vector<double> diag_, off_;  // tridiagonal scratch
  double gauss_scale_ = 1.0;
  double log_step_ = 0.0;
  long proposals_ = 0, accepts_ = 0;
  int tuning_sweep_ = 0;
};

struct McEstimate {
  cplx mean{0.0, 0.0};
  double stderr_combined = 0.0;  // batch means, sqrt(var_re + var_im)
  long n_samples = 0;
  std::uint64_t seed = 0;
  double acceptance_rate = 0.0;  // NaN for the direct sampler
};

struct McCorrelator {
  std::vector<cplx> numerator;    // mu arguments of prod Z[mu]
  std::vector<cplx> denominator;  // eps arguments of prod 1/Z[eps]
};

inline constexpr int kMcChains = 8;  // fixed: results are thread-count independent

// Mean and batch-means standard error of prod Z[mu]/prod Z[eps] over
// n_samples draws split across kMcChains seed-derived chains; the optional
// table enables the finite-N density in the near-axis variance guard
// |Im eps| >= 0.05 / (N rho(Re eps)).
McEstimate estimate_correlator(const EnsembleConfig& cfg, const SamplerSpec& spec,
                               const McCorrelator& corr, long n_samples,
                               const RecurrenceTable* guard_table = nullptr,
                               int threads = 1);

// Eigenvalues of a symmetric tridiagonal matrix (implicit-shift QL).
std::vector<double> tridiag_eigenvalues(std::vector<double> diag,
                                        std::vector<double> off);

}  // namespace charpoly
