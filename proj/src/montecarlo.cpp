#include "charpoly/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "charpoly/errors.hpp"
#include "charpoly/kernels.hpp"

namespace charpoly {

std::vector<double> tridiag_eigenvalues(std::vector<double> d, std::vector<double> e) {
  // Implicit-shift QL, eigenvalues only.
  const int n = static_cast<int>(d.size());
  if (n == 0) return {};
  e.resize(n, 0.0);
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m = 0;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= 1e-15 * dd) break;
      }
      if (m != l) {
        if (iter++ == 50) throw Error("tridiag_eigenvalues: too many QL iterations");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        bool underflow = false;
        for (int i = m - 1; i >= l; --i) {
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            underflow = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
        }
        if (underflow) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
  std::sort(d.begin(), d.end());
  return d;
}

SpectrumSampler::SpectrumSampler(const EnsembleConfig& cfg, const SamplerSpec& spec)
    : cfg_(cfg), spec_(spec), rng_(spec.seed), log_step_(std::log(spec.step)) {
  if (spec_.burn_in < 0 || spec_.thinning < 1 || !(spec_.step > 0.0)) {
    throw std::invalid_argument("SamplerSpec: burn_in >= 0, thinning >= 1, step > 0");
  }
  const int n = cfg_.n;
  state_.resize(n);
  if (spec_.method == SamplerMethod::gaussian_direct) {
    int m = 0;
    double c = 0.0;
    if (!cfg_.potential.is_monomial(&m, &c) || m != 1) {
      throw UnsupportedPotential("gaussian_direct requires V(x) = c x^2");
    }
    gauss_scale_ = 1.0 / std::sqrt(2.0 * n * c);
    diag_.resize(n);
    off_.resize(n > 1 ? n - 1 : 0);
  } else {
    // start from an equispaced configuration inside the spectral window
    const double half = 1.0;
    for (int i = 0; i < n; ++i) {
      state_[i] = n == 1 ? 0.0 : -half + 2.0 * half * i / (n - 1);
    }
    for (int s = 0; s < spec_.burn_in; ++s) metropolis_sweep(true);
    proposals_ = accepts_ = 0;
  }
}

double SpectrumSampler::acceptance_rate() const {
  if (spec_.method == SamplerMethod::gaussian_direct) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  return proposals_ ? static_cast<double>(accepts_) / proposals_ : 0.0;
}

void SpectrumSampler::metropolis_sweep(bool tune) {
  const int n = cfg_.n;
  const double sigma = std::exp(log_step_);
  long sweep_acc = 0;
  for (int i = 0; i < n; ++i) {
    const double xi = state_[i];
    const double prop = xi + sigma * rng_.normal();
    // log-density difference restricted to terms containing x_i
    double dlog = -cfg_.n * (cfg_.potential(prop) - cfg_.potential(xi));
    bool degenerate = false;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const double dn = std::abs(prop - state_[j]);
      if (dn < 1e-14) {
        degenerate = true;
        break;
      }
      dlog += 2.0 * (std::log(dn) - std::log(std::abs(xi - state_[j])));
    }
    ++proposals_;
    if (!degenerate && std::log(rng_.uniform()) < dlog) {
      state_[i] = prop;
      ++accepts_;
      ++sweep_acc;
    }
  }
  if (tune) {
    // Robbins-Monro toward 40% acceptance, frozen after burn-in.
    ++tuning_sweep_;
    const double rate = static_cast<double>(sweep_acc) / n;
    log_step_ += (rate - 0.4) / std::sqrt(10.0 + tuning_sweep_);
  }
}

const std::vector<double>& SpectrumSampler::next() {
  const int n = cfg_.n;
  if (spec_.method == SamplerMethod::gaussian_direct) {
    for (int i = 0; i < n; ++i) diag_[i] = rng_.normal();
    for (int i = 0; i < n - 1; ++i) {
      off_[i] = rng_.chi(2.0 * (n - 1 - i)) / std::sqrt(2.0);
    }
    state_ = tridiag_eigenvalues(diag_, off_);
    for (double& x : state_) x *= gauss_scale_;
    return state_;
  }
  for (int s = 0; s < spec_.thinning; ++s) metropolis_sweep(false);
  return state_;
}

namespace {

cplx sample_value(const McCorrelator& corr, const std::vector<double>& x) {
  // prod Z[mu] / prod Z[eps] accumulated as complex log sums
  cplx log_acc(0.0, 0.0);
  for (cplx m : corr.numerator) {
    for (double xi : x) log_acc += std::log(m - xi);
  }
  for (cplx e : corr.denominator) {
    for (double xi : x) log_acc -= std::log(e - xi);
  }
  return std::exp(log_acc);
}

}  // namespace

McEstimate estimate_correlator(const EnsembleConfig& cfg, const SamplerSpec& spec,
                               const McCorrelator& corr, long n_samples,
                               const RecurrenceTable* guard_table, int threads) {
  if (n_samples < 1) throw std::invalid_argument("estimate_correlator: n_samples >= 1");
  for (cplx e : corr.denominator) {
    double rho = 0.0;
    if (guard_table) {
      rho = kernel_kn(*guard_table, cfg, cfg.n, e.real(), e.real()) / cfg.n;
    }
    if (rho <= 0.0) rho = 1e-2;  // conservative fallback off the table
    const double guard = 0.05 / (cfg.n * rho);
    if (std::abs(e.imag()) < guard) {
      throw VarianceGuardViolated("estimate_correlator: |Im eps| < " +
                                  std::to_string(guard) + " gives heavy-tailed ratios");
    }
  }

  // Fixed chain count; per-chain seeds derived from the master seed, samples
  // merged in chain order, so results do not depend on the thread count.
  std::vector<long> counts(kMcChains, n_samples / kMcChains);
  for (long i = 0; i < n_samples % kMcChains; ++i) ++counts[i];
  std::vector<long> offsets(kMcChains, 0);
  for (int c = 1; c < kMcChains; ++c) offsets[c] = offsets[c - 1] + counts[c - 1];

  std::vector<cplx> values(n_samples);
  std::vector<double> acc_rates(kMcChains, 0.0);
  auto run_chain = [&](int c) {
    if (counts[c] == 0) return;
    SamplerSpec chain_spec = spec;
    chain_spec.seed = hash_seed(spec.seed, static_cast<std::uint64_t>(c));
    SpectrumSampler sampler(cfg, chain_spec);
    for (long i = 0; i < counts[c]; ++i) {
      values[offsets[c] + i] = sample_value(corr, sampler.next());
    }
    acc_rates[c] = sampler.acceptance_rate();
  };

  threads = std::max(1, std::min(threads, kMcChains));
  if (threads == 1) {
    for (int c = 0; c < kMcChains; ++c) run_chain(c);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] {
        for (int c = w; c < kMcChains; c += threads) run_chain(c);
      });
    }
    for (auto& th : pool) th.join();
  }

  McEstimate est;
  est.n_samples = n_samples;
  est.seed = spec.seed;
  cplx sum(0.0, 0.0);
  for (cplx v : values) sum += v;
  est.mean = sum / static_cast<double>(n_samples);

  // batch means over the merged sequence
  const int n_batches = static_cast<int>(std::min<long>(50, n_samples));
  const long batch = n_samples / n_batches;
  double var_re = 0.0, var_im = 0.0;
  int used = 0;
  for (int b = 0; b < n_batches; ++b) {
    const long lo = b * batch;
    const long hi = (b + 1 == n_batches) ? n_samples : lo + batch;
    if (hi <= lo) continue;
    cplx bm(0.0, 0.0);
    for (long i = lo; i < hi; ++i) bm += values[i];
    bm /= static_cast<double>(hi - lo);
    var_re += (bm.real() - est.mean.real()) * (bm.real() - est.mean.real());
    var_im += (bm.imag() - est.mean.imag()) * (bm.imag() - est.mean.imag());
    ++used;
  }
  if (used > 1) {
    var_re /= (used - 1.0) * used;
    var_im /= (used - 1.0) * used;
  }
  est.stderr_combined = std::sqrt(var_re + var_im);

  if (spec.method == SamplerMethod::metropolis_loggas) {
    double acc = 0.0;
    long total = 0;
    for (int c = 0; c < kMcChains; ++c) {
      acc += acc_rates[c] * counts[c];
      total += counts[c];
    }
    est.acceptance_rate = total ? acc / total : 0.0;
  } else {
    est.acceptance_rate = std::numeric_limits<double>::quiet_NaN();
  }
  return est;
}

}  // namespace charpoly
