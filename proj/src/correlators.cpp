#include "charpoly/correlators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "charpoly/errors.hpp"
#include "charpoly/equilibrium.hpp"
#include "charpoly/kernels.hpp"
#include "charpoly/linalg.hpp"

namespace charpoly {

bool coincident(cplx a, cplx b) { return std::abs(a - b) < 1e-8 * (1.0 + std::abs(a)); }

namespace {

struct PointGroup {
  cplx z;
  int mult;
};

std::vector<PointGroup> group_points(std::span<const cplx> pts) {
  std::vector<PointGroup> groups;
  for (cplx p : pts) {
    bool merged = false;
    for (PointGroup& g : groups) {
      if (coincident(g.z, p)) {
        ++g.mult;
        merged = true;
        break;
      }
    }
    if (!merged) groups.push_back({p, 1});
  }
  return groups;
}

// prod_{g<g'} (z_{g'} - z_g)^{m_g m_{g'}}: the Vandermonde that survives the
// confluent limit once repeated rows become derivative rows.
ScaledComplex confluent_vandermonde(const std::vector<PointGroup>& groups) {
  ScaledComplex out = ScaledComplex::one();
  for (std::size_t i = 0; i < groups.size(); ++i) {
    for (std::size_t j = i + 1; j < groups.size(); ++j) {
      out = out * ScaledComplex::from(groups[j].z - groups[i].z)
                      .pow_int(static_cast<long>(groups[i].mult) * groups[j].mult);
    }
  }
  return out;
}

ScaledComplex inv_factorial(int r) {
  return ScaledComplex::from_log(-std::lgamma(r + 1.0), 1.0);
}

void require_off_axis(const RecurrenceTable& t, std::span<const cplx> eps,
                      const char* who) {
  for (cplx e : eps) check_off_axis(t, e, who);
}

ScaledComplex gamma_product(const RecurrenceTable& t, int lo, int hi) {
  ScaledComplex out = ScaledComplex::one();
  for (int j = lo; j <= hi; ++j) out = out * gamma_const(t, j);
  return out;
}

bool any_internal_coincidence(std::span<const cplx> v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      if (coincident(v[i], v[j])) return true;
    }
  }
  return false;
}

int checked_k(std::span<const cplx> a, std::span<const cplx> b, const char* who) {
  if (a.size() != b.size() || a.empty()) {
    throw std::invalid_argument(std::string(who) + ": argument vectors must have equal size K >= 1");
  }
  return static_cast<int>(a.size());
}

}  // namespace

double log_upsilon_plus(int k_pow) {
  double acc = 0.0;
  for (int l = 0; l < k_pow; ++l) {
    acc += std::lgamma(l + 1.0) - std::lgamma(l + k_pow + 1.0);
  }
  return acc;
}

ScaledComplex corr_general(const RecurrenceTable& t, const EnsembleConfig& cfg,
                           const QuadratureSpec& q, std::span<const cplx> eps,
                           std::span<const cplx> mu) {
  const int m_den = static_cast<int>(eps.size());
  const int k_num = static_cast<int>(mu.size());
  const int n = cfg.n;
  if (m_den > n) {
    throw std::invalid_argument("corr_general: M must not exceed N");
  }
  if (k_num + m_den == 0) return ScaledComplex::one();
  t.check_degree(n + k_num - 1, "corr_general");
  if (m_den > 0) t.check_norm_index(n - m_den, "corr_general");
  require_off_axis(t, eps, "corr_general");

  const std::vector<PointGroup> eps_groups = group_points(eps);
  const std::vector<PointGroup> mu_groups = group_points(mu);
  for (const PointGroup& g : eps_groups) {
    if (g.mult > kConfluentOrderCap) {
      throw ConfluentOrderTooHigh("corr_general: coincidence multiplicity too high");
    }
  }
  const int dim = m_den + k_num;
  const int j_lo = n - m_den;  // first column index

  ScaledMatrix mat(dim, std::vector<ScaledComplex>(dim));
  int row = 0;
  if (m_den > 0) {
    std::vector<TransformRequest> reqs;
    reqs.reserve(eps_groups.size());
    for (const PointGroup& g : eps_groups) reqs.push_back({g.z, g.mult - 1});
    const auto h = cauchy_transforms(t, cfg, j_lo, n + k_num - 1, reqs, q);
    for (std::size_t gi = 0; gi < eps_groups.size(); ++gi) {
      for (int r = 0; r < eps_groups[gi].mult; ++r, ++row) {
        const ScaledComplex invf = inv_factorial(r);
        for (int j = 0; j < dim; ++j) mat[row][j] = h[gi][j][r] * invf;
      }
    }
  }
  for (const PointGroup& g : mu_groups) {
    std::vector<std::vector<ScaledComplex>> derivs(dim);
    for (int j = 0; j < dim; ++j) {
      derivs[j] = eval_monic_derivs(t, j_lo + j, g.z, g.mult - 1);
    }
    for (int r = 0; r < g.mult; ++r, ++row) {
      const ScaledComplex invf = inv_factorial(r);
      for (int j = 0; j < dim; ++j) mat[row][j] = derivs[j][r] * invf;
    }
  }

  // The eps-side Vandermonde is oriented descending: equivalently a global
  // (-1)^{M(M-1)/2}, the sign that the N = 2..4 tensor-quadrature oracles fix.
  const double sign = ((m_den * (m_den - 1) / 2) % 2 == 0) ? 1.0 : -1.0;
  const ScaledComplex pref = gamma_product(t, n - m_den, n - 1);
  const ScaledComplex den = confluent_vandermonde(mu_groups) * confluent_vandermonde(eps_groups);
  return ScaledComplex::from(cplx(sign, 0.0)) * pref * det_scaled(std::move(mat)) / den;
}

ScaledComplex corr_products(const RecurrenceTable& t, const EnsembleConfig& cfg,
                            const QuadratureSpec& q, std::span<const cplx> lambda,
                            std::span<const cplx> mu, bool use_2k_form) {
  (void)cfg;
  (void)q;
  const int k = checked_k(lambda, mu, "corr_products");
  const int n = cfg.n;
  t.check_degree(n + 2 * k - 1, "corr_products");

  std::vector<cplx> joined(lambda.begin(), lambda.end());
  joined.insert(joined.end(), mu.begin(), mu.end());

  if (use_2k_form || any_internal_coincidence(joined)) {
    // 2K x 2K determinant of pi_{N}..pi_{N+2K-1}; coincident arguments turn
    // into derivative rows of the same bialternant.
    const std::vector<PointGroup> groups = group_points(joined);
    for (const PointGroup& g : groups) {
      if (g.mult > kConfluentOrderCap) {
        throw ConfluentOrderTooHigh("corr_products: coincidence multiplicity too high");
      }
    }
    const int dim = 2 * k;
    ScaledMatrix mat(dim, std::vector<ScaledComplex>(dim));
    int row = 0;
    for (const PointGroup& g : groups) {
      std::vector<std::vector<ScaledComplex>> derivs(dim);
      for (int j = 0; j < dim; ++j) derivs[j] = eval_monic_derivs(t, n + j, g.z, g.mult - 1);
      for (int r = 0; r < g.mult; ++r, ++row) {
        const ScaledComplex invf = inv_factorial(r);
        for (int j = 0; j < dim; ++j) mat[row][j] = derivs[j][r] * invf;
      }
    }
    return det_scaled(std::move(mat)) / confluent_vandermonde(groups);
  }

  // Kernel form: C_{N,K} det[W_I(lambda_i, mu_j)] / (Delta(lambda) Delta(mu)).
  t.check_norm_index(n + k - 1, "corr_products");
  double log_c = -k * static_cast<double>(t.log_c2[n + k - 1]);
  for (int l = n; l <= n + k - 1; ++l) log_c += t.log_c2[l];
  ScaledMatrix w(k, std::vector<ScaledComplex>(k));
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) w[i][j] = kernel_w1(t, n + k, lambda[i], mu[j]);
  }
  const std::vector<cplx> lv(lambda.begin(), lambda.end());
  const std::vector<cplx> mv(mu.begin(), mu.end());
  return ScaledComplex::from_log(log_c, 1.0) * det_scaled(std::move(w)) /
         (vandermonde(lv) * vandermonde(mv));
}

ScaledComplex corr_ratios(const RecurrenceTable& t, const EnsembleConfig& cfg,
                          const QuadratureSpec& q, std::span<const cplx> eps,
                          std::span<const cplx> mu) {
  const int k = checked_k(eps, mu, "corr_ratios");
  const int n = cfg.n;
  t.check_degree(n, "corr_ratios");
  require_off_axis(t, eps, "corr_ratios");
  if (any_internal_coincidence(eps) || any_internal_coincidence(mu)) {
    // Repeats inside one vector need derivative rows; the general
    // determinant supplies them.
    return corr_general(t, cfg, q, eps, mu);
  }

  // Cross-regularized W_II determinant: fold the cross-Vandermonde factors
  // of Delta(eps,mu) into the matrix so that eps_i = mu_j is a removable
  // point.  B_ij = A(eps_i, mu_j) prod_{l != j} (mu_l - eps_i) with
  // A(e, m) = h_N(e) pi_{N-1}(m) - h_{N-1}(e) pi_N(m), and
  // F_II = (-)^{K(K-1)/2} (-1)^K gamma_{N-1}^K det B / (Delta(eps) Delta(mu)).
  std::vector<TransformRequest> reqs;
  reqs.reserve(eps.size());
  for (cplx e : eps) reqs.push_back({e, 0});
  const auto h = cauchy_transforms(t, cfg, n - 1, n, reqs, q);

  std::vector<ScaledComplex> pn(k), pn1(k);
  for (int j = 0; j < k; ++j) {
    pn[j] = eval_monic(t, n, mu[j]).value;
    pn1[j] = eval_monic(t, n - 1, mu[j]).value;
  }
  ScaledMatrix b(k, std::vector<ScaledComplex>(k));
  for (int i = 0; i < k; ++i) {
    const ScaledComplex hn = h[i][1][0], hn1 = h[i][0][0];
    for (int j = 0; j < k; ++j) {
      ScaledComplex cross = ScaledComplex::one();
      for (int l = 0; l < k; ++l) {
        if (l != j) cross = cross * ScaledComplex::from(mu[l] - eps[i]);
      }
      b[i][j] = (hn * pn1[j] - hn1 * pn[j]) * cross;
    }
  }
  const double sign = (((k * (k - 1) / 2) + k) % 2 == 0) ? 1.0 : -1.0;
  const std::vector<cplx> ev(eps.begin(), eps.end());
  const std::vector<cplx> mv(mu.begin(), mu.end());
  return ScaledComplex::from(cplx(sign, 0.0)) * gamma_const(t, n - 1).pow_int(k) *
         det_scaled(std::move(b)) / (vandermonde(ev) * vandermonde(mv));
}

ScaledComplex corr_inverse(const RecurrenceTable& t, const EnsembleConfig& cfg,
                           const QuadratureSpec& q, std::span<const cplx> varpi,
                           std::span<const cplx> omega) {
  const int k = checked_k(varpi, omega, "corr_inverse");
  if (k > kInverseKCap) {
    throw PermutationBudgetExceeded("corr_inverse: K capped at " +
                                    std::to_string(kInverseKCap) + " ((2K)! terms)");
  }
  const int n = cfg.n;
  std::vector<cplx> eps(varpi.begin(), varpi.end());
  eps.insert(eps.end(), omega.begin(), omega.end());
  require_off_axis(t, eps, "corr_inverse");
  if (any_internal_coincidence(eps)) {
    return corr_general(t, cfg, q, eps, {});
  }
  t.check_norm_index(n - 2 * k, "corr_inverse");

  // All W_III values from one shared quadrature over the 2K points.
  const int idx = n - k;  // kernel index N-K; uses h_{idx}, h_{idx-1}
  std::vector<TransformRequest> reqs;
  for (cplx e : eps) reqs.push_back({e, 0});
  const auto h = cauchy_transforms(t, cfg, idx - 1, idx, reqs, q);
  const int two_k = 2 * k;
  ScaledMatrix w3(two_k, std::vector<ScaledComplex>(two_k));
  for (int a = 0; a < two_k; ++a) {
    for (int bidx = a + 1; bidx < two_k; ++bidx) {
      const ScaledComplex num = h[a][1][0] * h[bidx][0][0] - h[a][0][0] * h[bidx][1][0];
      w3[a][bidx] = num / ScaledComplex::from(eps[a] - eps[bidx]);
      w3[bidx][a] = w3[a][bidx];
    }
  }

  std::vector<int> perm(two_k);
  std::iota(perm.begin(), perm.end(), 0);
  ScaledAccumulator sum;
  do {
    ScaledMatrix block(k, std::vector<ScaledComplex>(k));
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) block[i][j] = w3[perm[i]][perm[k + j]];
    }
    std::vector<cplx> first(k), second(k);
    for (int i = 0; i < k; ++i) {
      first[i] = eps[perm[i]];
      second[i] = eps[perm[k + i]];
    }
    sum.add(det_scaled(std::move(block)) / (vandermonde(first) * vandermonde(second)));
  } while (std::next_permutation(perm.begin(), perm.end()));

  // Prefactor (-1)^K gamma_{N-K-1}^K prod_{l=N-K}^{N-1} gamma_l / (2K)!:
  // the kernel-index gamma to the K-th power plus one gamma per remaining
  // transform row, pinned against corr_general and the small-N quadrature
  // oracle (and the K = 0 limit of the denominator-heavy mixed form).
  const double sign = (k % 2 == 0) ? 1.0 : -1.0;
  const ScaledComplex pref =
      gamma_const(t, idx - 1).pow_int(k) * gamma_product(t, n - k, n - 1);
  return ScaledComplex::from(cplx(sign, 0.0)) * pref * sum.result() *
         ScaledComplex::from_log(-std::lgamma(two_k + 1.0), 1.0);
}

ScaledComplex corr_mixed_more_num(const RecurrenceTable& t, const EnsembleConfig& cfg,
                                  const QuadratureSpec& q, std::span<const cplx> eps,
                                  std::span<const cplx> mu) {
  const int k = static_cast<int>(mu.size());
  const int m = static_cast<int>(eps.size());
  if (!(k > m && m >= 1)) {
    throw std::invalid_argument("corr_mixed_more_num: needs K > M >= 1");
  }
  if ((k + m) % 2 != 0) {
    throw std::invalid_argument("corr_mixed_more_num: K + M must be even");
  }
  const int big_l = (k + m) / 2;
  const int n = cfg.n;
  const int idx = n - m + big_l;  // kernel index for both blocks
  t.check_degree(idx, "corr_mixed_more_num");
  require_off_axis(t, eps, "corr_mixed_more_num");

  std::vector<TransformRequest> reqs;
  for (cplx e : eps) reqs.push_back({e, 0});
  const auto h = cauchy_transforms(t, cfg, idx - 1, idx, reqs, q);

  // Columns are mu_{L-M+1}..mu_K.
  const int col0 = big_l - m;  // 0-based offset of the first column argument
  ScaledMatrix mat(big_l, std::vector<ScaledComplex>(big_l));
  for (int j = 0; j < big_l; ++j) {
    const cplx mc = mu[col0 + j];
    const ScaledComplex pn = eval_monic(t, idx, mc).value;
    const ScaledComplex pn1 = eval_monic(t, idx - 1, mc).value;
    for (int i = 0; i < m; ++i) {
      mat[i][j] = (h[i][1][0] * pn1 - h[i][0][0] * pn) / ScaledComplex::from(eps[i] - mc);
    }
    for (int i = 0; i < big_l - m; ++i) {
      mat[m + i][j] = kernel_w1(t, idx, mu[i], mc);
    }
  }

  std::vector<cplx> joined(eps.begin(), eps.end());
  for (int j = col0; j < k; ++j) joined.push_back(mu[j]);
  const std::vector<cplx> tail(mu.begin() + col0, mu.end());
  const std::vector<cplx> head(mu.begin(), mu.begin() + col0);
  const std::vector<cplx> ev(eps.begin(), eps.end());

  ScaledComplex pref = gamma_const(t, idx - 1).pow_int(big_l);
  for (int l = n; l <= idx - 1; ++l) pref = pref / gamma_const(t, l);
  // sign fixed by the corr_general cross-checks: one (-1)^{M(M-1)/2} for the
  // M Cauchy-transform rows, exactly as in the general determinant
  const double sign = ((m * (m - 1) / 2) % 2 == 0) ? 1.0 : -1.0;

  return ScaledComplex::from(cplx(sign, 0.0)) * pref * vandermonde(joined) *
         det_scaled(std::move(mat)) /
         (vandermonde(ev).pow_int(2) * vandermonde(tail).pow_int(2) * vandermonde(head));
}

ScaledComplex corr_mixed_more_den(const RecurrenceTable& t, const EnsembleConfig& cfg,
                                  const QuadratureSpec& q, std::span<const cplx> eps,
                                  std::span<const cplx> mu) {
  const int k = static_cast<int>(mu.size());
  const int m = static_cast<int>(eps.size());
  if (!(m > k && k >= 1)) {
    throw std::invalid_argument("corr_mixed_more_den: needs M > K >= 1");
  }
  if ((k + m) % 2 != 0) {
    throw std::invalid_argument("corr_mixed_more_den: K + M must be even");
  }
  if (m > kMixedDenMCap) {
    throw PermutationBudgetExceeded("corr_mixed_more_den: M capped at " +
                                    std::to_string(kMixedDenMCap));
  }
  const int big_l = (k + m) / 2;
  const int p = (m - k) / 2;  // number of W_III rows
  const int n = cfg.n;
  const int idx = n - m + big_l;
  t.check_degree(idx, "corr_mixed_more_den");
  t.check_norm_index(idx - 1, "corr_mixed_more_den");
  require_off_axis(t, eps, "corr_mixed_more_den");

  std::vector<TransformRequest> reqs;
  for (cplx e : eps) reqs.push_back({e, 0});
  const auto h = cauchy_transforms(t, cfg, idx - 1, idx, reqs, q);

  // Kernel caches: w2[a][i] = W_II(eps_a, mu_i), w3[a][b] = W_III(eps_a, eps_b).
  std::vector<std::vector<ScaledComplex>> w2(m, std::vector<ScaledComplex>(k));
  for (int i = 0; i < k; ++i) {
    const ScaledComplex pn = eval_monic(t, idx, mu[i]).value;
    const ScaledComplex pn1 = eval_monic(t, idx - 1, mu[i]).value;
    for (int a = 0; a < m; ++a) {
      w2[a][i] = (h[a][1][0] * pn1 - h[a][0][0] * pn) / ScaledComplex::from(eps[a] - mu[i]);
    }
  }
  ScaledMatrix w3(m, std::vector<ScaledComplex>(m));
  for (int a = 0; a < m; ++a) {
    for (int bdx = a + 1; bdx < m; ++bdx) {
      const ScaledComplex num = h[a][1][0] * h[bdx][0][0] - h[a][0][0] * h[bdx][1][0];
      w3[a][bdx] = num / ScaledComplex::from(eps[a] - eps[bdx]);
      w3[bdx][a] = w3[a][bdx];
    }
  }

  const std::vector<cplx> mv(mu.begin(), mu.end());
  std::vector<int> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  ScaledAccumulator sum;
  do {
    ScaledMatrix block(big_l, std::vector<ScaledComplex>(big_l));
    for (int j = 0; j < big_l; ++j) {
      const int cj = perm[p + j];
      for (int i = 0; i < k; ++i) block[i][j] = w2[cj][i];
      for (int i = 0; i < p; ++i) block[k + i][j] = w3[perm[i]][cj];
    }
    std::vector<cplx> joined(mu.begin(), mu.end());
    std::vector<cplx> tail, head;
    for (int j = 0; j < big_l; ++j) {
      joined.push_back(eps[perm[p + j]]);
      tail.push_back(eps[perm[p + j]]);
    }
    for (int i = 0; i < p; ++i) head.push_back(eps[perm[i]]);
    sum.add(vandermonde(joined) * det_scaled(std::move(block)) /
            (vandermonde(tail).pow_int(2) * vandermonde(head)));
  } while (std::next_permutation(perm.begin(), perm.end()));

  // gamma_{N-M+L-1}^L times the gammas N-M+L..N-1: gamma^M in total, one per
  // Cauchy-transform row of the equivalent general determinant.
  ScaledComplex pref = gamma_const(t, idx - 1).pow_int(big_l);
  for (int s = idx; s <= n - 1; ++s) pref = pref * gamma_const(t, s);
  // (-1)^{M(M-1)/2 + K}, pinned by the cross-checks; at K = 0 it collapses
  // to the (-1)^K of the pure-inverse correlator with M = 2K denominators
  const double sign = (((m * (m - 1) / 2) + k) % 2 == 0) ? 1.0 : -1.0;
  return ScaledComplex::from(cplx(sign, 0.0)) * pref *
         ScaledComplex::from_log(-std::lgamma(m + 1.0), 1.0) * sum.result() /
         vandermonde(mv).pow_int(2);
}

MomentPositive moment_positive(const RecurrenceTable& t, const EnsembleConfig& cfg,
                               const QuadratureSpec& q, double x, int k_pow) {
  if (k_pow < 1) throw std::invalid_argument("moment_positive: K >= 1");
  if (2 * k_pow > kConfluentOrderCap) {
    throw ConfluentOrderTooHigh("moment_positive: K too large for derivative depth");
  }
  const int n = cfg.n;
  t.check_degree(n + 2 * k_pow - 1, "moment_positive");
  const std::vector<cplx> args(k_pow, cplx(x, 0.0));
  MomentPositive out;
  out.exact = corr_products(t, cfg, q, args, args);

  // Limit-mode density when the closed form exists, else the kernel diagonal.
  double rho = 0.0;
  int mono_m = 0;
  if (cfg.potential.is_monomial(&mono_m)) {
    rho = equilibrium_for(cfg.potential).psi(x);
  } else {
    rho = kernel_kn(t, cfg, n, x, x) / n;
  }
  // Prefactor prod_{l=N}^{N+K-1} c_l^2 e^{K N V} (N rho)^{K^2} (2 pi)^{K(K-1)}:
  // the norm product is the kernel-form constant the determinant derivation
  // actually carries (it collapses to c_N^{2K} as N grows), and the
  // (2 pi)^{K(K-1)} is what the confluent limit of the S_I determinant
  // produces alongside Upsilon_K^+ (equal to 1 at K = 1).
  double log_pref = k_pow * n * cfg.potential(x) +
                    k_pow * k_pow * std::log(n * rho) +
                    k_pow * (k_pow - 1) * std::log(2.0 * M_PI);
  for (int l = n; l <= n + k_pow - 1; ++l) log_pref += t.log_c2[l];
  out.asymptotic =
      ScaledComplex::from_log(log_pref + log_upsilon_plus(k_pow), 1.0);
  out.universal_ratio = (out.exact / ScaledComplex::from_log(log_pref, 1.0)).value().real();
  return out;
}

MomentNegative moment_negative(const RecurrenceTable& t, const EnsembleConfig& cfg,
                               const QuadratureSpec& q, double x, double delta,
                               int k_pow) {
  if (k_pow < 1) throw std::invalid_argument("moment_negative: K >= 1");
  if (delta <= 0.0) throw std::invalid_argument("moment_negative: delta > 0 required");
  const int n = cfg.n;
  const double rho = kernel_kn(t, cfg, n, x, x) / n;
  const double off = delta / (2.0 * n * rho);
  const std::vector<cplx> plus(k_pow, cplx(x, off));
  const std::vector<cplx> minus(k_pow, cplx(x, -off));
  MomentNegative out;
  out.exact = corr_inverse(t, cfg, q, plus, minus);
  const double log_asym = k_pow * std::log(2.0 * M_PI) - k_pow * t.log_c2[n] -
                          k_pow * n * cfg.potential(x) +
                          k_pow * k_pow * std::log(n * rho / delta);
  out.asymptotic = ScaledComplex::from_log(log_asym, 1.0);
  return out;
}

}  // namespace charpoly
