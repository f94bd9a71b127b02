#include "charpoly/identities.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "charpoly/errors.hpp"
#include "charpoly/linalg.hpp"
#include "charpoly/rng.hpp"

namespace charpoly {

void RootSet::validate() const {
  for (std::size_t i = 0; i < roots.size(); ++i) {
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      if (std::abs(roots[i] - roots[j]) < 1e-10) {
        throw CoincidentRoots("RootSet: roots closer than 1e-10");
      }
    }
  }
}

namespace {

cplx char_poly(const std::vector<cplx>& roots, cplx z) {
  cplx p = 1.0;
  for (cplx r : roots) p *= (z - r);
  return p;
}

cplx char_poly_prime_at_root(const std::vector<cplx>& roots, std::size_t nu) {
  cplx p = 1.0;
  for (std::size_t j = 0; j < roots.size(); ++j) {
    if (j != nu) p *= (roots[nu] - roots[j]);
  }
  return p;
}

cplx vandermonde_plain(const std::vector<cplx>& xs) {
  cplx p = 1.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = i + 1; j < xs.size(); ++j) p *= (xs[j] - xs[i]);
  }
  return p;
}

int perm_sign(const std::vector<int>& p) {
  int inv = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = i + 1; j < p.size(); ++j) {
      if (p[i] > p[j]) ++inv;
    }
  }
  return (inv % 2) ? -1 : 1;
}

}  // namespace

double lagrange_checks(const RootSet& rs, cplx eps_probe, int k_lo, int k_hi) {
  rs.validate();
  const auto& x = rs.roots;
  const int n = static_cast<int>(x.size());
  for (cplx r : x) {
    if (std::abs(eps_probe - r) < 1e-10) {
      throw CoincidentRoots("lagrange_checks: probe coincides with a root");
    }
  }
  double worst = 0.0;
  for (int k = std::max(0, k_lo); k <= k_hi; ++k) {
    cplx moment_sum = 0.0, cauchy_sum = 0.0;
    for (int nu = 0; nu < n; ++nu) {
      const cplx xk = std::pow(x[nu], static_cast<double>(k));
      const cplx zp = char_poly_prime_at_root(x, nu);
      moment_sum += xk / zp;
      cauchy_sum += xk / ((eps_probe - x[nu]) * zp);
    }
    if (k <= n - 2) worst = std::max(worst, std::abs(moment_sum));
    if (k <= n - 1) {
      const cplx lhs = std::pow(eps_probe, static_cast<double>(k)) / char_poly(x, eps_probe);
      worst = std::max(worst, std::abs(lhs - cauchy_sum));
    }
  }
  return worst;
}

double partition_identity_check(int m_den, const RootSet& rs,
                                std::span<const cplx> eps) {
  rs.validate();
  const auto& x = rs.roots;
  const int n = static_cast<int>(x.size());
  if (n > 8) throw SizeBudgetExceeded("partition_identity_check: N <= 8");
  if (m_den < 1 || m_den > n || static_cast<int>(eps.size()) != m_den) {
    throw std::invalid_argument("partition_identity_check: need 1 <= M <= N probes");
  }
  for (cplx e : eps) {
    for (cplx r : x) {
      if (std::abs(e - r) < 1e-10) {
        throw CoincidentRoots("partition_identity_check: probe hits a root");
      }
    }
  }

  cplx lhs = 1.0;
  for (cplx e : eps) {
    lhs *= std::pow(e, static_cast<double>(n - m_den)) / char_poly(x, e);
  }

  // Coset representatives: M-subsets, ascending order inside both blocks.
  // Each summand is invariant under in-block reordering (the Delta ratio is
  // block-antisymmetric), but the block convention fixes a global
  // (-1)^{M(N-M)} relative to the product side.
  std::vector<int> pick(m_den);
  std::iota(pick.begin(), pick.end(), 0);
  cplx rhs = 0.0;
  for (;;) {
    std::vector<cplx> first, second, joined;
    std::vector<bool> in_first(n, false);
    for (int i : pick) in_first[i] = true;
    for (int i : pick) first.push_back(x[i]);
    for (int i = 0; i < n; ++i) {
      if (!in_first[i]) second.push_back(x[i]);
    }
    joined = first;
    joined.insert(joined.end(), second.begin(), second.end());

    cplx term = 1.0;
    for (cplx xi : first) {
      term *= std::pow(xi, static_cast<double>(n - m_den));
      for (cplx e : eps) term /= (e - xi);
    }
    term *= vandermonde_plain(first) * vandermonde_plain(second) /
            vandermonde_plain(joined);
    rhs += term;

    // next combination
    int i = m_den - 1;
    while (i >= 0 && pick[i] == n - m_den + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < m_den; ++j) pick[j] = pick[j - 1] + 1;
  }
  const double sign = ((m_den * (n - m_den)) % 2 == 0) ? 1.0 : -1.0;
  return std::abs(lhs - sign * rhs);
}

namespace {

// All partitions with at most max_parts parts and weight <= cap, by
// recursive descent with non-increasing parts.
void enumerate_partitions(int cap, int max_parts, std::vector<int>& cur,
                          std::vector<std::vector<int>>& out, int max_next) {
  out.push_back(cur);
  if (static_cast<int>(cur.size()) == max_parts) return;
  int used = 0;
  for (int p : cur) used += p;
  for (int next = std::min(max_next, cap - used); next >= 1; --next) {
    cur.push_back(next);
    enumerate_partitions(cap, max_parts, cur, out, next);
    cur.pop_back();
  }
}

cplx schur_bialternant(const std::vector<cplx>& xs, const std::vector<int>& lambda) {
  const int n = static_cast<int>(xs.size());
  if (static_cast<int>(lambda.size()) > n) return 0.0;
  std::vector<std::vector<cplx>> num(n, std::vector<cplx>(n));
  std::vector<std::vector<cplx>> den(n, std::vector<cplx>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const int lam_j = (j < static_cast<int>(lambda.size())) ? lambda[j] : 0;
      num[i][j] = std::pow(xs[i], static_cast<double>(lam_j + n - 1 - j));
      den[i][j] = std::pow(xs[i], static_cast<double>(n - 1 - j));
    }
  }
  return det_plain(std::move(num)) / det_plain(std::move(den));
}

}  // namespace

SchurCheckResult schur_expansion_check(std::span<const cplx> xs,
                                       std::span<const cplx> ys, int degree_cap) {
  const std::vector<cplx> x(xs.begin(), xs.end());
  const std::vector<cplx> y(ys.begin(), ys.end());
  double r = 0.0;
  cplx product = 1.0;
  for (cplx xi : x) {
    for (cplx yj : y) {
      const double m = std::abs(xi * yj);
      if (m > 0.5) {
        throw ConvergenceDomainViolated("schur_expansion_check: need |x_i y_j| <= 0.5");
      }
      r = std::max(r, m);
      product /= (1.0 - xi * yj);
    }
  }

  const int max_parts = static_cast<int>(std::min(x.size(), y.size()));
  std::vector<std::vector<int>> partitions;
  std::vector<int> cur;
  enumerate_partitions(degree_cap, max_parts, cur, partitions, degree_cap);

  cplx sum = 0.0;
  for (const auto& lambda : partitions) {
    sum += schur_bialternant(x, lambda) * schur_bialternant(y, lambda);
  }

  // Cauchy bound on the dropped weight-d coefficients of
  // F(t) = prod 1/(1 - t x_i y_j) at |x|,|y| moduli: a_d <= F(t0) / t0^d.
  double tail = 0.0;
  if (r > 0.0) {
    const double t0 = 1.0 / std::sqrt(r);
    double f_t0 = 1.0;
    for (cplx xi : x) {
      for (cplx yj : y) f_t0 /= (1.0 - t0 * std::abs(xi) * std::abs(yj));
    }
    tail = f_t0 * std::pow(t0, -(degree_cap + 1)) / (1.0 - 1.0 / t0);
  }
  return {std::abs(product - sum), std::max(tail, 1e-12)};
}

double appendix_sum_check(int n, int m, const std::vector<std::vector<double>>& f,
                          const std::vector<std::vector<double>>& g) {
  if (n < 0 || m < 1) throw std::invalid_argument("appendix_sum_check: n >= 0, m >= 1");
  const int total = n + m;
  if (total > 6) throw SizeBudgetExceeded("appendix_sum_check: n + m <= 6");
  if (static_cast<int>(f.size()) < total || static_cast<int>(g.size()) < total) {
    throw std::invalid_argument("appendix_sum_check: tables need n + m function rows");
  }

  // Route 1: raw double permutation sum.
  double raw = 0.0;
  std::vector<int> sigma(total), pi(total);
  std::iota(sigma.begin(), sigma.end(), 0);
  do {
    std::iota(pi.begin(), pi.end(), 0);
    do {
      bool match = true;
      for (int j = m; j < total; ++j) {
        if (sigma[j] != pi[j]) {
          match = false;
          break;
        }
      }
      if (!match) continue;
      double term = static_cast<double>(perm_sign(sigma) * perm_sign(pi));
      for (int i = 0; i < m; ++i) term *= f[sigma[i]][i] * g[pi[i]][i];
      raw += term;
    } while (std::next_permutation(pi.begin(), pi.end()));
  } while (std::next_permutation(sigma.begin(), sigma.end()));

  // Route 2: n! sum over decreasing index tuples of det x det.
  auto table_det = [&](const std::vector<std::vector<double>>& tab,
                       const std::vector<int>& ks) {
    std::vector<std::vector<cplx>> mat(m, std::vector<cplx>(m));
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) mat[i][j] = tab[ks[i]][j];
    }
    return det_plain(std::move(mat)).real();
  };
  double subsets = 0.0;
  std::vector<int> pick(m);
  std::iota(pick.begin(), pick.end(), 0);
  for (;;) {
    // pick ascending; the identity's k_1 > ... > k_m ordering flips both
    // determinants the same way, so the product is unchanged.
    subsets += table_det(f, pick) * table_det(g, pick);
    int i = m - 1;
    while (i >= 0 && pick[i] == total - m + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < m; ++j) pick[j] = pick[j - 1] + 1;
  }
  double n_fact = std::tgamma(n + 1.0);
  const double route2 = n_fact * subsets;

  // Route 3: n! det of the lambda-summed m x m kernel matrix.
  std::vector<std::vector<cplx>> kmat(m, std::vector<cplx>(m));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      double acc = 0.0;
      for (int lam = 0; lam < total; ++lam) acc += f[lam][i] * g[lam][j];
      kmat[i][j] = acc;
    }
  }
  const double route3 = n_fact * det_plain(std::move(kmat)).real();

  return std::max({std::abs(raw - route2), std::abs(raw - route3),
                   std::abs(route2 - route3)});
}

std::vector<IdentityReport> run_identity_suite(const std::string& suite,
                                               std::uint64_t seed) {
  Rng rng(seed);
  std::vector<IdentityReport> reports;
  const bool all = suite == "all";

  auto random_roots = [&](int n) {
    RootSet rs;
    while (static_cast<int>(rs.roots.size()) < n) {
      const cplx cand(4.0 * rng.uniform() - 2.0, 0.0);
      bool ok = true;
      for (cplx r : rs.roots) {
        if (std::abs(cand - r) < 1e-3) ok = false;
      }
      if (ok) rs.roots.push_back(cand);
    }
    return rs;
  };

  if (all || suite == "lagrange") {
    for (int n : {3, 6, 8}) {
      const RootSet rs = random_roots(n);
      const cplx probe(1.0 + rng.uniform(), 1.0);
      const double res = lagrange_checks(rs, probe, 0, n - 1);
      IdentityReport rep;
      rep.name = "lagrange_n" + std::to_string(n);
      rep.residual = res;
      rep.bound = 1e-10 * n * n;
      rep.pass = res <= rep.bound;
      reports.push_back(rep);
    }
  }
  if (all || suite == "partition") {
    for (auto [n, m] : std::vector<std::pair<int, int>>{{2, 1}, {5, 2}, {6, 3}, {8, 3}}) {
      const RootSet rs = random_roots(n);
      std::vector<cplx> eps;
      for (int i = 0; i < m; ++i) {
        eps.emplace_back(2.5 + rng.uniform(), 0.5 + rng.uniform());
      }
      const double res = partition_identity_check(m, rs, eps);
      IdentityReport rep;
      rep.name = "partition_n" + std::to_string(n) + "_m" + std::to_string(m);
      rep.residual = res;
      double combos = 1.0;
      for (int i = 0; i < m; ++i) combos = combos * (n - i) / (i + 1);
      rep.bound = 1e-10 * combos;
      rep.pass = res <= rep.bound;
      reports.push_back(rep);
    }
  }
  if (all || suite == "schur") {
    for (int trial = 0; trial < 2; ++trial) {
      std::vector<cplx> xs, ys;
      for (int i = 0; i < 2; ++i) {
        xs.emplace_back(0.6 * rng.uniform(), 0.3 * rng.uniform());
        ys.emplace_back(0.6 * rng.uniform(), 0.3 * rng.uniform());
      }
      const SchurCheckResult res = schur_expansion_check(xs, ys, 12);
      IdentityReport rep;
      rep.name = "schur_trial" + std::to_string(trial);
      rep.residual = res.residual;
      rep.bound = res.tail_bound;
      rep.pass = res.pass();
      reports.push_back(rep);
    }
  }
  if (all || suite == "appendix") {
    for (auto [n, m] : std::vector<std::pair<int, int>>{{0, 1}, {1, 1}, {2, 2}, {3, 2}}) {
      const int total = n + m;
      std::vector<std::vector<double>> f(total, std::vector<double>(m));
      std::vector<std::vector<double>> g(total, std::vector<double>(m));
      for (int lam = 0; lam < total; ++lam) {
        for (int i = 0; i < m; ++i) {
          f[lam][i] = 2.0 * rng.uniform() - 1.0;
          g[lam][i] = 2.0 * rng.uniform() - 1.0;
        }
      }
      const double res = appendix_sum_check(n, m, f, g);
      IdentityReport rep;
      rep.name = "appendix_n" + std::to_string(n) + "_m" + std::to_string(m);
      rep.residual = res;
      double fact = std::tgamma(total + 1.0);
      rep.bound = 1e-10 * fact * fact;
      rep.pass = res <= rep.bound;
      reports.push_back(rep);
    }
  }
  if (reports.empty()) {
    throw UsageError("run_identity_suite: unknown suite '" + suite + "'");
  }
  return reports;
}

}  // namespace charpoly
