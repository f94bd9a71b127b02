#pragma once
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "charpoly/scaled.hpp"

namespace charpoly {

// Eigenvalue stand-ins for the interpolation identities; pairwise distinct
// beyond 1e-10 separation.
struct RootSet {
  std::vector<cplx> roots;
  void validate() const;  // throws CoincidentRoots
};

// Both Lagrange consequences over K in [k_lo, k_hi]:
//   sum_nu x_nu^K / Z'(x_nu) = 0            for K <= N-2, and
//   eps^K / Z(eps) = sum_nu x_nu^K / ((eps - x_nu) Z'(x_nu)) for K <= N-1.
// Returns the max absolute residual.
double lagrange_checks(const RootSet& roots, cplx eps_probe, int k_lo, int k_hi);

// prod_l eps_l^{N-M} / Z(eps_l) against the coset sum over M-subsets with
// ascending in-block order; the (-1)^{M(N-M)} factor belongs to that block
// convention (checked, not assumed: M = 1 is partial fractions, M = N is a
// single trivial coset).
double partition_identity_check(int m_den, const RootSet& roots,
                                std::span<const cplx> eps);

struct SchurCheckResult {
  double residual;    // |product - truncated Schur sum|
  double tail_bound;  // geometric bound on the dropped |lambda| > cap terms
  bool pass() const { return residual <= tail_bound; }
};

// Cauchy-Littlewood: prod (1 - x_i y_j)^{-1} = sum_lambda s_lambda(x) s_lambda(y),
// with s_lambda evaluated through the bialternant ratio.  Requires
// |x_i y_j| <= 0.5 so the dropped tail admits a geometric bound.
SchurCheckResult schur_expansion_check(std::span<const cplx> xs,
                                       std::span<const cplx> ys, int degree_cap);

// The sum-to-determinant identity: computes the double permutation sum S
// three ways (raw sum, ordered-subset form, m x m determinant) on random
// value tables f[idx][point], g[idx][point]; returns the max pairwise
// discrepancy.  Budget: (n+m)!^2 raw terms, so n + m <= 6.
double appendix_sum_check(int n, int m, const std::vector<std::vector<double>>& f,
                          const std::vector<std::vector<double>>& g);

struct IdentityReport {
  std::string name;
  double residual = 0.0;
  double bound = 0.0;  // pass iff residual <= bound
  bool pass = false;
};

// Seeded random instances of all four identity families.
std::vector<IdentityReport> run_identity_suite(const std::string& suite,
                                               std::uint64_t seed);

}  // namespace charpoly
