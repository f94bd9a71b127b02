#pragma once
#include <span>
#include <vector>

#include "charpoly/cauchy.hpp"
#include "charpoly/ensemble.hpp"
#include "charpoly/orthopoly.hpp"
#include "charpoly/scaled.hpp"

namespace charpoly {

// Permutation-sum budgets: (2K)! terms for the inverse correlator, M! for
// the denominator-heavy mixed one.
inline constexpr int kInverseKCap = 4;
inline constexpr int kMixedDenMCap = 6;
inline constexpr int kConfluentOrderCap = 12;

// Coincidence threshold shared by all confluent handling:
// |a - b| < 1e-8 (1 + |a|) collapses points into one derivative group.
bool coincident(cplx a, cplx b);

// <prod_j Z[mu_j] / prod_j Z[eps_j]>: the (M+K) x (M+K) determinant of
// Cauchy-transform rows over monic-polynomial rows divided by the two
// Vandermondes, prefactor prod_{j=N-M}^{N-1} gamma_j.  Universal
// cross-check for the five specialized forms; supports odd K+M and any
// pattern of coincident arguments (derivative rows).
ScaledComplex corr_general(const RecurrenceTable& t, const EnsembleConfig& cfg,
                           const QuadratureSpec& q, std::span<const cplx> eps,
                           std::span<const cplx> mu);

// F_I: <prod Z[lambda_j] Z[mu_j]>.  Kernel-determinant form for distinct
// arguments; 2K x 2K polynomial-determinant form (with derivative rows for
// coincidences) when use_2k_form or when any arguments collide.
ScaledComplex corr_products(const RecurrenceTable& t, const EnsembleConfig& cfg,
                            const QuadratureSpec& q, std::span<const cplx> lambda,
                            std::span<const cplx> mu, bool use_2k_form = false);

// F_II: <prod Z[mu_j] / Z[eps_j]>.  Evaluated through the cross-regularized
// form of the W_II determinant, which is finite at eps_i = mu_j (the
// Vandermonde cross factors are folded into the matrix), so the
// det Y = 1 identity comes out exactly.
ScaledComplex corr_ratios(const RecurrenceTable& t, const EnsembleConfig& cfg,
                          const QuadratureSpec& q, std::span<const cplx> eps,
                          std::span<const cplx> mu);

// F_III: <prod 1/(Z[varpi_j] Z[omega_j])>, permutation sum over S_{2K} of
// W_III determinants.
ScaledComplex corr_inverse(const RecurrenceTable& t, const EnsembleConfig& cfg,
                           const QuadratureSpec& q, std::span<const cplx> varpi,
                           std::span<const cplx> omega);

// F_IV: K numerator, M < K denominator arguments, K+M = 2L; block
// determinant of W_II rows over W_I rows.
ScaledComplex corr_mixed_more_num(const RecurrenceTable& t, const EnsembleConfig& cfg,
                                  const QuadratureSpec& q, std::span<const cplx> eps,
                                  std::span<const cplx> mu);

// F_V: M > K, permutation sum over S_M of W_II / W_III block determinants.
ScaledComplex corr_mixed_more_den(const RecurrenceTable& t, const EnsembleConfig& cfg,
                                  const QuadratureSpec& q, std::span<const cplx> eps,
                                  std::span<const cplx> mu);

struct MomentPositive {
  ScaledComplex exact;       // <Z^{2K}[x]> by the fully confluent determinant
  ScaledComplex asymptotic;  // c_N^{2K} e^{K N V} (N rho)^{K^2} Upsilon_K^+
  double universal_ratio;    // exact / (c_N^{2K} e^{K N V} (N rho)^{K^2})
};
MomentPositive moment_positive(const RecurrenceTable& t, const EnsembleConfig& cfg,
                               const QuadratureSpec& q, double x, int k_pow);

struct MomentNegative {
  ScaledComplex exact;       // <Z^{-K}(x+) Z^{-K}(x-)> at x+- = x +- i d/(2 N rho)
  ScaledComplex asymptotic;  // (2 pi)^K c_N^{-2K} e^{-K N V} (N rho / d)^{K^2}
};
MomentNegative moment_negative(const RecurrenceTable& t, const EnsembleConfig& cfg,
                               const QuadratureSpec& q, double x, double delta,
                               int k_pow);

// prod_{l=0}^{K-1} l!/(l+K)!  (log scale)
double log_upsilon_plus(int k_pow);

}  // namespace charpoly
