#pragma once
#include <span>
#include <vector>

#include "charpoly/ensemble.hpp"
#include "charpoly/orthopoly.hpp"
#include "charpoly/scaled.hpp"

namespace charpoly {

// One evaluation point with the highest derivative order wanted there.
struct TransformRequest {
  cplx eps;
  int max_order = 0;
};

// h_k^{(r)}(eps) for every k in [k_lo, k_hi] and every request, in one
// shared quadrature: result[q][k - k_lo][r].
//
// h_k(eps) = (1/2 pi i) \int pi_k(x) e^{-N V(x)} / (x - eps) dx, and the
// r-th derivative swaps 1/(x-eps) for r!/(x-eps)^{r+1} under the integral
// (exact for the analytic integrand; no step-size tuning involved).
std::vector<std::vector<std::vector<ScaledComplex>>> cauchy_transforms(
    const RecurrenceTable& t, const EnsembleConfig& cfg, int k_lo, int k_hi,
    std::span<const TransformRequest> requests, const QuadratureSpec& q);

// Single transform h_k(eps).
ScaledComplex eval_cauchy(const RecurrenceTable& t, const EnsembleConfig& cfg, int k,
                          cplx eps, const QuadratureSpec& q);

// result[i][j] = h_{ks[i]}(eps[j]); shares quadrature nodes across the batch.
std::vector<std::vector<ScaledComplex>> cauchy_batch(const RecurrenceTable& t,
                                                     const EnsembleConfig& cfg,
                                                     const std::vector<int>& ks,
                                                     const std::vector<cplx>& eps,
                                                     const QuadratureSpec& q);

// Rejects points with |Im eps| below 1e-4 * support radius (quasi-singular
// integrand) or exactly on the axis.
void check_off_axis(const RecurrenceTable& t, cplx eps, const char* who);

}  // namespace charpoly
