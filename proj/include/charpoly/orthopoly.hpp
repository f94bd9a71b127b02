#pragma once
#include <vector>

#include "charpoly/ensemble.hpp"
#include "charpoly/scaled.hpp"

namespace charpoly {

// Three-term recurrence data for the monic family orthogonal under
// exp(-N V(x)):  pi_{k+1}(x) = (x - a_k) pi_k(x) - b_k pi_{k-1}(x).
// Monomial coefficients would be numerically useless past k ~ 30; the
// recurrence is stable and feeds Christoffel-Darboux directly.
struct RecurrenceTable {
  std::vector<double> a;       // a_k, k = 0..k_max-1
  std::vector<double> b;       // b_k, k = 1..k_max-1 (b[0] stays 0)
  std::vector<double> log_c2;  // log c_k^2, k = 0..k_max-1
  int k_max = 0;

  // Spectral estimate max_k(|a_k| + 2 sqrt(b_k)); scales the near-axis
  // guard for Cauchy transforms.
  double support_radius = 0.0;

  // eval_monic accepts degrees 0..k_max; norms/gammas exist for 0..k_max-1.
  int max_degree() const { return k_max; }
  void check_norm_index(int k, const char* who) const;
  void check_degree(int k, const char* who) const;
};

// Stieltjes procedure: alternately extend the recurrence and evaluate
// <x pi_k, pi_k> / <pi_k, pi_k> by composite Gauss-Legendre panels on the
// truncated interval, doubling the panel count until the table stabilizes
// to q.rel_tol.
RecurrenceTable build_recurrence(const EnsembleConfig& cfg, int k_max,
                                 const QuadratureSpec& q);

struct MonicEval {
  ScaledComplex value;
  ScaledComplex derivative;
};

// pi_k(z) and pi_k'(z) by the forward recurrence in scaled arithmetic.
MonicEval eval_monic(const RecurrenceTable& t, int k, cplx z);

// pi_k(z), pi_k'(z), ..., pi_k^{(order)}(z) (plain derivatives, no 1/r!).
std::vector<ScaledComplex> eval_monic_derivs(const RecurrenceTable& t, int k, cplx z,
                                             int order);

// gamma_k = -2 pi i / c_k^2.
ScaledComplex gamma_const(const RecurrenceTable& t, int k);

// c_k^2 as a scaled value.
ScaledComplex norm_c2(const RecurrenceTable& t, int k);

// Streams (log|pi_k(x)|, sign pi_k(x)) for k = 0..k_hi at a real node.
// Hot path shared by the table build and all quadratures.
template <typename F>
void monic_real_stream(const RecurrenceTable& t, double x, int k_hi, F&& f) {
  double scale = 0.0;
  double prev = 0.0, cur = 1.0;
  for (int k = 0;; ++k) {
    if (cur == 0.0) {
      f(k, kNegInf, 1.0);
    } else {
      f(k, scale + std::log(std::abs(cur)), cur > 0 ? 1.0 : -1.0);
    }
    if (k == k_hi) break;
    double next = (x - t.a[k]) * cur - (k > 0 ? t.b[k] * prev : 0.0);
    prev = cur;
    cur = next;
    const double m = std::max(std::abs(cur), std::abs(prev));
    if (m > 1e100) {
      const double lm = std::log(m);
      scale += lm;
      const double inv = 1.0 / m;
      cur *= inv;
      prev *= inv;
    }
  }
}

}  // namespace charpoly
