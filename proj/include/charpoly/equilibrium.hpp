#pragma once
#include <span>
#include <vector>

#include "charpoly/ensemble.hpp"
#include "charpoly/orthopoly.hpp"
#include "charpoly/scaled.hpp"

namespace charpoly {

// Closed-form equilibrium measure for V(x) = c x^{2m}.  The paper's c = 1
// formulas extend to any c > 0 by the exact rescaling x -> c^{-1/(2m)} x,
// which this type carries so that e.g. x^2/2 works in limit mode.
struct EquilibriumMeasure {
  int m = 1;
  double coeff = 1.0;   // c in V = c x^{2m}
  double a = 0.0;       // support endpoint, density lives on (-a, a)

  double psi(double x) const;   // density; 0 outside the support
  double h1(double u) const;    // polynomial factor at unit coefficient
  double scale() const;         // c^{-1/(2m)}
};

// Measure for V(x) = x^{2m}:
//   psi(x) = (m/pi) sqrt(a^2 - x^2) h1(x),
//   h1(x)  = x^{2m-2} + sum_j x^{2m-2-2j} a^{2j} prod_{l<=j} (2l-1)/(2l),
//   a      = (m prod_{l=1}^m (2l-1)/(2l))^{-1/(2m)}.
// The -1/(2m) exponent is forced by the normalization \int psi = 1 (m = 1
// reduces to the familiar a = sqrt(2) semicircle).
EquilibriumMeasure equilibrium_monomial(int m);

// Same for V = c x^{2m}; throws UnsupportedPotential otherwise.
EquilibriumMeasure equilibrium_for(const Potential& v);

enum class DensityMode { finite_n, limit };

struct DensityAlpha {
  double rho;    // density of states
  double alpha;  // V'(x) / (2 rho)
};

// finite_n mode reads K_N(x,x)/N off the table; limit mode uses the
// closed-form psi (monomial-family potentials only).
DensityAlpha density_and_alpha(const EnsembleConfig& cfg, double x, DensityMode mode,
                               const RecurrenceTable* table = nullptr);

// Large-N averaged resolvent R_N^+(x) = i pi N rho(x) - N V'(x)/2 (limit rho).
cplx resolvent_limit(const EnsembleConfig& cfg, double x);

// Recovers N rho = Im R / pi and alpha = -pi Re R / Im R from a resolvent
// value; used to cross-check resolvent_limit against density_and_alpha.
DensityAlpha invert_resolvent(cplx r, int n, double v_prime);

// Hilbert transform (1/pi) PV \int psi(s)/(x-s) ds by singularity
// subtraction on the trig-substituted integral.
double hilbert_transform_psi(const EquilibriumMeasure& meas, double x);

// max_x |H psi(x) - V'(x)/(2 pi)| over the grid (grid strictly inside the
// support): the derivative form of the Euler-Lagrange condition with the
// Lagrange constant eliminated.
double euler_lagrange_residual(const EquilibriumMeasure& meas, const Potential& v,
                               std::span<const double> grid);

// Effective potential 2 \int log|x-y|^{-1} dmu(y) + V(x); the variational
// inequality is checked as U(x_out) - U(x_ref) >= -tol.
double effective_potential(const EquilibriumMeasure& meas, const Potential& v, double x);

}  // namespace charpoly
