#pragma once
#include <vector>

#include "charpoly/correlators.hpp"
#include "charpoly/ensemble.hpp"
#include "charpoly/equilibrium.hpp"
#include "charpoly/orthopoly.hpp"
#include "charpoly/scaled.hpp"

namespace charpoly {

enum class CorrKind { F1, F2, F3, F4, F5 };

// Dyson-scaled evaluation point: physical arguments are
// x + zeta_j / (N rho(x)) and x + eta_j / (N rho(x)).
struct ScalingPoint {
  double x = 0.0;
  std::vector<cplx> zeta;  // denominator-side offsets where applicable
  std::vector<cplx> eta;   // numerator-side offsets
  int n = 0;
};

// Closed-form large-N predictions for the five correlators: universal
// limiting-kernel determinants dressed with the equilibrium prefactors
// (c_N powers, e^{+-K N V}, (N rho)^{K^2}, gamma_N powers) carried in log
// space.  rho and alpha come from the closed-form equilibrium measure.
ScaledComplex dyson_predict(CorrKind kind, const ScalingPoint& pt,
                            const RecurrenceTable& t, const EnsembleConfig& cfg);

// [pi rho]^2 [1 - 2i sin(pi(e2-e1)) e^{-i pi (e2-e1)} / (pi(e2-e1))^2].
cplx two_point_closed(double rho, cplx eta1, cplx eta2);

// Same quantity via rho^2 d^2/d eta1 d eta2 of the F2 (K = 2) prediction at
// zeta = eta, by Richardson-extrapolated central differences.
cplx two_point_via_derivatives(double rho, cplx eta1, cplx eta2, double alpha = 0.0);

// Two-point resolvent correlation in the scaling limit; requires
// Im eta1 > 0 > Im eta2.
cplx two_point_resolvent(const EnsembleConfig& cfg, double x, cplx eta1, cplx eta2);

struct ConvergenceRow {
  int n;
  double abs_err;
  double rel_err;
};

struct ConvergenceStudy {
  std::vector<ConvergenceRow> rows;
  double fitted_order = 0.0;  // least-squares slope of -log err vs log N
};

// Exact finite-N correlator at scaled arguments vs the Dyson prediction,
// swept over N.  Scaling of the arguments defaults to the finite-N density
// K_N(x,x)/N; prediction prefactors always use the limit density.
ConvergenceStudy convergence_study(CorrKind kind, const ScalingPoint& pt_template,
                                   const std::vector<int>& n_list, const Potential& v,
                                   const QuadratureSpec& q,
                                   DensityMode scaling_mode = DensityMode::finite_n);

}  // namespace charpoly
