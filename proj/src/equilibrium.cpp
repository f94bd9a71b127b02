#include "charpoly/equilibrium.hpp"

#include <cmath>
#include <functional>
#include <string>

#include "charpoly/errors.hpp"
#include "charpoly/kernels.hpp"
#include "charpoly/quadrature.hpp"

namespace charpoly {

double EquilibriumMeasure::scale() const { return std::pow(coeff, -1.0 / (2.0 * m)); }

double EquilibriumMeasure::h1(double u) const {
  // unit-coefficient factor evaluated at u = x / scale
  const double a0 = a / scale();
  double term = 1.0;  // prod (2l-1)/(2l)
  double acc = std::pow(u, 2 * m - 2);
  double a2j = 1.0;
  for (int j = 1; j <= m - 1; ++j) {
    term *= (2.0 * j - 1.0) / (2.0 * j);
    a2j *= a0 * a0;
    acc += std::pow(u, 2 * (m - 1 - j)) * a2j * term;
  }
  return acc;
}

double EquilibriumMeasure::psi(double x) const {
  if (std::abs(x) >= a) return 0.0;
  const double s = scale();
  const double u = x / s;
  const double a0 = a / s;
  return (m / M_PI) * std::sqrt(a0 * a0 - u * u) * h1(u) / s;
}

EquilibriumMeasure equilibrium_monomial(int m) {
  if (m < 1) throw std::invalid_argument("equilibrium_monomial: m must be >= 1");
  EquilibriumMeasure meas;
  meas.m = m;
  meas.coeff = 1.0;
  double prod = static_cast<double>(m);
  for (int l = 1; l <= m; ++l) prod *= (2.0 * l - 1.0) / (2.0 * l);
  meas.a = std::pow(prod, -1.0 / (2.0 * m));
  return meas;
}

EquilibriumMeasure equilibrium_for(const Potential& v) {
  int m = 0;
  double c = 0.0;
  if (!v.is_monomial(&m, &c)) {
    throw UnsupportedPotential(
        "equilibrium closed forms exist only for V = c x^{2m}; use finite_n mode");
  }
  EquilibriumMeasure meas = equilibrium_monomial(m);
  meas.coeff = c;
  meas.a *= meas.scale();
  return meas;
}

DensityAlpha density_and_alpha(const EnsembleConfig& cfg, double x, DensityMode mode,
                               const RecurrenceTable* table) {
  double rho = 0.0;
  if (mode == DensityMode::limit) {
    const EquilibriumMeasure meas = equilibrium_for(cfg.potential);
    if (std::abs(x) >= meas.a) {
      throw OutsideSupport("density_and_alpha: |x| >= " + std::to_string(meas.a));
    }
    rho = meas.psi(x);
  } else {
    if (!table) throw std::invalid_argument("density_and_alpha: finite_n mode needs a table");
    rho = kernel_kn(*table, cfg, cfg.n, x, x) / cfg.n;
  }
  const double vp = cfg.potential.derivative(x);
  return {rho, vp / (2.0 * rho)};
}

cplx resolvent_limit(const EnsembleConfig& cfg, double x) {
  const EquilibriumMeasure meas = equilibrium_for(cfg.potential);
  if (std::abs(x) >= meas.a) {
    throw OutsideSupport("resolvent_limit: x outside the support");
  }
  const double n = cfg.n;
  return cplx(-0.5 * n * cfg.potential.derivative(x), M_PI * n * meas.psi(x));
}

DensityAlpha invert_resolvent(cplx r, int n, double /*v_prime*/) {
  const double n_rho = r.imag() / M_PI;
  return {n_rho / n, -M_PI * r.real() / r.imag()};
}

namespace {

// psi on the theta grid: x = a sin(theta) absorbs the endpoint square roots.
double integrate_theta(const EquilibriumMeasure& meas, int panels,
                       const std::function<double(double, double)>& f) {
  double acc = 0.0;
  for_each_node(uniform_panels(-M_PI / 2.0, M_PI / 2.0, panels), 16,
                [&](double th, double w) {
                  const double s = meas.a * std::sin(th);
                  const double ds = meas.a * std::cos(th);
                  acc += w * ds * f(s, th);
                });
  return acc;
}

}  // namespace

double hilbert_transform_psi(const EquilibriumMeasure& meas, double x) {
  if (std::abs(x) >= meas.a) {
    throw OutsideSupport("hilbert_transform_psi: x outside the support");
  }
  const double psix = meas.psi(x);
  double prev = 0.0;
  for (int panels = 32;; panels *= 2) {
    const double sub = integrate_theta(meas, panels, [&](double s, double) {
      const double d = x - s;
      if (std::abs(d) < 1e-13) return -0.0;  // removable point; slope handled by neighbors
      return (meas.psi(s) - psix) / d;
    });
    const double val = (sub + psix * std::log((x + meas.a) / (meas.a - x))) / M_PI;
    if (panels > 32 && std::abs(val - prev) < 1e-11 * std::max(1.0, std::abs(val))) {
      return val;
    }
    if (panels > (1 << 14)) {
      throw NonConvergedQuadrature("hilbert_transform_psi: no convergence");
    }
    prev = val;
  }
}

double euler_lagrange_residual(const EquilibriumMeasure& meas, const Potential& v,
                               std::span<const double> grid) {
  double worst = 0.0;
  for (double x : grid) {
    const double lhs = hilbert_transform_psi(meas, x);
    const double rhs = v.derivative(x) / (2.0 * M_PI);
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

double effective_potential(const EquilibriumMeasure& meas, const Potential& v, double x) {
  // 2 \int log|x-y|^{-1} psi(y) dy + V(x); log singularity (when x is inside
  // the support) killed by a square-root substitution on each side.
  auto piece = [&](double lo, double hi) {
    if (hi - lo < 1e-14) return 0.0;
    // y = hi - t^2 walking from the singular end at `hi` when x == hi, etc.
    double acc = 0.0;
    const double len = hi - lo;
    const double tmax = std::sqrt(len);
    for_each_node(uniform_panels(0.0, tmax, 256), 16, [&](double t, double w) {
      const double y = hi - t * t;
      acc += w * 2.0 * t * std::log(std::abs(x - y)) * meas.psi(y);
    });
    return acc;
  };
  double integral = 0.0;
  if (x > -meas.a && x < meas.a) {
    integral = piece(-meas.a, x) + [&] {
      double acc = 0.0;
      const double len = meas.a - x;
      const double tmax = std::sqrt(len);
      for_each_node(uniform_panels(0.0, tmax, 256), 16, [&](double t, double w) {
        const double y = x + t * t;
        acc += w * 2.0 * t * std::log(std::abs(x - y)) * meas.psi(y);
      });
      return acc;
    }();
  } else {
    integral = piece(-meas.a, meas.a);
  }
  return -2.0 * integral + v(x);
}

}  // namespace charpoly
