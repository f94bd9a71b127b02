#include "charpoly/kernels.hpp"

#include <cmath>

#include "charpoly/errors.hpp"

namespace charpoly {

int kernel_index(KernelKind kind, int n, int k_shift) {
  switch (kind) {
    case KernelKind::I: return n + k_shift;
    case KernelKind::II: return n;
    case KernelKind::III: return n - k_shift;
  }
  return n;
}

ScaledComplex kernel_w1(const RecurrenceTable& t, int n, cplx lambda, cplx mu,
                        KernelDiagnostics* diag) {
  t.check_degree(n, "kernel_w1");
  if (n < 1) throw IndexOutOfTable("kernel_w1: needs n >= 1");
  const double sep = std::abs(lambda - mu);
  const double scale = 1.0 + std::abs(lambda);
  if (sep < 1e-8 * scale) {
    const MonicEval pn = eval_monic(t, n, lambda);
    const MonicEval pm = eval_monic(t, n - 1, lambda);
    return pn.derivative * pm.value - pn.value * pm.derivative;
  }
  if (diag && sep < 1e-4 * scale) diag->near_coincident = true;
  const ScaledComplex pn_l = eval_monic(t, n, lambda).value;
  const ScaledComplex pm_l = eval_monic(t, n - 1, lambda).value;
  const ScaledComplex pn_m = eval_monic(t, n, mu).value;
  const ScaledComplex pm_m = eval_monic(t, n - 1, mu).value;
  return (pn_l * pm_m - pn_m * pm_l) / ScaledComplex::from(lambda - mu);
}

ScaledComplex kernel_w2(const RecurrenceTable& t, const EnsembleConfig& cfg, int n,
                        cplx eps, cplx mu, const QuadratureSpec& q) {
  t.check_degree(n, "kernel_w2");
  if (n < 1) throw IndexOutOfTable("kernel_w2: needs n >= 1");
  check_off_axis(t, eps, "kernel_w2");
  if (eps == mu) throw CoincidentArguments("kernel_w2: eps == mu");
  const std::vector<int> ks{n - 1, n};
  auto h = cauchy_batch(t, cfg, ks, {eps}, q);
  const ScaledComplex pn = eval_monic(t, n, mu).value;
  const ScaledComplex pm = eval_monic(t, n - 1, mu).value;
  return (h[1][0] * pm - h[0][0] * pn) / ScaledComplex::from(eps - mu);
}

ScaledComplex kernel_w3(const RecurrenceTable& t, const EnsembleConfig& cfg, int n,
                        cplx eps, cplx omega, const QuadratureSpec& q) {
  t.check_degree(n, "kernel_w3");
  if (n < 1) throw IndexOutOfTable("kernel_w3: needs n >= 1");
  check_off_axis(t, eps, "kernel_w3");
  check_off_axis(t, omega, "kernel_w3");
  if (std::abs(eps - omega) < 1e-8 * (1.0 + std::abs(eps))) {
    // Confluent branch: h'_n h_{n-1} - h_n h'_{n-1}, derivatives taken
    // inside the quadrature.
    TransformRequest req{eps, 1};
    auto grid = cauchy_transforms(t, cfg, n - 1, n, std::span(&req, 1), q);
    return grid[0][1][1] * grid[0][0][0] - grid[0][1][0] * grid[0][0][1];
  }
  std::vector<TransformRequest> reqs{{eps, 0}, {omega, 0}};
  auto grid = cauchy_transforms(t, cfg, n - 1, n, reqs, q);
  const ScaledComplex he = grid[0][1][0], he1 = grid[0][0][0];
  const ScaledComplex hw = grid[1][1][0], hw1 = grid[1][0][0];
  return (he * hw1 - he1 * hw) / ScaledComplex::from(eps - omega);
}

double kernel_kn(const RecurrenceTable& t, const EnsembleConfig& cfg, int n, double x,
                 double y) {
  t.check_norm_index(n - 1, "kernel_kn");
  const ScaledComplex w1 = kernel_w1(t, n, cplx(x, 0.0), cplx(y, 0.0));
  // -gamma_{n-1}/(2 pi i) = 1/c_{n-1}^2
  const double log_pref = -t.log_c2[n - 1] +
                          0.5 * (log_weight(cfg, x) + log_weight(cfg, y));
  const ScaledComplex result = ScaledComplex::from_log(log_pref, 1.0) * w1;
  return result.value().real();
}

cplx limit_kernel(KernelKind kind, cplx zeta, cplx eta) {
  const cplx u = zeta - eta;
  switch (kind) {
    case KernelKind::I: {
      if (std::abs(u) < 1e-8) {
        // sinc expansion; keeps the removable point exact
        const cplx pu = M_PI * u;
        return 1.0 - pu * pu / 6.0;
      }
      return std::sin(M_PI * u) / (M_PI * u);
    }
    case KernelKind::II: {
      if (zeta.imag() == 0.0) {
        throw DomainViolation("limit_kernel: S_II undefined for Im zeta = 0");
      }
      const cplx i_pi_u = cplx(0.0, M_PI) * u;
      return (zeta.imag() > 0.0 ? std::exp(i_pi_u) : std::exp(-i_pi_u)) / u;
    }
    case KernelKind::III: {
      if (zeta.imag() == 0.0 || eta.imag() == 0.0) {
        throw DomainViolation("limit_kernel: S_III undefined on the axis");
      }
      if (zeta.imag() > 0.0 && eta.imag() < 0.0) return 1.0 / u;
      if (zeta.imag() < 0.0 && eta.imag() > 0.0) return -1.0 / u;
      return 0.0;
    }
  }
  return 0.0;
}

}  // namespace charpoly
