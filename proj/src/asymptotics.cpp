#include "charpoly/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "charpoly/errors.hpp"
#include "charpoly/kernels.hpp"
#include "charpoly/linalg.hpp"

namespace charpoly {

namespace {

void require_offsets_off_axis(const std::vector<cplx>& v, const char* who) {
  for (cplx z : v) {
    if (z.imag() == 0.0) {
      throw DomainViolation(std::string(who) + ": offset needs nonzero imaginary part");
    }
  }
}

ScaledComplex s2_regular_entry(cplx zeta, cplx eta) {
  // numerator of S_II: exp(+- i pi (zeta - eta)) by the sign of Im zeta
  const cplx u = zeta - eta;
  const cplx arg = (zeta.imag() > 0.0 ? cplx(0.0, M_PI) : cplx(0.0, -M_PI)) * u;
  return ScaledComplex::exponential(arg);
}

// F2 prediction with the cross factors oriented along the kernel
// denominators (zeta_i - eta_j), which the zeta = eta -> 1 continuation
// fixes: K = 1 reduces to e^{-alpha(z-e)} e^{i pi (z-e)}.
ScaledComplex dyson_f2(double alpha, const std::vector<cplx>& zeta,
                       const std::vector<cplx>& eta) {
  const int k = static_cast<int>(zeta.size());
  require_offsets_off_axis(zeta, "dyson_predict[F2]");
  cplx diff_sum = 0.0;
  for (int i = 0; i < k; ++i) diff_sum += zeta[i] - eta[i];
  ScaledMatrix b(k, std::vector<ScaledComplex>(k));
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      ScaledComplex cross = ScaledComplex::one();
      for (int l = 0; l < k; ++l) {
        if (l != j) cross = cross * ScaledComplex::from(zeta[i] - eta[l]);
      }
      b[i][j] = s2_regular_entry(zeta[i], eta[j]) * cross;
    }
  }
  const double sign = ((k * (k - 1) / 2) % 2 == 0) ? 1.0 : -1.0;
  return ScaledComplex::from(cplx(sign, 0.0)) *
         ScaledComplex::exponential(-alpha * diff_sum) * det_scaled(std::move(b)) /
         (vandermonde(zeta) * vandermonde(eta));
}

}  // namespace

ScaledComplex dyson_predict(CorrKind kind, const ScalingPoint& pt,
                            const RecurrenceTable& t, const EnsembleConfig& cfg) {
  const EquilibriumMeasure meas = equilibrium_for(cfg.potential);
  if (std::abs(pt.x) >= 0.9 * meas.a) {
    throw OutsideSupport("dyson_predict: x must sit inside 0.9 of the support");
  }
  const double rho = meas.psi(pt.x);
  const double alpha = cfg.potential.derivative(pt.x) / (2.0 * rho);
  const int n = pt.n > 0 ? pt.n : cfg.n;
  const double vx = cfg.potential(pt.x);
  const double log_nrho = std::log(n * rho);

  switch (kind) {
    case CorrKind::F2:
      return dyson_f2(alpha, pt.zeta, pt.eta);

    case CorrKind::F1: {
      const int k = static_cast<int>(pt.eta.size());
      if (static_cast<int>(pt.zeta.size()) != k || k < 1) {
        throw std::invalid_argument("dyson_predict[F1]: need |zeta| = |eta| = K >= 1");
      }
      t.check_norm_index(n, "dyson_predict[F1]");
      cplx off_sum = 0.0;
      for (int i = 0; i < k; ++i) off_sum += pt.zeta[i] + pt.eta[i];
      ScaledMatrix s(k, std::vector<ScaledComplex>(k));
      for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
          s[i][j] = ScaledComplex::from(limit_kernel(KernelKind::I, pt.zeta[i], pt.eta[j]));
        }
      }
      const double log_pref = k * t.log_c2[n] + k * n * vx + k * k * log_nrho;
      return ScaledComplex::from_log(log_pref, 1.0) *
             ScaledComplex::exponential(alpha * off_sum) * det_scaled(std::move(s)) /
             (vandermonde(pt.zeta) * vandermonde(pt.eta));
    }

    case CorrKind::F3: {
      const int two_k = static_cast<int>(pt.zeta.size());
      if (two_k < 2 || two_k % 2 != 0 || !pt.eta.empty()) {
        throw std::invalid_argument("dyson_predict[F3]: 2K offsets in zeta, eta empty");
      }
      const int k = two_k / 2;
      require_offsets_off_axis(pt.zeta, "dyson_predict[F3]");
      t.check_norm_index(n, "dyson_predict[F3]");
      cplx off_sum = 0.0;
      for (cplx z : pt.zeta) off_sum += z;

      std::vector<int> perm(two_k);
      std::iota(perm.begin(), perm.end(), 0);
      ScaledAccumulator sum;
      do {
        ScaledMatrix s(k, std::vector<ScaledComplex>(k));
        for (int i = 0; i < k; ++i) {
          for (int j = 0; j < k; ++j) {
            s[i][j] = ScaledComplex::from(
                limit_kernel(KernelKind::III, pt.zeta[perm[i]], pt.zeta[perm[k + j]]));
          }
        }
        std::vector<cplx> first(k), second(k);
        for (int i = 0; i < k; ++i) {
          first[i] = pt.zeta[perm[i]];
          second[i] = pt.zeta[perm[k + i]];
        }
        sum.add(det_scaled(std::move(s)) / (vandermonde(first) * vandermonde(second)));
      } while (std::next_permutation(perm.begin(), perm.end()));

      const double sign = (k % 2 == 0) ? 1.0 : -1.0;
      const double log_pref = k * k * log_nrho - k * n * vx - std::lgamma(two_k + 1.0);
      return ScaledComplex::from(cplx(sign, 0.0)) * gamma_const(t, n).pow_int(k) *
             ScaledComplex::from_log(log_pref, 1.0) *
             ScaledComplex::exponential(-alpha * off_sum) * sum.result();
    }

    case CorrKind::F4: {
      const int k = static_cast<int>(pt.eta.size());
      const int m = static_cast<int>(pt.zeta.size());
      if (!(k > m && m >= 1) || (k + m) % 2 != 0) {
        throw std::invalid_argument("dyson_predict[F4]: needs K > M >= 1, K + M even");
      }
      require_offsets_off_axis(pt.zeta, "dyson_predict[F4]");
      t.check_norm_index(n, "dyson_predict[F4]");
      const int big_l = (k + m) / 2;
      const int col0 = big_l - m;
      cplx diff_sum = 0.0;
      for (cplx z : pt.zeta) diff_sum += z;
      for (cplx z : pt.eta) diff_sum -= z;

      ScaledMatrix s(big_l, std::vector<ScaledComplex>(big_l));
      for (int j = 0; j < big_l; ++j) {
        const cplx col = pt.eta[col0 + j];
        for (int i = 0; i < m; ++i) {
          s[i][j] = ScaledComplex::from(limit_kernel(KernelKind::II, pt.zeta[i], col));
        }
        for (int i = 0; i < big_l - m; ++i) {
          s[m + i][j] = ScaledComplex::from(limit_kernel(KernelKind::I, pt.eta[i], col));
        }
      }
      std::vector<cplx> joined(pt.zeta.begin(), pt.zeta.end());
      joined.insert(joined.end(), pt.eta.begin() + col0, pt.eta.end());
      const std::vector<cplx> tail(pt.eta.begin() + col0, pt.eta.end());
      const std::vector<cplx> head(pt.eta.begin(), pt.eta.begin() + col0);

      const double sign = ((m * (k - 1) / 2) % 2 == 0) ? 1.0 : -1.0;
      const double lm = big_l - m;
      const double log_pref =
          0.5 * (k - m) * t.log_c2[n] + lm * lm * log_nrho + n * lm * vx;
      return ScaledComplex::from(cplx(sign, 0.0)) *
             ScaledComplex::from_log(log_pref, 1.0) *
             ScaledComplex::exponential(-alpha * diff_sum) * vandermonde(joined) *
             det_scaled(std::move(s)) /
             (vandermonde(pt.zeta).pow_int(2) * vandermonde(tail).pow_int(2) *
              vandermonde(head));
    }

    case CorrKind::F5: {
      const int k = static_cast<int>(pt.eta.size());
      const int m = static_cast<int>(pt.zeta.size());
      if (!(m > k && k >= 1) || (k + m) % 2 != 0) {
        throw std::invalid_argument("dyson_predict[F5]: needs M > K >= 1, K + M even");
      }
      require_offsets_off_axis(pt.zeta, "dyson_predict[F5]");
      t.check_norm_index(n, "dyson_predict[F5]");
      const int big_l = (k + m) / 2;
      const int p = (m - k) / 2;
      cplx diff_sum = 0.0;
      for (cplx z : pt.zeta) diff_sum += z;
      for (cplx z : pt.eta) diff_sum -= z;

      std::vector<int> perm(m);
      std::iota(perm.begin(), perm.end(), 0);
      ScaledAccumulator sum;
      do {
        ScaledMatrix s(big_l, std::vector<ScaledComplex>(big_l));
        std::vector<cplx> joined(pt.eta.begin(), pt.eta.end());
        std::vector<cplx> tail, head;
        for (int j = 0; j < big_l; ++j) {
          const cplx col = pt.zeta[perm[p + j]];
          joined.push_back(col);
          tail.push_back(col);
          for (int i = 0; i < k; ++i) {
            s[i][j] = ScaledComplex::from(limit_kernel(KernelKind::II, col, pt.eta[i]));
          }
          for (int i = 0; i < p; ++i) {
            s[k + i][j] = ScaledComplex::from(
                limit_kernel(KernelKind::III, pt.zeta[perm[i]], col));
          }
        }
        for (int i = 0; i < p; ++i) head.push_back(pt.zeta[perm[i]]);
        sum.add(vandermonde(joined) * det_scaled(std::move(s)) /
                (vandermonde(tail).pow_int(2) * vandermonde(head)));
      } while (std::next_permutation(perm.begin(), perm.end()));

      const double sign = ((m * (m - 1) / 2) % 2 == 0) ? 1.0 : -1.0;
      const double lk = big_l - k;
      const double log_pref = lk * lk * log_nrho + n * lk * vx - std::lgamma(m + 1.0);
      return ScaledComplex::from(cplx(sign, 0.0)) *
             gamma_const(t, n).pow_int(m - big_l) *
             ScaledComplex::from_log(log_pref, 1.0) *
             ScaledComplex::exponential(-alpha * diff_sum) * sum.result() /
             vandermonde(pt.eta).pow_int(2);
    }
  }
  throw std::invalid_argument("dyson_predict: unknown kind");
}

cplx two_point_closed(double rho, cplx eta1, cplx eta2) {
  const cplx u = eta2 - eta1;
  const cplx pu = M_PI * u;
  const double pr = M_PI * rho;
  return pr * pr * (1.0 - 2.0 * cplx(0.0, 1.0) * std::sin(pu) * std::exp(-cplx(0.0, 1.0) * pu) / (pu * pu));
}

cplx two_point_via_derivatives(double rho, cplx eta1, cplx eta2, double alpha) {
  if (!(eta1.imag() > 0.0 && eta2.imag() < 0.0)) {
    throw DomainViolation("two_point_via_derivatives: need Im eta1 > 0 > Im eta2");
  }
  const std::vector<cplx> zeta{eta1, eta2};
  auto g = [&](double s, double t) {
    const std::vector<cplx> eta{eta1 + s, eta2 + t};
    return dyson_f2(alpha, zeta, eta).value();
  };
  auto mixed = [&](double h) {
    return (g(h, h) - g(h, -h) - g(-h, h) + g(-h, -h)) / (4.0 * h * h);
  };
  const double h = 1e-2;
  const cplx d = (4.0 * mixed(h / 2.0) - mixed(h)) / 3.0;  // Richardson, O(h^4)
  return rho * rho * d;
}

cplx two_point_resolvent(const EnsembleConfig& cfg, double x, cplx eta1, cplx eta2) {
  if (!(eta1.imag() > 0.0 && eta2.imag() < 0.0)) {
    throw DomainViolation("two_point_resolvent: need Im eta1 > 0 > Im eta2");
  }
  const EquilibriumMeasure meas = equilibrium_for(cfg.potential);
  if (std::abs(x) >= 0.9 * meas.a) {
    throw OutsideSupport("two_point_resolvent: x outside the bulk");
  }
  return two_point_closed(meas.psi(x), eta1, eta2);
}

ConvergenceStudy convergence_study(CorrKind kind, const ScalingPoint& pt_template,
                                   const std::vector<int>& n_list, const Potential& v,
                                   const QuadratureSpec& q, DensityMode scaling_mode) {
  ConvergenceStudy study;
  const int k = static_cast<int>(pt_template.eta.size());
  const int m = static_cast<int>(pt_template.zeta.size());
  for (int n : n_list) {
    const EnsembleConfig cfg(v, n);
    const int depth = n + 2 * std::max(k, m) + 2;
    const RecurrenceTable table = build_recurrence(cfg, depth, q);

    const double rho_scale =
        scaling_mode == DensityMode::finite_n
            ? kernel_kn(table, cfg, n, pt_template.x, pt_template.x) / n
            : equilibrium_for(v).psi(pt_template.x);
    auto lift = [&](cplx offset) { return pt_template.x + offset / (n * rho_scale); };
    std::vector<cplx> eps, mu;
    for (cplx z : pt_template.zeta) eps.push_back(lift(z));
    for (cplx z : pt_template.eta) mu.push_back(lift(z));

    ScaledComplex exact;
    switch (kind) {
      case CorrKind::F1:
        // zeta carries the lambda-side offsets, eta the mu side
        exact = corr_products(table, cfg, q, eps, mu);
        break;
      case CorrKind::F2:
        exact = corr_ratios(table, cfg, q, eps, mu);
        break;
      case CorrKind::F3: {
        const std::vector<cplx> varpi(eps.begin(), eps.begin() + m / 2);
        const std::vector<cplx> omega(eps.begin() + m / 2, eps.end());
        exact = corr_inverse(table, cfg, q, varpi, omega);
        break;
      }
      case CorrKind::F4:
        exact = corr_mixed_more_num(table, cfg, q, eps, mu);
        break;
      case CorrKind::F5:
        exact = corr_mixed_more_den(table, cfg, q, eps, mu);
        break;
    }

    ScalingPoint pt = pt_template;
    pt.n = n;
    const ScaledComplex predicted = dyson_predict(kind, pt, table, cfg);
    const double rel = rel_diff(exact, predicted);
    const double abs_err = (exact - predicted).abs();
    study.rows.push_back({n, abs_err, rel});
  }

  // least-squares slope of log err vs log N
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int cnt = 0;
  for (const ConvergenceRow& r : study.rows) {
    if (r.rel_err <= 0.0) continue;
    const double lx = std::log(static_cast<double>(r.n));
    const double ly = std::log(r.rel_err);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++cnt;
  }
  if (cnt >= 2) {
    study.fitted_order = -(cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
  }
  return study;
}

}  // namespace charpoly
