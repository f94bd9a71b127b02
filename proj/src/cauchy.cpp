#include "charpoly/cauchy.hpp"

#include <cmath>
#include <string>

#include "charpoly/errors.hpp"
#include "charpoly/quadrature.hpp"

namespace charpoly {

void check_off_axis(const RecurrenceTable& t, cplx eps, const char* who) {
  const double guard = 1e-4 * t.support_radius;
  if (eps.imag() == 0.0) {
    throw OnRealAxis(std::string(who) + ": argument on the real axis");
  }
  if (std::abs(eps.imag()) < guard) {
    throw OnRealAxis(std::string(who) + ": |Im eps| below guard " +
                     std::to_string(guard));
  }
}

namespace {

using Grid3 = std::vector<std::vector<std::vector<ScaledComplex>>>;

Grid3 transform_pass(const RecurrenceTable& t, const EnsembleConfig& cfg, int k_lo,
                     int k_hi, std::span<const TransformRequest> requests,
                     const std::vector<Panel>& panels, int order) {
  const int nk = k_hi - k_lo + 1;
  const std::size_t nq = requests.size();

  // acc[q][k][r] over nodes
  std::vector<std::vector<std::vector<ScaledAccumulator>>> acc(nq);
  for (std::size_t qi = 0; qi < nq; ++qi) {
    acc[qi].assign(nk, std::vector<ScaledAccumulator>(requests[qi].max_order + 1));
  }

  std::vector<std::vector<ScaledComplex>> rational(nq);  // per node: (x-eps)^{-(r+1)} r!
  for_each_node(panels, order, [&](double x, double w) {
    const double logw = std::log(w) + log_weight(cfg, x);
    if (logw < -1400.0) return;  // below any representable contribution
    for (std::size_t qi = 0; qi < nq; ++qi) {
      const int ro = requests[qi].max_order;
      rational[qi].assign(ro + 1, ScaledComplex());
      const cplx d = cplx(x, 0.0) - requests[qi].eps;
      ScaledComplex inv = ScaledComplex::from(d).inverse();
      ScaledComplex cur = inv;
      double rfact = 1.0;
      for (int r = 0; r <= ro; ++r) {
        rational[qi][r] = ScaledComplex::from_log(std::log(rfact), 1.0) * cur;
        cur = cur * inv;
        rfact *= (r + 1);
      }
    }
    monic_real_stream(t, x, k_hi, [&](int k, double logp, double sign) {
      if (k < k_lo || logp == kNegInf) return;
      const double lt = logp + logw;
      for (std::size_t qi = 0; qi < nq; ++qi) {
        for (int r = 0; r <= requests[qi].max_order; ++r) {
          const ScaledComplex& rat = rational[qi][r];
          acc[qi][k - k_lo][r].add(lt + rat.log_mag, sign * rat.phase);
        }
      }
    });
  });

  // 1/(2 pi i) prefactor
  const ScaledComplex pref =
      ScaledComplex::from_log(-std::log(2.0 * M_PI), cplx(0.0, -1.0));
  Grid3 out(nq);
  for (std::size_t qi = 0; qi < nq; ++qi) {
    out[qi].assign(nk, std::vector<ScaledComplex>(requests[qi].max_order + 1));
    for (int k = 0; k < nk; ++k) {
      for (int r = 0; r <= requests[qi].max_order; ++r) {
        out[qi][k][r] = pref * acc[qi][k][r].result();
      }
    }
  }
  return out;
}

double grid_distance(const Grid3& a, const Grid3& b) {
  double worst = 0.0;
  for (std::size_t qi = 0; qi < a.size(); ++qi) {
    for (std::size_t k = 0; k < a[qi].size(); ++k) {
      for (std::size_t r = 0; r < a[qi][k].size(); ++r) {
        worst = std::max(worst, rel_diff(a[qi][k][r], b[qi][k][r]));
      }
    }
  }
  return worst;
}

}  // namespace

Grid3 cauchy_transforms(const RecurrenceTable& t, const EnsembleConfig& cfg, int k_lo,
                        int k_hi, std::span<const TransformRequest> requests,
                        const QuadratureSpec& q) {
  if (k_lo < 0 || k_hi > t.max_degree() || k_lo > k_hi) {
    throw IndexOutOfTable("cauchy_transforms: bad index range [" + std::to_string(k_lo) +
                          ", " + std::to_string(k_hi) + "]");
  }
  for (const TransformRequest& r : requests) check_off_axis(t, r.eps, "eval_cauchy");

  const double radius = truncation_radius(cfg, k_hi, q);
  auto make_panels = [&](int count) {
    std::vector<Panel> panels = uniform_panels(-radius, radius, count);
    for (const TransformRequest& r : requests) {
      if (std::abs(r.eps.real()) < radius) {
        refine_near_point(panels, r.eps.real(), std::abs(r.eps.imag()));
      }
    }
    return panels;
  };

  int count = std::max(q.initial_panels, t.k_max / 2);
  Grid3 prev = transform_pass(t, cfg, k_lo, k_hi, requests, make_panels(count),
                              q.panel_order);
  for (;;) {
    count *= 2;
    if (count > q.max_panels) {
      throw NonConvergedQuadrature("cauchy_transforms: panel budget exhausted");
    }
    Grid3 cur = transform_pass(t, cfg, k_lo, k_hi, requests, make_panels(count),
                               q.panel_order);
    if (grid_distance(prev, cur) < q.rel_tol) return cur;
    prev = std::move(cur);
  }
}

ScaledComplex eval_cauchy(const RecurrenceTable& t, const EnsembleConfig& cfg, int k,
                          cplx eps, const QuadratureSpec& q) {
  TransformRequest req{eps, 0};
  auto grid = cauchy_transforms(t, cfg, k, k, std::span(&req, 1), q);
  return grid[0][0][0];
}

std::vector<std::vector<ScaledComplex>> cauchy_batch(const RecurrenceTable& t,
                                                     const EnsembleConfig& cfg,
                                                     const std::vector<int>& ks,
                                                     const std::vector<cplx>& eps,
                                                     const QuadratureSpec& q) {
  if (ks.empty() || eps.empty()) return {};
  int k_lo = ks[0], k_hi = ks[0];
  for (int k : ks) {
    k_lo = std::min(k_lo, k);
    k_hi = std::max(k_hi, k);
  }
  std::vector<TransformRequest> reqs;
  reqs.reserve(eps.size());
  for (cplx e : eps) reqs.push_back({e, 0});
  auto grid = cauchy_transforms(t, cfg, k_lo, k_hi, reqs, q);
  std::vector<std::vector<ScaledComplex>> out(ks.size(),
                                              std::vector<ScaledComplex>(eps.size()));
  for (std::size_t i = 0; i < ks.size(); ++i) {
    for (std::size_t j = 0; j < eps.size(); ++j) {
      out[i][j] = grid[j][ks[i] - k_lo][0];
    }
  }
  return out;
}

}  // namespace charpoly
