#include "charpoly/orthopoly.hpp"

#include <cmath>
#include <string>

#include "charpoly/errors.hpp"
#include "charpoly/quadrature.hpp"

namespace charpoly {

void RecurrenceTable::check_norm_index(int k, const char* who) const {
  if (k < 0 || k >= k_max) {
    throw IndexOutOfTable(std::string(who) + ": index " + std::to_string(k) +
                          " outside table of depth " + std::to_string(k_max));
  }
}

void RecurrenceTable::check_degree(int k, const char* who) const {
  if (k < 0 || k > k_max) {
    throw IndexOutOfTable(std::string(who) + ": degree " + std::to_string(k) +
                          " outside table of depth " + std::to_string(k_max));
  }
}

namespace {

// One Stieltjes pass at a fixed panelization.  Nodes never move between k
// steps, so pi_k is advanced in lockstep across all nodes.
struct StieltjesPass {
  std::vector<double> a, b, log_c2;
  bool ok = true;
};

StieltjesPass stieltjes_pass(const EnsembleConfig& cfg, int k_max, double radius,
                             const std::vector<Panel>& panels, int order) {
  StieltjesPass out;
  out.a.assign(k_max, 0.0);
  out.b.assign(k_max, 0.0);
  out.log_c2.assign(k_max, 0.0);

  struct Node {
    double x, logw;        // log(quad weight * exp(-N V))
    double scale, prev, cur;
  };
  std::vector<Node> nodes;
  nodes.reserve(panels.size() * order);
  for_each_node(panels, order, [&](double x, double w) {
    nodes.push_back({x, std::log(w) + log_weight(cfg, x), 0.0, 0.0, 1.0});
  });
  (void)radius;

  double log_n_prev = 0.0;
  for (int k = 0; k < k_max; ++k) {
    ScaledAccumulator norm_acc;   // <pi_k, pi_k>, positive terms
    ScaledAccumulator xnorm_acc;  // <x pi_k, pi_k>, signed
    for (const Node& nd : nodes) {
      if (nd.cur == 0.0) continue;
      const double lt = 2.0 * (nd.scale + std::log(std::abs(nd.cur))) + nd.logw;
      norm_acc.add(lt, 1.0);
      xnorm_acc.add(lt, cplx(nd.x, 0.0));
    }
    const ScaledComplex norm = norm_acc.result();
    if (norm.is_zero() || norm.phase.real() <= 0.0 || !std::isfinite(norm.log_mag)) {
      out.ok = false;
      return out;
    }
    out.log_c2[k] = norm.log_mag;
    const ScaledComplex ratio = xnorm_acc.result() / norm;
    out.a[k] = ratio.is_zero() ? 0.0 : ratio.value().real();
    if (k > 0) {
      out.b[k] = std::exp(norm.log_mag - log_n_prev);
      if (!(out.b[k] > 0.0) || !std::isfinite(out.b[k])) {
        out.ok = false;
        return out;
      }
    }
    log_n_prev = norm.log_mag;

    if (k + 1 == k_max) break;
    for (Node& nd : nodes) {
      const double next = (nd.x - out.a[k]) * nd.cur - (k > 0 ? out.b[k] * nd.prev : 0.0);
      nd.prev = nd.cur;
      nd.cur = next;
      const double m = std::max(std::abs(nd.cur), std::abs(nd.prev));
      if (m > 1e100) {
        nd.scale += std::log(m);
        const double inv = 1.0 / m;
        nd.cur *= inv;
        nd.prev *= inv;
      }
    }
  }
  return out;
}

double pass_distance(const StieltjesPass& p, const StieltjesPass& r) {
  double worst = 0.0;
  for (std::size_t k = 0; k < p.a.size(); ++k) {
    const double scale = std::max(1.0, std::sqrt(std::max(p.b[k], r.b[k])));
    worst = std::max(worst, std::abs(p.a[k] - r.a[k]) / scale);
    worst = std::max(worst, std::abs(p.log_c2[k] - r.log_c2[k]));
    if (k > 0 && p.b[k] > 0.0) {
      worst = std::max(worst, std::abs(p.b[k] - r.b[k]) / p.b[k]);
    }
  }
  return worst;
}

}  // namespace

RecurrenceTable build_recurrence(const EnsembleConfig& cfg, int k_max,
                                 const QuadratureSpec& q) {
  if (k_max < 1) throw std::invalid_argument("build_recurrence: k_max must be >= 1");
  const double radius = truncation_radius(cfg, k_max, q);

  int count = std::max(q.initial_panels, k_max / 2);
  StieltjesPass prev = stieltjes_pass(cfg, k_max, radius,
                                      uniform_panels(-radius, radius, count), q.panel_order);
  for (;;) {
    count *= 2;
    if (count > q.max_panels) {
      throw NonConvergedQuadrature("build_recurrence: panel budget exhausted at " +
                                   std::to_string(count) + " panels");
    }
    StieltjesPass cur = stieltjes_pass(cfg, k_max, radius,
                                       uniform_panels(-radius, radius, count), q.panel_order);
    if (prev.ok && cur.ok && pass_distance(prev, cur) < q.rel_tol) {
      prev = std::move(cur);
      break;
    }
    if (!cur.ok && count * 2 > q.max_panels) {
      throw LostPositivity(
          "build_recurrence: inner products lost positivity; raise quadrature "
          "precision or lower k_max");
    }
    prev = std::move(cur);
  }

  RecurrenceTable t;
  t.a = std::move(prev.a);
  t.b = std::move(prev.b);
  t.log_c2 = std::move(prev.log_c2);
  t.k_max = k_max;
  for (int k = 0; k < k_max; ++k) {
    t.support_radius = std::max(t.support_radius,
                                std::abs(t.a[k]) + 2.0 * std::sqrt(std::max(t.b[k], 0.0)));
  }
  if (t.support_radius == 0.0) t.support_radius = 1.0;
  return t;
}

MonicEval eval_monic(const RecurrenceTable& t, int k, cplx z) {
  auto d = eval_monic_derivs(t, k, z, 1);
  return {d[0], d[1]};
}

std::vector<ScaledComplex> eval_monic_derivs(const RecurrenceTable& t, int k, cplx z,
                                             int order) {
  t.check_degree(k, "eval_monic");
  if (order < 0) throw std::invalid_argument("eval_monic_derivs: negative order");
  const int r = order;
  std::vector<cplx> cur(r + 1, 0.0), prev(r + 1, 0.0), next(r + 1, 0.0);
  cur[0] = 1.0;  // pi_0 = 1, all derivatives 0
  double scale = 0.0;
  for (int j = 0; j < k; ++j) {
    for (int s = 0; s <= r; ++s) {
      next[s] = (z - t.a[j]) * cur[s] - (j > 0 ? t.b[j] * prev[s] : 0.0);
      if (s > 0) next[s] += static_cast<double>(s) * cur[s - 1];
    }
    prev = cur;
    cur = next;
    double m = 0.0;
    for (int s = 0; s <= r; ++s) m = std::max({m, std::abs(cur[s]), std::abs(prev[s])});
    if (m > 1e100) {
      scale += std::log(m);
      const double inv = 1.0 / m;
      for (int s = 0; s <= r; ++s) {
        cur[s] *= inv;
        prev[s] *= inv;
      }
    }
  }
  std::vector<ScaledComplex> out(r + 1);
  for (int s = 0; s <= r; ++s) out[s] = ScaledComplex(scale, cur[s]);
  return out;
}

ScaledComplex gamma_const(const RecurrenceTable& t, int k) {
  t.check_norm_index(k, "gamma_const");
  return ScaledComplex::from_log(std::log(2.0 * M_PI) - t.log_c2[k], cplx(0.0, -1.0));
}

ScaledComplex norm_c2(const RecurrenceTable& t, int k) {
  t.check_norm_index(k, "norm_c2");
  return ScaledComplex::from_log(t.log_c2[k], cplx(1.0, 0.0));
}

}  // namespace charpoly
