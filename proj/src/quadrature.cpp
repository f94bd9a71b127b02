#include "charpoly/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace charpoly {

namespace {

GaussLegendre compute_rule(int order) {
  GaussLegendre rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  const int m = (order + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Chebyshev initial guess, then Newton on P_n.
    double x = std::cos(M_PI * (i + 0.75) / (order + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < order; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = order * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[order - 1 - i] = x;
    rule.weights[i] = 2.0 / ((1.0 - x * x) * pp * pp);
    rule.weights[order - 1 - i] = rule.weights[i];
  }
  if (order % 2 == 1) rule.nodes[order / 2] = 0.0;
  return rule;
}

}  // namespace

const GaussLegendre& GaussLegendre::get(int order) {
  static std::mutex mtx;
  static std::map<int, GaussLegendre> cache;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, compute_rule(order)).first;
  return it->second;
}

std::vector<Panel> uniform_panels(double lo, double hi, int count) {
  std::vector<Panel> panels;
  panels.reserve(count);
  const double w = (hi - lo) / count;
  for (int i = 0; i < count; ++i) {
    panels.push_back({lo + i * w, (i + 1 == count) ? hi : lo + (i + 1) * w});
  }
  return panels;
}

void refine_near_point(std::vector<Panel>& panels, double center, double min_width) {
  if (min_width <= 0.0) throw std::invalid_argument("refine_near_point: min_width <= 0");
  std::vector<Panel> out;
  out.reserve(panels.size());
  std::vector<Panel> queue;
  for (const Panel& p : panels) queue.push_back(p);
  while (!queue.empty()) {
    Panel p = queue.back();
    queue.pop_back();
    const double dist =
        (center < p.lo) ? p.lo - center : (center > p.hi ? center - p.hi : 0.0);
    // A panel only needs splitting when it is both wide and close to the peak.
    if (p.width() > min_width && dist < 2.0 * p.width()) {
      const double mid = 0.5 * (p.lo + p.hi);
      queue.push_back({p.lo, mid});
      queue.push_back({mid, p.hi});
    } else {
      out.push_back(p);
    }
  }
  panels.swap(out);
}

}  // namespace charpoly
