#pragma once
#include <vector>

namespace charpoly {

// Gauss-Legendre rule on [-1, 1], cached per order.
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
  static const GaussLegendre& get(int order);
};

struct Panel {
  double lo = 0.0;
  double hi = 0.0;
  double width() const { return hi - lo; }
};

std::vector<Panel> uniform_panels(double lo, double hi, int count);

// Bisect panels lying near `center` until their width drops below
// `min_width`.  Resolves the quasi-singular peak of 1/(x - eps) when
// Im eps is small.
void refine_near_point(std::vector<Panel>& panels, double center, double min_width);

// Iterates f(x, w) over the mapped Gauss-Legendre points of every panel.
template <typename F>
void for_each_node(const std::vector<Panel>& panels, int order, F&& f) {
  const GaussLegendre& gl = GaussLegendre::get(order);
  for (const Panel& p : panels) {
    const double mid = 0.5 * (p.lo + p.hi);
    const double half = 0.5 * (p.hi - p.lo);
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
      f(mid + half * gl.nodes[i], half * gl.weights[i]);
    }
  }
}

}  // namespace charpoly
