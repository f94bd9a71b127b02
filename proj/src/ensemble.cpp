#include "charpoly/ensemble.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "charpoly/errors.hpp"

namespace charpoly {

Potential::Potential(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw std::invalid_argument("Potential: empty coefficient list");
  for (double c : coeffs_) {
    if (!std::isfinite(c)) throw std::invalid_argument("Potential: non-finite coefficient");
  }
  const int d = static_cast<int>(coeffs_.size());
  if (d < 2 || d % 2 != 0) {
    throw std::invalid_argument("Potential: degree must be even and >= 2");
  }
  if (coeffs_.back() <= 0.0) {
    throw std::invalid_argument("Potential: leading coefficient must be positive");
  }
}

Potential Potential::parse(const std::string& csv) {
  std::vector<double> cs;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &pos);
    } catch (const std::exception&) {
      throw UsageError("Potential::parse: bad coefficient '" + item + "'");
    }
    while (pos < item.size() && std::isspace(static_cast<unsigned char>(item[pos]))) ++pos;
    if (pos != item.size()) throw UsageError("Potential::parse: trailing junk in '" + item + "'");
    cs.push_back(v);
  }
  return Potential(std::move(cs));
}

std::string Potential::serialize() const {
  std::string out;
  char buf[40];
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", coeffs_[i]);
    if (i) out += ',';
    out += buf;
  }
  return out;
}

double Potential::operator()(double x) const {
  // Horner on V(x)/x, then multiply back.
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc * x;
}

double Potential::derivative(double x) const {
  double acc = 0.0;
  const int d = degree();
  for (int j = d; j >= 1; --j) acc = acc * x + j * coeffs_[j - 1];
  return acc;
}

std::pair<double, double> Potential::eval_with_derivative(double x) const {
  return {(*this)(x), derivative(x)};
}

bool Potential::is_even() const {
  for (int j = 1; j <= degree(); j += 2) {
    if (coeffs_[j - 1] != 0.0) return false;
  }
  return true;
}

bool Potential::is_monomial(int* m_out, double* c_out) const {
  const int d = degree();
  for (int j = 1; j < d; ++j) {
    if (coeffs_[j - 1] != 0.0) return false;
  }
  if (m_out) *m_out = d / 2;
  if (c_out) *c_out = coeffs_.back();
  return true;
}

std::pair<double, double> potential_eval(const Potential& v, double x) {
  return v.eval_with_derivative(x);
}

EnsembleConfig::EnsembleConfig(Potential v, int n_in) : potential(std::move(v)), n(n_in) {
  if (n < 1) throw std::invalid_argument("EnsembleConfig: n must be >= 1");
}

double log_weight(const EnsembleConfig& cfg, double x) {
  return -static_cast<double>(cfg.n) * cfg.potential(x);
}

QuadratureSpec::QuadratureSpec(double tol, double margin, int max_p)
    : rel_tol(tol), trunc_margin(margin), max_panels(max_p) {
  if (!(tol > 0.0 && tol < 1.0)) throw std::invalid_argument("QuadratureSpec: tol must be in (0,1)");
  if (max_p <= 0) throw std::invalid_argument("QuadratureSpec: panel budget must be positive");
}

double truncation_radius(const EnsembleConfig& cfg, int k_max, const QuadratureSpec& q) {
  const double target = std::log(q.rel_tol) - q.trunc_margin;
  auto margin = [&](double t) {
    const double lw = std::min(log_weight(cfg, t), log_weight(cfg, -t));
    return lw + 2.0 * k_max * std::log(std::max(t, 1.0)) - target;
  };
  double hi = 1.0;
  while (margin(hi) > 0.0) {
    hi *= 2.0;
    if (hi > 1e8) throw NonConvergedQuadrature("truncation_radius: weight decays too slowly");
  }
  double lo = hi * 0.5;
  if (hi == 1.0) lo = 1e-3;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (margin(mid) > 0.0 ? lo : hi) = mid;
  }
  return hi;
}

}  // namespace charpoly
