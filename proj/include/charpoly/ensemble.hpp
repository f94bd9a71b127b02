#pragma once
#include <string>
#include <utility>
#include <vector>

namespace charpoly {

// Real polynomial V(x) = sum_{j=1}^{d} c_j x^j with even degree and positive
// leading coefficient, so exp(-N V) is integrable and has moments of all
// orders.  There is deliberately no constant term: it would only shift the
// (never computed) normalization constant.
class Potential {
 public:
  explicit Potential(std::vector<double> coeffs);

  // Comma-separated coefficient list "c1,c2,...,cd"; "0,0.5" is 0.5 x^2.
  static Potential parse(const std::string& csv);
  std::string serialize() const;

  double operator()(double x) const;
  double derivative(double x) const;
  std::pair<double, double> eval_with_derivative(double x) const;

  int degree() const { return static_cast<int>(coeffs_.size()); }
  const std::vector<double>& coeffs() const { return coeffs_; }
  bool is_even() const;
  // True when V(x) = c x^{2m} for a single positive c; reports c and m.
  bool is_monomial(int* m_out = nullptr, double* c_out = nullptr) const;

 private:
  std::vector<double> coeffs_;  // coeffs_[j-1] multiplies x^j
};

// (value, derivative) of V at x, Horner order.
std::pair<double, double> potential_eval(const Potential& v, double x);

struct EnsembleConfig {
  Potential potential;
  int n;  // matrix dimension N; also the weight scale exp(-N V)

  EnsembleConfig(Potential v, int n_in);
};

// log of the orthogonality weight, -N V(x).  Callers exponentiate only
// inside scaled arithmetic.
double log_weight(const EnsembleConfig& cfg, double x);

struct QuadratureSpec {
  double rel_tol = 1e-11;      // target relative accuracy of inner products
  double trunc_margin = 700.0; // extra log-headroom past the tolerance
  int max_panels = 1 << 15;
  int panel_order = 24;        // Gauss-Legendre points per panel
  int initial_panels = 32;

  QuadratureSpec() = default;
  QuadratureSpec(double tol, double margin, int max_p);
};

// Smallest T such that log_weight(+-T) + 2 k_max log T stays below
// log(tol) - trunc_margin: every integrand pi_j pi_k w is negligible
// outside [-T, T].
double truncation_radius(const EnsembleConfig& cfg, int k_max, const QuadratureSpec& q);

}  // namespace charpoly
