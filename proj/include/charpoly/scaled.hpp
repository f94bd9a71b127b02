#pragma once
#include <cmath>
#include <complex>
#include <limits>

namespace charpoly {

using cplx = std::complex<double>;

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Complex number stored as exp(log_mag) * phase with |phase| = 1.
// Survives the e^{±N V} growth of orthogonal polynomials and Cauchy
// transforms that overflows native doubles already at N ~ 40.
struct ScaledComplex {
  double log_mag = kNegInf;
  cplx phase{0.0, 0.0};

  ScaledComplex() = default;
  // Normalizing constructor: any nonzero `raw` is folded into log_mag.
  ScaledComplex(double lm, cplx raw);

  static ScaledComplex zero() { return {}; }
  static ScaledComplex one() { return {0.0, cplx(1.0, 0.0)}; }
  static ScaledComplex from(cplx v);
  static ScaledComplex from_log(double lm, cplx unit_phase);
  // exp(z) for complex z, kept scaled: log_mag = Re z, phase = e^{i Im z}.
  static ScaledComplex exponential(cplx z);

  bool is_zero() const { return log_mag == kNegInf; }
  cplx value() const;          // may over/underflow; fine for modest log_mag
  double abs() const { return std::exp(log_mag); }
  ScaledComplex conj() const { return from_log(log_mag, std::conj(phase)); }
  ScaledComplex pow_int(long k) const;
  ScaledComplex inverse() const;

  friend ScaledComplex operator*(const ScaledComplex& a, const ScaledComplex& b);
  friend ScaledComplex operator/(const ScaledComplex& a, const ScaledComplex& b);
  friend ScaledComplex operator+(const ScaledComplex& a, const ScaledComplex& b);
  friend ScaledComplex operator-(const ScaledComplex& a, const ScaledComplex& b);
  ScaledComplex operator-() const { return from_log(log_mag, -phase); }
  ScaledComplex& operator*=(const ScaledComplex& b) { return *this = *this * b; }
};

ScaledComplex operator*(const ScaledComplex& a, cplx b);
inline ScaledComplex operator*(cplx a, const ScaledComplex& b) { return b * a; }

// Streaming sum of scaled terms.  Keeps one floating scale and a complex
// accumulator; rescales whenever an incoming term dwarfs the current scale.
class ScaledAccumulator {
 public:
  void add(double log_mag, cplx phase);
  void add(const ScaledComplex& v) { add(v.log_mag, v.phase); }
  ScaledComplex result() const;

 private:
  double scale_ = kNegInf;
  cplx acc_{0.0, 0.0};
};

// |a-b| / max(|a|,|b|); 0 when both are zero.
double rel_diff(const ScaledComplex& a, const ScaledComplex& b);

}  // namespace charpoly
