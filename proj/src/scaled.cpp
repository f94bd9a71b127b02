#include "charpoly/scaled.hpp"

namespace charpoly {

ScaledComplex::ScaledComplex(double lm, cplx raw) {
  const double r = std::abs(raw);
  if (r == 0.0 || lm == kNegInf) {
    log_mag = kNegInf;
    phase = cplx(0.0, 0.0);
  } else {
    log_mag = lm + std::log(r);
    phase = raw / r;
  }
}

ScaledComplex ScaledComplex::from(cplx v) { return ScaledComplex(0.0, v); }

ScaledComplex ScaledComplex::from_log(double lm, cplx unit_phase) {
  ScaledComplex s;
  if (lm == kNegInf) return s;
  s.log_mag = lm;
  s.phase = unit_phase;
  return s;
}

ScaledComplex ScaledComplex::exponential(cplx z) {
  return from_log(z.real(), std::polar(1.0, z.imag()));
}

cplx ScaledComplex::value() const {
  if (is_zero()) return {0.0, 0.0};
  return std::exp(log_mag) * phase;
}

ScaledComplex ScaledComplex::pow_int(long k) const {
  if (k == 0) return one();
  if (is_zero()) return zero();
  return ScaledComplex(log_mag * static_cast<double>(k),
                       std::pow(phase, static_cast<double>(k)));
}

ScaledComplex ScaledComplex::inverse() const {
  if (is_zero()) return from_log(std::numeric_limits<double>::infinity(), 1.0);
  return ScaledComplex(-log_mag, std::conj(phase));
}

ScaledComplex operator*(const ScaledComplex& a, const ScaledComplex& b) {
  if (a.is_zero() || b.is_zero()) return ScaledComplex::zero();
  return ScaledComplex(a.log_mag + b.log_mag, a.phase * b.phase);
}

ScaledComplex operator*(const ScaledComplex& a, cplx b) {
  if (a.is_zero()) return ScaledComplex::zero();
  return ScaledComplex(a.log_mag, a.phase * b);
}

ScaledComplex operator/(const ScaledComplex& a, const ScaledComplex& b) {
  if (a.is_zero()) return ScaledComplex::zero();
  return ScaledComplex(a.log_mag - b.log_mag, a.phase * std::conj(b.phase));
}

ScaledComplex operator+(const ScaledComplex& a, const ScaledComplex& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const double m = std::max(a.log_mag, b.log_mag);
  const cplx s = a.phase * std::exp(a.log_mag - m) + b.phase * std::exp(b.log_mag - m);
  return ScaledComplex(m, s);
}

ScaledComplex operator-(const ScaledComplex& a, const ScaledComplex& b) {
  return a + (-b);
}

void ScaledAccumulator::add(double log_mag, cplx phase) {
  if (log_mag == kNegInf) return;
  if (scale_ == kNegInf) {
    scale_ = log_mag;
    acc_ = phase;
    return;
  }
  if (log_mag > scale_ + 40.0) {
    acc_ *= std::exp(scale_ - log_mag);
    scale_ = log_mag;
  }
  acc_ += phase * std::exp(log_mag - scale_);
  const double m = std::abs(acc_);
  if (m > 1e120) {
    scale_ += std::log(m);
    acc_ /= m;
  }
}

ScaledComplex ScaledAccumulator::result() const {
  if (scale_ == kNegInf) return ScaledComplex::zero();
  return ScaledComplex(scale_, acc_);
}

double rel_diff(const ScaledComplex& a, const ScaledComplex& b) {
  if (a.is_zero() && b.is_zero()) return 0.0;
  const ScaledComplex d = a - b;
  const double m = std::max(a.log_mag, b.log_mag);
  if (d.is_zero()) return 0.0;
  return std::exp(d.log_mag - m);
}

}  // namespace charpoly
