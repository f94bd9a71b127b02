#include "charpoly/linalg.hpp"

#include <cmath>
#include <stdexcept>

namespace charpoly {

ScaledComplex det_scaled(ScaledMatrix m) {
  const std::size_t n = m.size();
  if (n == 0) return ScaledComplex::one();
  for (const auto& row : m) {
    if (row.size() != n) throw std::invalid_argument("det_scaled: non-square matrix");
  }

  double log_factor = 0.0;
  std::vector<double> row_scale(n, kNegInf);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      row_scale[i] = std::max(row_scale[i], m[i][j].log_mag);
    }
    if (row_scale[i] == kNegInf) return ScaledComplex::zero();
    log_factor += row_scale[i];
  }
  std::vector<double> col_scale(n, kNegInf);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      col_scale[j] = std::max(col_scale[j], m[i][j].log_mag - row_scale[i]);
    }
    if (col_scale[j] == kNegInf) return ScaledComplex::zero();
    log_factor += col_scale[j];
  }

  std::vector<std::vector<cplx>> a(n, std::vector<cplx>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      a[i][j] = m[i][j].is_zero()
                    ? cplx(0.0, 0.0)
                    : m[i][j].phase * std::exp(m[i][j].log_mag - row_scale[i] - col_scale[j]);
    }
  }

  double sign = 1.0;
  ScaledComplex det = ScaledComplex::from_log(log_factor, 1.0);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t i = c + 1; i < n; ++i) {
      if (std::abs(a[i][c]) > std::abs(a[piv][c])) piv = i;
    }
    if (std::abs(a[piv][c]) == 0.0) return ScaledComplex::zero();
    if (piv != c) {
      std::swap(a[piv], a[c]);
      sign = -sign;
    }
    det = det * ScaledComplex::from(a[c][c]);
    for (std::size_t i = c + 1; i < n; ++i) {
      const cplx f = a[i][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  return det * ScaledComplex::from(cplx(sign, 0.0));
}

cplx det_plain(std::vector<std::vector<cplx>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1.0;
  cplx det = 1.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t i = c + 1; i < n; ++i) {
      if (std::abs(m[i][c]) > std::abs(m[piv][c])) piv = i;
    }
    if (std::abs(m[piv][c]) == 0.0) return 0.0;
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      const cplx f = m[i][c] / m[c][c];
      for (std::size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  return det;
}

ScaledComplex vandermonde(const std::vector<cplx>& xs) {
  ScaledComplex out = ScaledComplex::one();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = i + 1; j < xs.size(); ++j) {
      out = out * ScaledComplex::from(xs[j] - xs[i]);
    }
  }
  return out;
}

}  // namespace charpoly
