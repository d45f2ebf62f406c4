#include "blinksig/oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace blinksig::oracle {
namespace {

LaurentMatrix minor_of(const LaurentMatrix& m, int col) {
  const int n = m.rows();
  LaurentMatrix out(n - 1, n - 1, m.vars());
  for (int r = 1; r < n; ++r) {
    int cc = 0;
    for (int c = 0; c < n; ++c) {
      if (c == col) continue;
      out(r - 1, cc++) = m(r, c);
    }
  }
  return out;
}

}  // namespace

LaurentPoly cofactor_det(const LaurentMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("cofactor_det: non-square");
  const int n = m.rows();
  if (n == 0) return LaurentPoly::constant(m.vars(), 1);
  if (n == 1) return m(0, 0);
  LaurentPoly out(m.vars());
  for (int c = 0; c < n; ++c) {
    if (m(0, c).is_zero()) continue;
    const LaurentPoly term = m(0, c) * cofactor_det(minor_of(m, c));
    if (c % 2 == 0)
      out += term;
    else
      out -= term;
  }
  return out;
}

std::complex<double> cofactor_det(const std::vector<std::vector<std::complex<double>>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1.0;
  if (n == 1) return m[0][0];
  std::complex<double> out = 0.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::vector<std::complex<double>>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<std::complex<double>> row;
      for (std::size_t cc = 0; cc < n; ++cc)
        if (cc != c) row.push_back(m[r][cc]);
      minor.push_back(std::move(row));
    }
    const std::complex<double> term = m[0][c] * cofactor_det(minor);
    out += c % 2 == 0 ? term : -term;
  }
  return out;
}

std::vector<double> hermitian_2x2_eigenvalues(double a, std::complex<double> b, double d) {
  // lambda^2 - (a + d) lambda + (a d - |b|^2) = 0
  const double mean = 0.5 * (a + d);
  const double radius = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(b));
  return {mean - radius, mean + radius};
}

}  // namespace blinksig::oracle
