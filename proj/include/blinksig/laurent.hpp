#pragma once

#include <gmpxx.h>

#include <complex>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace blinksig {

using Integer = mpz_class;
/// Exponent vector (d_1..d_m) of t_1^{d_1}...t_m^{d_m}; entries may be negative.
using Multidegree = std::vector<int>;

/// Multivariate Laurent polynomial over Z in t_1..t_m. Terms are kept in
/// lexicographic order of the multidegree and zero coefficients are never stored.
class LaurentPoly {
 public:
  explicit LaurentPoly(int vars = 0) : vars_(vars) {}

  static LaurentPoly constant(int vars, const Integer& c);
  static LaurentPoly monomial(const Multidegree& deg, const Integer& c);
  /// t_j, 0-based j.
  static LaurentPoly variable(int vars, int j);

  int vars() const { return vars_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<Multidegree, Integer>& terms() const { return terms_; }
  /// Coefficient of t^deg (zero when absent).
  Integer coefficient(const Multidegree& deg) const;

  /// Adds c * t^deg.
  void add_term(const Multidegree& deg, const Integer& c);

  LaurentPoly operator-() const;
  LaurentPoly& operator+=(const LaurentPoly& other);
  LaurentPoly& operator-=(const LaurentPoly& other);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);

  /// Multiplies by c * t^shift.
  LaurentPoly shifted(const Multidegree& shift, const Integer& c = 1) const;

  /// Exact quotient; throws std::domain_error if `divisor` does not divide *this
  /// in Z[t_1..t_m] (both operands must have non-negative exponents).
  LaurentPoly exact_divide(const LaurentPoly& divisor) const;

  /// Componentwise minimum exponent over all terms (zeros for the zero polynomial).
  Multidegree min_degree() const;

  bool operator==(const LaurentPoly& other) const { return vars_ == other.vars_ && terms_ == other.terms_; }

  /// Human-readable form with terms in descending lexicographic order, e.g.
  /// "t^2 - t + 1" (m = 1) or "t1^2*t2 - 3*t2^-1" (m >= 2).
  std::string to_string() const;

 private:
  void check_vars(const Multidegree& deg) const;

  int vars_;
  std::map<Multidegree, Integer> terms_;
};

/// Canonical representative up to units +-t^a: the componentwise minimum
/// exponent becomes zero and the leading (lexicographically largest) term has a
/// positive coefficient. normalize(0) = 0.
LaurentPoly normalize(const LaurentPoly& p);

/// Term-by-term evaluation at z (all coordinates nonzero).
std::complex<double> eval(const LaurentPoly& p, std::span<const std::complex<double>> z);

/// Dense matrix of Laurent polynomials sharing one variable count.
class LaurentMatrix {
 public:
  LaurentMatrix(int rows, int cols, int vars);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int vars() const { return vars_; }

  LaurentPoly& operator()(int r, int c) { return entries_[index(r, c)]; }
  const LaurentPoly& operator()(int r, int c) const { return entries_[index(r, c)]; }

  bool operator==(const LaurentMatrix& other) const = default;

 private:
  std::size_t index(int r, int c) const {
    return static_cast<std::size_t>(r) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(c);
  }

  int rows_;
  int cols_;
  int vars_;
  std::vector<LaurentPoly> entries_;
};

/// Exact determinant. Each row is multiplied by a monomial so that all
/// exponents are non-negative, fraction-free (Bareiss) elimination with exact
/// polynomial division runs over Z[t], and the monomial factor is removed.
/// The 0x0 determinant is 1.
LaurentPoly det_bareiss(const LaurentMatrix& m);

}  // namespace blinksig
