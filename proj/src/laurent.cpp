#include "blinksig/laurent.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace blinksig {

LaurentPoly LaurentPoly::constant(int vars, const Integer& c) {
  LaurentPoly p(vars);
  p.add_term(Multidegree(static_cast<std::size_t>(vars), 0), c);
  return p;
}

LaurentPoly LaurentPoly::monomial(const Multidegree& deg, const Integer& c) {
  LaurentPoly p(static_cast<int>(deg.size()));
  p.add_term(deg, c);
  return p;
}

LaurentPoly LaurentPoly::variable(int vars, int j) {
  if (j < 0 || j >= vars) throw std::out_of_range("variable index outside 0..vars-1");
  Multidegree deg(static_cast<std::size_t>(vars), 0);
  deg[static_cast<std::size_t>(j)] = 1;
  return monomial(deg, 1);
}

void LaurentPoly::check_vars(const Multidegree& deg) const {
  if (static_cast<int>(deg.size()) != vars_) throw std::invalid_argument("multidegree length does not match variable count");
}

Integer LaurentPoly::coefficient(const Multidegree& deg) const {
  const auto it = terms_.find(deg);
  return it == terms_.end() ? Integer(0) : it->second;
}

void LaurentPoly::add_term(const Multidegree& deg, const Integer& c) {
  check_vars(deg);
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(deg, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly out = *this;
  for (auto& [deg, c] : out.terms_) c = -c;
  return out;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& other) {
  if (other.vars_ != vars_) throw std::invalid_argument("Laurent polynomials in different variable counts");
  for (const auto& [deg, c] : other.terms_) add_term(deg, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& other) {
  if (other.vars_ != vars_) throw std::invalid_argument("Laurent polynomials in different variable counts");
  for (const auto& [deg, c] : other.terms_) add_term(deg, -c);
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.vars_ != b.vars_) throw std::invalid_argument("Laurent polynomials in different variable counts");
  LaurentPoly out(a.vars_);
  Multidegree deg(static_cast<std::size_t>(a.vars_));
  for (const auto& [da, ca] : a.terms_)
    for (const auto& [db, cb] : b.terms_) {
      for (std::size_t j = 0; j < deg.size(); ++j) deg[j] = da[j] + db[j];
      out.add_term(deg, ca * cb);
    }
  return out;
}

LaurentPoly LaurentPoly::shifted(const Multidegree& shift, const Integer& c) const {
  check_vars(shift);
  LaurentPoly out(vars_);
  if (c == 0) return out;
  for (const auto& [deg, coef] : terms_) {
    Multidegree d = deg;
    for (std::size_t j = 0; j < d.size(); ++j) d[j] += shift[j];
    out.terms_.emplace_hint(out.terms_.end(), std::move(d), coef * c);
  }
  return out;
}

LaurentPoly LaurentPoly::exact_divide(const LaurentPoly& divisor) const {
  if (divisor.vars_ != vars_) throw std::invalid_argument("Laurent polynomials in different variable counts");
  if (divisor.is_zero()) throw std::domain_error("division by zero polynomial");
  LaurentPoly quotient(vars_);
  LaurentPoly rem = *this;
  const auto& [lead_deg, lead_coef] = *divisor.terms_.rbegin();
  Multidegree shift(static_cast<std::size_t>(vars_));
  // Lex order is a monomial order on N^m, so repeatedly cancelling the leading term terminates.
  while (!rem.is_zero()) {
    const auto& [rd, rc] = *rem.terms_.rbegin();
    for (std::size_t j = 0; j < shift.size(); ++j) {
      shift[j] = rd[j] - lead_deg[j];
      if (shift[j] < 0 || rd[j] < 0) throw std::domain_error("polynomial division is not exact");
    }
    if (!mpz_divisible_p(rc.get_mpz_t(), lead_coef.get_mpz_t())) throw std::domain_error("polynomial division is not exact");
    const Integer factor = rc / lead_coef;
    quotient.add_term(shift, factor);
    rem -= divisor.shifted(shift, factor);
  }
  return quotient;
}

Multidegree LaurentPoly::min_degree() const {
  Multidegree out(static_cast<std::size_t>(vars_), 0);
  bool first = true;
  for (const auto& [deg, c] : terms_) {
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = first ? deg[j] : std::min(out[j], deg[j]);
    first = false;
  }
  return out;
}

std::string LaurentPoly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [deg, c] = *it;
    std::ostringstream mono;
    bool any_var = false;
    for (int j = 0; j < vars_; ++j) {
      const int d = deg[static_cast<std::size_t>(j)];
      if (d == 0) continue;
      if (any_var) mono << '*';
      mono << 't';
      if (vars_ > 1) mono << (j + 1);
      if (d != 1) mono << '^' << d;
      any_var = true;
    }
    const Integer mag = abs(c);
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    if (!any_var) {
      os << mag.get_str();
    } else {
      if (mag != 1) os << mag.get_str() << '*';
      os << mono.str();
    }
    first = false;
  }
  return os.str();
}

LaurentPoly normalize(const LaurentPoly& p) {
  if (p.is_zero()) return p;
  Multidegree shift = p.min_degree();
  for (int& d : shift) d = -d;
  const Integer sign = p.terms().rbegin()->second < 0 ? -1 : 1;
  return p.shifted(shift, sign);
}

std::complex<double> eval(const LaurentPoly& p, std::span<const std::complex<double>> z) {
  if (static_cast<int>(z.size()) != p.vars()) throw std::invalid_argument("evaluation point has wrong dimension");
  for (const auto& zj : z)
    if (zj == std::complex<double>(0.0, 0.0)) throw std::domain_error("Laurent polynomial evaluated at a zero coordinate");
  std::complex<double> sum = 0.0;
  for (const auto& [deg, c] : p.terms()) {
    std::complex<double> term = c.get_d();
    for (std::size_t j = 0; j < deg.size(); ++j)
      if (deg[j] != 0) term *= std::pow(z[j], deg[j]);
    sum += term;
  }
  return sum;
}

LaurentMatrix::LaurentMatrix(int rows, int cols, int vars)
    : rows_(rows), cols_(cols), vars_(vars),
      entries_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), LaurentPoly(vars)) {
  if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
}

LaurentPoly det_bareiss(const LaurentMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square Laurent matrix");
  const int n = m.rows();
  const int vars = m.vars();
  if (n == 0) return LaurentPoly::constant(vars, 1);

  // Clear negative exponents row by row and remember the total shift.
  std::vector<std::vector<LaurentPoly>> a(static_cast<std::size_t>(n));
  Multidegree total_shift(static_cast<std::size_t>(vars), 0);
  for (int r = 0; r < n; ++r) {
    Multidegree row_min(static_cast<std::size_t>(vars), 0);
    for (int c = 0; c < n; ++c) {
      const LaurentPoly& e = m(r, c);
      if (e.is_zero()) continue;
      const Multidegree md = e.min_degree();
      for (std::size_t j = 0; j < md.size(); ++j) row_min[j] = std::min(row_min[j], md[j]);
    }
    Multidegree shift(row_min.size());
    for (std::size_t j = 0; j < shift.size(); ++j) {
      shift[j] = -row_min[j];
      total_shift[j] += shift[j];
    }
    auto& row = a[static_cast<std::size_t>(r)];
    row.reserve(static_cast<std::size_t>(n));
    for (int c = 0; c < n; ++c) row.push_back(m(r, c).shifted(shift));
  }

  LaurentPoly prev = LaurentPoly::constant(vars, 1);
  int sign = 1;
  for (int k = 0; k + 1 < n; ++k) {
    if (a[k][k].is_zero()) {
      int pivot = -1;
      for (int i = k + 1; i < n; ++i)
        if (!a[i][k].is_zero()) {
          pivot = i;
          break;
        }
      if (pivot < 0) return LaurentPoly(vars);
      std::swap(a[k], a[pivot]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        LaurentPoly v = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        a[i][j] = k == 0 ? std::move(v) : v.exact_divide(prev);
      }
      a[i][k] = LaurentPoly(vars);
    }
    prev = a[k][k];
  }
  Multidegree undo(total_shift.size());
  for (std::size_t j = 0; j < undo.size(); ++j) undo[j] = -total_shift[j];
  return a[n - 1][n - 1].shifted(undo, sign);
}

}  // namespace blinksig
