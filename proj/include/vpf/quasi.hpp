/// @file quasi.hpp
/// Quasinumbers tau_{M,c,d} (indicators of M gamma = c mod d), quasipolynomials,
/// Bernoulli and tau-Bernoulli sums, and the interpolation identities that move
/// floors and shifts inside congruence indicators.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vpf/laurent.hpp"

namespace vpf {

inline Int mod_floor(Int a, Int d) {
  Int r = a % d;
  return r < 0 ? r + d : r;
}

namespace detail {

/// (g, u, v) with u*a + v*b = g = gcd(a, b) >= 0.
inline std::tuple<Int, Int, Int> ext_gcd(Int a, Int b) {
  Int old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    const Int q = old_r / r;
    std::tie(old_r, r) = std::make_tuple(r, old_r - q * r);
    std::tie(old_s, s) = std::make_tuple(s, old_s - q * s);
    std::tie(old_t, t) = std::make_tuple(t, old_t - q * t);
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

/// A unit w mod d with w*a = gcd(a, d) (mod d).
inline Int normalizing_unit(Int a, Int d) {
  const Int g = std::gcd(a, d);
  const Int dg = d / g;
  auto [h, u, v] = ext_gcd(a / g, dg);
  (void)h;
  (void)v;
  Int w = mod_floor(u, dg == 0 ? 1 : dg);
  while (std::gcd(w, d) != 1) w += dg;
  return mod_floor(w, d);
}

}  // namespace detail

/// Indicator of M gamma = c (mod d) on Z^n. Stored in a reduced echelon form
/// modulo d; equal objects denote equal functions, but not conversely.
class BasicQuasiNumber {
 public:
  using Row = std::vector<Int>;

  /// Absent when the system has no integer solution (the indicator is zero).
  static std::optional<BasicQuasiNumber> make(std::size_t n, std::vector<Row> m, Row c, Int d) {
    if (d < 1) fail(ErrorKind::DimensionMismatch, "modulus must be positive");
    if (m.size() != c.size()) fail(ErrorKind::DimensionMismatch, "row count differs from right-hand side");
    for (const auto& r : m)
      if (r.size() != n) fail(ErrorKind::DimensionMismatch, "row length differs from dimension");
    BasicQuasiNumber q;
    q.n_ = n;
    q.d_ = d;
    q.rows_ = std::move(m);
    q.c_ = std::move(c);
    if (!q.reduce()) return std::nullopt;
    return q;
  }

  static BasicQuasiNumber one(std::size_t n) {
    BasicQuasiNumber q;
    q.n_ = n;
    return q;
  }

  std::size_t dim() const { return n_; }
  Int modulus() const { return d_; }
  const std::vector<Row>& matrix() const { return rows_; }
  const Row& rhs() const { return c_; }
  bool is_one() const { return rows_.empty(); }

  bool operator()(const IntVector& g) const {
    if (g.size() != n_) fail(ErrorKind::DimensionMismatch, "point dimension differs from quasinumber");
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      Int s = -c_[i];
      for (std::size_t j = 0; j < n_; ++j) s = checked_add(s, checked_mul(rows_[i][j], g[j]));
      if (mod_floor(s, d_) != 0) return false;
    }
    return true;
  }

  /// Non-integral arguments lie off the lattice Z^n and give 0.
  bool operator()(std::span<const Rational> g) const {
    if (g.size() != n_) fail(ErrorKind::DimensionMismatch, "point dimension differs from quasinumber");
    IntVector z(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      if (g[i].get_den() != 1) return false;
      z[i] = to_int(g[i].get_num());
    }
    return (*this)(z);
  }

  friend bool operator==(const BasicQuasiNumber&, const BasicQuasiNumber&) = default;
  friend auto operator<=>(const BasicQuasiNumber&, const BasicQuasiNumber&) = default;

  std::string str() const {
    if (rows_.empty()) return "1";
    std::string s = "[";
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (i) s += "; ";
      for (std::size_t j = 0; j < n_; ++j) s += (j ? " " : "") + std::to_string(rows_[i][j]);
    }
    s += "] g = (";
    for (std::size_t i = 0; i < c_.size(); ++i) s += (i ? "," : "") + std::to_string(c_[i]);
    return s + ") mod " + std::to_string(d_);
  }

  std::string latex() const {
    if (rows_.empty()) return "1";
    std::string s = "\\tau_{\\left(\\begin{smallmatrix}";
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (i) s += "\\\\";
      for (std::size_t j = 0; j < n_; ++j) s += (j ? "&" : "") + std::to_string(rows_[i][j]);
    }
    s += "\\end{smallmatrix}\\right),\\left(\\begin{smallmatrix}";
    for (std::size_t i = 0; i < c_.size(); ++i) s += (i ? "\\\\" : "") + std::to_string(c_[i]);
    return s + "\\end{smallmatrix}\\right)," + std::to_string(d_) + "}";
  }

 private:
  BasicQuasiNumber() = default;

  // Echelon form by unimodular row operations modulo d; false if inconsistent.
  bool reduce() {
    if (d_ == 1) {
      rows_.clear();
      c_.clear();
      return true;
    }
    const std::size_t m = rows_.size();
    for (std::size_t i = 0; i < m; ++i) {
      for (auto& x : rows_[i]) x = mod_floor(x, d_);
      c_[i] = mod_floor(c_[i], d_);
    }
    auto combine = [&](std::size_t r, std::size_t i, Int u, Int v, Int p, Int q) {
      // row_r <- u row_r + v row_i ; row_i <- p row_r + q row_i
      for (std::size_t j = 0; j < n_; ++j) {
        const Int a = rows_[r][j], b = rows_[i][j];
        rows_[r][j] = mod_floor(checked_add(checked_mul(u, a), checked_mul(v, b)), d_);
        rows_[i][j] = mod_floor(checked_add(checked_mul(p, a), checked_mul(q, b)), d_);
      }
      const Int a = c_[r], b = c_[i];
      c_[r] = mod_floor(checked_add(checked_mul(u, a), checked_mul(v, b)), d_);
      c_[i] = mod_floor(checked_add(checked_mul(p, a), checked_mul(q, b)), d_);
    };
    std::size_t r = 0;
    for (std::size_t col = 0; col < n_ && r < m; ++col) {
      for (std::size_t i = r + 1; i < m; ++i) {
        const Int b = rows_[i][col];
        if (b == 0) continue;
        const Int a = rows_[r][col];
        auto [g, u, v] = detail::ext_gcd(a, b);
        combine(r, i, u, v, -b / g, a / g);
      }
      const Int a = rows_[r][col];
      if (a == 0) continue;
      const Int w = detail::normalizing_unit(a, d_);
      for (auto& x : rows_[r]) x = mod_floor(checked_mul(x, w), d_);
      c_[r] = mod_floor(checked_mul(c_[r], w), d_);
      const Int piv = rows_[r][col];
      for (std::size_t i = 0; i < r; ++i) {
        const Int f = rows_[i][col] / piv;
        if (f == 0) continue;
        for (std::size_t j = 0; j < n_; ++j) rows_[i][j] = mod_floor(rows_[i][j] - f * rows_[r][j], d_);
        c_[i] = mod_floor(c_[i] - f * c_[r], d_);
      }
      ++r;
    }
    for (std::size_t i = r; i < m; ++i)
      if (c_[i] != 0) return false;
    rows_.resize(r);
    c_.resize(r);

    // Exact solvability test (e.g. 2x = 1 mod 4 survives the echelon step).
    IntMatrix mm(rows_.size(), n_);
    std::vector<BigInt> cc(rows_.size());
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      for (std::size_t j = 0; j < n_; ++j) mm(i, j) = static_cast<long>(rows_[i][j]);
      cc[i] = static_cast<long>(c_[i]);
    }
    if (!rows_.empty() && !solve_mod(mm, cc, BigInt(static_cast<long>(d_)))) return false;

    // Common factor of everything, modulus included, can be divided out.
    Int g = d_;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      for (Int x : rows_[i]) g = std::gcd(g, x);
      g = std::gcd(g, c_[i]);
    }
    if (g > 1) {
      d_ /= g;
      for (std::size_t i = 0; i < rows_.size(); ++i) {
        for (auto& x : rows_[i]) x /= g;
        c_[i] /= g;
      }
      return reduce();
    }
    if (rows_.empty()) d_ = 1;
    return true;
  }

  std::size_t n_ = 0;
  Int d_ = 1;
  std::vector<Row> rows_;
  Row c_;
};

/// Product of two indicators, absent when the combined system is inconsistent.
inline std::optional<BasicQuasiNumber> tau_mul(const BasicQuasiNumber& a, const BasicQuasiNumber& b) {
  if (a.dim() != b.dim()) fail(ErrorKind::DimensionMismatch, "quasinumber dimensions differ");
  const Int d = std::lcm(a.modulus(), b.modulus());
  std::vector<BasicQuasiNumber::Row> m;
  BasicQuasiNumber::Row c;
  for (const auto* q : {&a, &b}) {
    const Int scale = d / q->modulus();
    for (std::size_t i = 0; i < q->matrix().size(); ++i) {
      BasicQuasiNumber::Row row = q->matrix()[i];
      for (auto& x : row) x = checked_mul(x, scale);
      m.push_back(std::move(row));
      c.push_back(checked_mul(q->rhs()[i], scale));
    }
  }
  return BasicQuasiNumber::make(a.dim(), std::move(m), std::move(c), d);
}

/// Indicator of gamma - delta lying in the lattice spanned by the generators.
inline BasicQuasiNumber from_lattice_shift(std::span<const IntVector> generators, const IntVector& delta) {
  const std::size_t n = delta.size();
  if (generators.size() != n || rank(generators) != n)
    fail(ErrorKind::NotFullRank, "lattice generators must be n independent vectors");
  const RationalMatrix inv = invert_rational_matrix(RationalMatrix::from_columns(generators));
  const Int d = to_int(element_order_lcm(generators));
  std::vector<BasicQuasiNumber::Row> m(n, BasicQuasiNumber::Row(n));
  BasicQuasiNumber::Row c(n);
  const RationalVector shift = inv * to_rational(delta);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Rational x = inv(i, j) * static_cast<long>(d);
      m[i][j] = to_int(x.get_num());
    }
    const Rational ci = shift[i] * static_cast<long>(d);
    c[i] = to_int(ci.get_num());
  }
  auto q = BasicQuasiNumber::make(n, std::move(m), std::move(c), d);
  // gamma = delta is always a solution.
  return *q;
}

/// Rational combination of basic quasinumbers.
class QuasiNumber {
 public:
  QuasiNumber() = default;
  QuasiNumber(const BasicQuasiNumber& t, const Rational& c = 1) { add(t, c); }

  void add(const BasicQuasiNumber& t, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(t, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  const std::map<BasicQuasiNumber, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  QuasiNumber& operator+=(const QuasiNumber& o) {
    for (const auto& [t, c] : o.terms_) add(t, c);
    return *this;
  }
  friend QuasiNumber operator*(const QuasiNumber& a, const QuasiNumber& b) {
    QuasiNumber r;
    for (const auto& [ta, ca] : a.terms_)
      for (const auto& [tb, cb] : b.terms_)
        if (auto t = tau_mul(ta, tb)) r.add(*t, ca * cb);
    return r;
  }

  Rational operator()(const IntVector& g) const {
    Rational s = 0;
    for (const auto& [t, c] : terms_)
      if (t(g)) s += c;
    return s;
  }

  friend bool operator==(const QuasiNumber&, const QuasiNumber&) = default;

 private:
  std::map<BasicQuasiNumber, Rational> terms_;
};

inline Rational tau_eval(const QuasiNumber& q, const IntVector& g) { return q(g); }

/// sum_tau tau(gamma) * P_tau(gamma); each P_tau is a polynomial in the coordinates
/// of gamma (held as a LaurentPoly with nonnegative exponents).
class QuasiPolynomial {
 public:
  QuasiPolynomial() = default;
  explicit QuasiPolynomial(std::size_t n) : n_(n) {}

  static QuasiPolynomial constant(std::size_t n, const Rational& c) {
    QuasiPolynomial q(n);
    q.add(BasicQuasiNumber::one(n), LaurentPoly::constant(n, c));
    return q;
  }

  std::size_t dim() const { return n_; }
  const std::map<BasicQuasiNumber, LaurentPoly>& by_tau() const { return parts_; }
  bool is_zero() const { return parts_.empty(); }

  void add(const BasicQuasiNumber& t, const LaurentPoly& p) {
    if (t.dim() != n_ || p.dim() != n_) fail(ErrorKind::DimensionMismatch, "quasipolynomial dimension");
    if (p.is_zero()) return;
    auto [it, inserted] = parts_.try_emplace(t, p);
    if (!inserted) {
      it->second += p;
      if (it->second.is_zero()) parts_.erase(it);
    }
  }

  QuasiPolynomial& operator+=(const QuasiPolynomial& o) {
    if (o.n_ != n_) fail(ErrorKind::DimensionMismatch, "quasipolynomial dimension");
    for (const auto& [t, p] : o.parts_) add(t, p);
    return *this;
  }
  QuasiPolynomial& operator*=(const Rational& k) {
    if (k == 0) parts_.clear();
    for (auto& [t, p] : parts_) p *= k;
    return *this;
  }
  friend QuasiPolynomial operator+(QuasiPolynomial a, const QuasiPolynomial& b) { return a += b; }
  friend QuasiPolynomial operator-(QuasiPolynomial a, QuasiPolynomial b) { return a += (b *= Rational(-1)); }

  /// Coefficients grouped by monomial: exponent -> quasinumber.
  std::map<IntVector, QuasiNumber> coefficients() const {
    std::map<IntVector, QuasiNumber> out;
    for (const auto& [t, p] : parts_)
      for (const auto& [e, c] : p.terms()) out[e].add(t, c);
    return out;
  }

  Rational operator()(const IntVector& g) const {
    RationalVector pt = to_rational(g);
    Rational s = 0;
    for (const auto& [t, p] : parts_)
      if (t(g)) s += evaluate_polynomial(p, pt);
    return s;
  }
  Rational operator()(std::span<const Rational> g) const {
    Rational s = 0;
    for (const auto& [t, p] : parts_)
      if (t(g)) s += evaluate_polynomial(p, g);
    return s;
  }

  /// Largest exponent of any single coordinate.
  Int max_degree() const {
    Int d = 0;
    for (const auto& [t, p] : parts_)
      for (const auto& [e, c] : p.terms())
        for (Int x : e) d = std::max(d, x);
    return d;
  }

  std::string latex() const {
    if (parts_.empty()) return "0";
    std::string s;
    for (const auto& [t, p] : parts_) {
      if (!s.empty()) s += "+";
      std::string poly = p.latex();
      for (std::size_t i = 1; i <= n_; ++i) {
        // Variables of a quasipolynomial are the coordinates gamma^i.
        const std::string from = "x_" + std::to_string(i), to = "\\gamma_" + std::to_string(i);
        for (std::size_t pos = 0; (pos = poly.find(from, pos)) != std::string::npos; pos += to.size())
          poly.replace(pos, from.size(), to);
      }
      s += (t.is_one() ? "" : t.latex()) + "\\left(" + poly + "\\right)";
    }
    return s;
  }

 private:
  std::size_t n_ = 0;
  std::map<BasicQuasiNumber, LaurentPoly> parts_;
};

/// lcm of all moduli present: a common period of every coset polynomial.
inline Int possible_period(const QuasiPolynomial& q) {
  Int d = 1;
  for (const auto& [t, p] : q.by_tau()) d = std::lcm(d, t.modulus());
  return d;
}

/// Semantic equality: p - q vanishes on the grid [0, (D+1) d0)^n, which pins down
/// each coset polynomial (coordinate degree <= D) on every coset of d0 Z^n.
inline bool quasipoly_equal(const QuasiPolynomial& p, const QuasiPolynomial& q) {
  if (p.dim() != q.dim()) fail(ErrorKind::DimensionMismatch, "quasipolynomial dimensions differ");
  const QuasiPolynomial r = p - q;
  if (r.is_zero()) return true;
  const std::size_t n = r.dim();
  const Int side = (r.max_degree() + 1) * possible_period(r);
  IntVector g(n, 0);
  for (;;) {
    if (r(g) != 0) return false;
    std::size_t k = 0;
    while (k < n && ++g[k] == side) g[k++] = 0;
    if (k == n) return true;
  }
}

/// Univariate polynomial, coefficients[i] multiplies x^i.
struct Polynomial1D {
  std::vector<Rational> coefficients;

  void trim() {
    while (!coefficients.empty() && coefficients.back() == 0) coefficients.pop_back();
  }
  Int degree() const { return static_cast<Int>(coefficients.size()) - 1; }

  Rational operator()(const Rational& x) const {
    Rational s = 0;
    for (std::size_t i = coefficients.size(); i-- > 0;) s = s * x + coefficients[i];
    return s;
  }

  /// p(a x + b).
  Polynomial1D compose_affine(const Rational& a, const Rational& b) const {
    Polynomial1D r;
    Polynomial1D power{{Rational(1)}};
    for (const auto& c : coefficients) {
      if (r.coefficients.size() < power.coefficients.size()) r.coefficients.resize(power.coefficients.size());
      for (std::size_t i = 0; i < power.coefficients.size(); ++i) r.coefficients[i] += c * power.coefficients[i];
      Polynomial1D next;
      next.coefficients.assign(power.coefficients.size() + 1, Rational(0));
      for (std::size_t i = 0; i < power.coefficients.size(); ++i) {
        next.coefficients[i + 1] += power.coefficients[i] * a;
        next.coefficients[i] += power.coefficients[i] * b;
      }
      power = std::move(next);
    }
    r.trim();
    return r;
  }

  LaurentPoly to_laurent() const {
    LaurentPoly p(1);
    for (std::size_t i = 0; i < coefficients.size(); ++i) p.add_term(IntVector{static_cast<Int>(i)}, coefficients[i]);
    return p;
  }

  friend bool operator==(const Polynomial1D&, const Polynomial1D&) = default;
};

/// The polynomial B_k with B_k(x) = sum_{t=0}^{x} t^k for integers x >= 0
/// (B_0(x) = x + 1), found by exact interpolation at x = 0..k+1.
inline Polynomial1D bernoulli_sum(Int k) {
  if (k < 0) fail(ErrorKind::DimensionMismatch, "negative Bernoulli index");
  const std::size_t n = static_cast<std::size_t>(k) + 2;
  RationalMatrix v(n, n);
  RationalVector y(n);
  Rational running = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Rational x(static_cast<long>(i));
    running += pow(x, k);
    y[i] = running;
    Rational p = 1;
    for (std::size_t j = 0; j < n; ++j, p *= x) v(i, j) = p;
  }
  Polynomial1D b{invert_rational_matrix(v) * y};
  b.trim();
  return b;
}

namespace detail {

inline const Polynomial1D& cached_bernoulli(Int q) {
  thread_local std::map<Int, Polynomial1D> cache;
  auto it = cache.find(q);
  if (it == cache.end()) it = cache.emplace(q, bernoulli_sum(q)).first;
  return it->second;
}

/// Polynomial in x equal to sum_{0<=t<=x, l t = m mod d} t^k for x = p mod d.
inline Polynomial1D tau_bernoulli_branch(Int k, Int l, Int m, Int d, Int p) {
  Polynomial1D out;
  for (Int s = 0; s < d; ++s) {
    if (mod_floor(l * s - m, d) != 0) continue;
    // t = s + r d with 0 <= r <= floor((x - s)/d) = (x - p)/d - [s > p].
    const Rational shift = make_rational(-p - (s > p ? d : 0), d);
    for (Int q = 0; q <= k; ++q) {
      const Rational w = Rational(binomial(k, q)) * pow(Rational(static_cast<long>(d)), q) *
                         pow(Rational(static_cast<long>(s)), k - q);
      if (w == 0) continue;
      const Polynomial1D bq = cached_bernoulli(q).compose_affine(make_rational(1, d), shift);
      if (out.coefficients.size() < bq.coefficients.size()) out.coefficients.resize(bq.coefficients.size());
      for (std::size_t i = 0; i < bq.coefficients.size(); ++i) out.coefficients[i] += w * bq.coefficients[i];
    }
  }
  out.trim();
  return out;
}

}  // namespace detail

inline BasicQuasiNumber tau_1d(Int l, Int m, Int d) {
  auto t = BasicQuasiNumber::make(1, {{l}}, {m}, d);
  if (!t) fail(ErrorKind::DimensionMismatch, "congruence has no solution");
  return *t;
}

/// sum_{t=0}^{x} tau_{l,m,d}(t) t^k as a one-variable quasipolynomial in x.
/// Terms whose congruence l t = m (mod d) is unsolvable are omitted.
inline QuasiPolynomial tau_bernoulli_symbolic(Int k, Int l, Int m, Int d) {
  if (d < 1 || k < 0) fail(ErrorKind::DimensionMismatch, "tau-Bernoulli needs d >= 1, k >= 0");
  QuasiPolynomial out(1);
  for (Int p = 0; p < d; ++p) {
    const Polynomial1D branch = detail::tau_bernoulli_branch(k, l, m, d, p);
    out.add(tau_1d(1, p, d), branch.to_laurent());
  }
  return out;
}

/// Closed-form value at an integer x >= -1.
inline Rational tau_bernoulli(Int k, Int l, Int m, Int d, Int x) {
  return detail::tau_bernoulli_branch(k, l, m, d, mod_floor(x, d))(Rational(static_cast<long>(x)));
}

/// The symbolic form evaluated at a rational x; off the integers every
/// tau_{1,p,d}(x) vanishes and so does the value.
inline Rational tau_bernoulli(Int k, Int l, Int m, Int d, const Rational& x) {
  const Rational pt[1] = {x};
  return tau_bernoulli_symbolic(k, l, m, d)(std::span<const Rational>(pt, 1));
}

/// tau_{1,l,d}(x) for x in (1/d)Z: the test d x = l (mod d).
inline bool tau_floor_selector(Int l, Int d, const Rational& x) {
  const Rational dx = x * static_cast<long>(d);
  if (dx.get_den() != 1) return false;
  return mod_floor(mod_floor(to_int(dx.get_num()), d) - l, d) == 0;
}

/// One summand tau_{1,l,d}(x) f(x - l/d) of the floor interpolation.
struct FloorTerm {
  Int residue;
  Rational shift;  // -l/d
};

/// f(floor x) = sum_l tau_{1,l,d}(x) f(x - l/d) for x in (1/d)Z.
inline std::vector<FloorTerm> floor_interpolate(Int d) {
  if (d < 1) fail(ErrorKind::DimensionMismatch, "denominator must be positive");
  std::vector<FloorTerm> t;
  for (Int l = 0; l < d; ++l) t.push_back({l, make_rational(-l, d)});
  return t;
}

template <class F>
Rational evaluate_floor_interpolation(Int d, F&& f, const Rational& x) {
  Rational s = 0;
  for (const auto& term : floor_interpolate(d))
    if (tau_floor_selector(term.residue, d, x)) s += f(x + term.shift);
  return s;
}

/// tau_{M,c,a}(gamma - t alpha) = sum_l [t = l mod a] tau_{M, c + l M alpha, a}(gamma).
/// Summands whose shifted system is inconsistent are dropped.
struct ShiftTerm {
  Int residue;  // l, selecting t = l (mod a)
  Int modulus;  // a
  BasicQuasiNumber tau;
};

inline std::vector<ShiftTerm> shift_expand(const BasicQuasiNumber& t, const IntVector& alpha) {
  if (alpha.size() != t.dim()) fail(ErrorKind::DimensionMismatch, "direction dimension differs");
  const Int a = t.modulus();
  std::vector<ShiftTerm> out;
  for (Int l = 0; l < a; ++l) {
    if (t.is_one()) {
      out.push_back({l, a, t});
      continue;
    }
    BasicQuasiNumber::Row c = t.rhs();
    for (std::size_t i = 0; i < c.size(); ++i) {
      Int m_alpha = 0;
      for (std::size_t j = 0; j < alpha.size(); ++j) m_alpha = checked_add(m_alpha, checked_mul(t.matrix()[i][j], alpha[j]));
      c[i] = mod_floor(checked_add(c[i], checked_mul(l, m_alpha)), a);
    }
    if (auto s = BasicQuasiNumber::make(t.dim(), t.matrix(), std::move(c), a)) out.push_back({l, a, *s});
  }
  return out;
}

/// sum_{t = floor(lo)+1}^{floor(hi)} tau_{l,m,d}(t) t^k for lo, hi in (1/D)Z, lo, hi >= -1,
/// computed as B(floor hi) - B(floor lo) with both floors moved inside the
/// symbolic tau-Bernoulli sum by floor interpolation.
inline Rational tau_power_sum_between(Int k, Int l, Int m, Int d, const Rational& lo, const Rational& hi, Int big_d) {
  const QuasiPolynomial b = tau_bernoulli_symbolic(k, l, m, d);
  auto at = [&](const Rational& x) {
    const Rational pt[1] = {x};
    return b(std::span<const Rational>(pt, 1));
  };
  return evaluate_floor_interpolation(big_d, at, hi) - evaluate_floor_interpolation(big_d, at, lo);
}

}  // namespace vpf
