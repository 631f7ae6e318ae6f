/// @file arith.hpp
/// Exact scalars (GMP-backed) and the small integer linear algebra the rest of
/// the library leans on: lattice vectors, rational inverses, ranks, integer
/// kernels, Smith normal form and congruence solvability.
#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <boost/container/small_vector.hpp>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "vpf/error.hpp"

namespace vpf {

using Int = std::int64_t;
using BigInt = mpz_class;
using Rational = mpq_class;

inline Int checked_add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) fail(ErrorKind::Overflow, "integer addition");
  return r;
}
inline Int checked_sub(Int a, Int b) {
  Int r;
  if (__builtin_sub_overflow(a, b, &r)) fail(ErrorKind::Overflow, "integer subtraction");
  return r;
}
inline Int checked_mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) fail(ErrorKind::Overflow, "integer multiplication");
  return r;
}

inline Int to_int(const BigInt& v) {
  if (!v.fits_slong_p()) fail(ErrorKind::Overflow, "value does not fit in 64 bits: " + v.get_str());
  return static_cast<Int>(v.get_si());
}

inline Rational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) fail(ErrorKind::Parse, "zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Rational make_rational(Int num, Int den = 1) {
  return make_rational(BigInt(static_cast<long>(num)), BigInt(static_cast<long>(den)));
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

/// Accepts "a", "-a", "a/b".
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char ch) { return std::isspace(ch); }), s.end());
  if (s.empty()) fail(ErrorKind::Parse, "empty rational");
  Rational r;
  if (r.set_str(s, 10) != 0) fail(ErrorKind::Parse, "malformed rational '" + s + "'");
  if (r.get_den() == 0) fail(ErrorKind::Parse, "zero denominator in '" + s + "'");
  r.canonicalize();
  return r;
}

inline BigInt lcm(const BigInt& a, const BigInt& b) {
  BigInt r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}
inline BigInt gcd(const BigInt& a, const BigInt& b) {
  BigInt r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline BigInt binomial(Int n, Int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

/// Rational power with integer exponent (negative allowed for nonzero base).
inline Rational pow(const Rational& base, Int e) {
  if (e == 0) return Rational(1);
  if (base == 0) {
    if (e < 0) fail(ErrorKind::ZeroCoordinate, "zero raised to a negative power");
    return Rational(0);
  }
  unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
  BigInt n, d;
  mpz_pow_ui(n.get_mpz_t(), base.get_num_mpz_t(), k);
  mpz_pow_ui(d.get_mpz_t(), base.get_den_mpz_t(), k);
  return e < 0 ? make_rational(d, n) : make_rational(n, d);
}

/// A lattice vector in Z^n. Also used for monomial exponents.
class IntVector {
 public:
  using Storage = boost::container::small_vector<Int, 8>;

  IntVector() = default;
  explicit IntVector(std::size_t n, Int fill = 0) : c_(n, fill) {}
  IntVector(std::initializer_list<Int> init) : c_(init) {}
  template <class It>
  IntVector(It first, It last) : c_(first, last) {}

  static IntVector unit(std::size_t n, std::size_t i) {
    IntVector v(n);
    v[i] = 1;
    return v;
  }

  std::size_t size() const { return c_.size(); }
  Int& operator[](std::size_t i) { return c_[i]; }
  Int operator[](std::size_t i) const { return c_[i]; }
  auto begin() const { return c_.begin(); }
  auto end() const { return c_.end(); }
  auto begin() { return c_.begin(); }
  auto end() { return c_.end(); }

  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](Int x) { return x == 0; });
  }
  bool is_nonnegative() const {
    return std::all_of(c_.begin(), c_.end(), [](Int x) { return x >= 0; });
  }

  IntVector& operator+=(const IntVector& o) {
    check_dim(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] = checked_add(c_[i], o.c_[i]);
    return *this;
  }
  IntVector& operator-=(const IntVector& o) {
    check_dim(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] = checked_sub(c_[i], o.c_[i]);
    return *this;
  }
  IntVector& operator*=(Int k) {
    for (auto& x : c_) x = checked_mul(x, k);
    return *this;
  }
  friend IntVector operator+(IntVector a, const IntVector& b) { return a += b; }
  friend IntVector operator-(IntVector a, const IntVector& b) { return a -= b; }
  friend IntVector operator*(IntVector a, Int k) { return a *= k; }
  friend IntVector operator*(Int k, IntVector a) { return a *= k; }
  IntVector operator-() const { return *this * Int{-1}; }

  Int dot(const IntVector& o) const {
    check_dim(o);
    Int s = 0;
    for (std::size_t i = 0; i < c_.size(); ++i) s = checked_add(s, checked_mul(c_[i], o.c_[i]));
    return s;
  }

  /// gcd of the absolute values of the coordinates (0 for the zero vector).
  Int content() const {
    Int g = 0;
    for (Int x : c_) g = std::gcd(g, x < 0 ? -x : x);
    return g;
  }

  IntVector primitive() const {
    Int g = content();
    if (g <= 1) return *this;
    IntVector r(*this);
    for (auto& x : r.c_) x /= g;
    return r;
  }

  friend bool operator==(const IntVector& a, const IntVector& b) { return a.c_ == b.c_; }
  friend std::strong_ordering operator<=>(const IntVector& a, const IntVector& b) {
    if (a.c_.size() != b.c_.size()) return a.c_.size() <=> b.c_.size();
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      if (a.c_[i] != b.c_[i]) return a.c_[i] <=> b.c_[i];
    return std::strong_ordering::equal;
  }

  std::string str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(c_[i]);
    }
    return s + ")";
  }

 private:
  void check_dim(const IntVector& o) const {
    if (o.size() != size()) fail(ErrorKind::DimensionMismatch, "vector dimensions differ");
  }
  Storage c_;
};

struct IntVectorHash {
  std::size_t operator()(const IntVector& v) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (Int x : v) h = (h ^ static_cast<std::size_t>(x)) * 1099511628211ull;
    return h;
  }
};

using RationalVector = std::vector<Rational>;

inline Rational dot(const RationalVector& a, const IntVector& b) {
  if (a.size() != b.size()) fail(ErrorKind::DimensionMismatch, "dot product dimensions differ");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * static_cast<long>(b[i]);
  return s;
}
inline Rational dot(const RationalVector& a, const RationalVector& b) {
  if (a.size() != b.size()) fail(ErrorKind::DimensionMismatch, "dot product dimensions differ");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline RationalVector to_rational(const IntVector& v) {
  RationalVector r;
  r.reserve(v.size());
  for (Int x : v) r.emplace_back(static_cast<long>(x));
  return r;
}

/// Dense row-major rational matrix.
struct RationalMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<Rational> a;

  RationalMatrix() = default;
  RationalMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}
  RationalMatrix(std::initializer_list<std::initializer_list<Rational>> init) {
    rows = init.size();
    cols = rows ? init.begin()->size() : 0;
    for (const auto& row : init) {
      if (row.size() != cols) fail(ErrorKind::DimensionMismatch, "ragged matrix literal");
      a.insert(a.end(), row.begin(), row.end());
    }
  }

  static RationalMatrix identity(std::size_t n) {
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  /// Matrix whose columns are the given vectors.
  static RationalMatrix from_columns(std::span<const IntVector> cols) {
    if (cols.empty()) return {};
    RationalMatrix m(cols.front().size(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != m.rows) fail(ErrorKind::DimensionMismatch, "column dimensions differ");
      for (std::size_t i = 0; i < m.rows; ++i) m(i, j) = static_cast<long>(cols[j][i]);
    }
    return m;
  }

  Rational& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

  RationalVector row(std::size_t i) const {
    return RationalVector(a.begin() + static_cast<std::ptrdiff_t>(i * cols),
                          a.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols));
  }

  RationalVector operator*(const RationalVector& v) const {
    if (v.size() != cols) fail(ErrorKind::DimensionMismatch, "matrix-vector product");
    RationalVector r(rows);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) r[i] += (*this)(i, j) * v[j];
    return r;
  }

  friend RationalMatrix operator*(const RationalMatrix& x, const RationalMatrix& y) {
    if (x.cols != y.rows) fail(ErrorKind::DimensionMismatch, "matrix product");
    RationalMatrix r(x.rows, y.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
      for (std::size_t k = 0; k < x.cols; ++k) {
        if (x(i, k) == 0) continue;
        for (std::size_t j = 0; j < y.cols; ++j) r(i, j) += x(i, k) * y(k, j);
      }
    return r;
  }

  friend bool operator==(const RationalMatrix& x, const RationalMatrix& y) {
    return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
  }
};

/// Exact Gauss-Jordan inverse.
inline RationalMatrix invert_rational_matrix(const RationalMatrix& b) {
  if (b.rows != b.cols) fail(ErrorKind::DimensionMismatch, "inverse of a non-square matrix");
  const std::size_t n = b.rows;
  RationalMatrix work = b;
  RationalMatrix inv = RationalMatrix::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && work(piv, col) == 0) ++piv;
    if (piv == n) fail(ErrorKind::SingularMatrix, "determinant is zero");
    if (piv != col)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(work(piv, j), work(col, j));
        std::swap(inv(piv, j), inv(col, j));
      }
    const Rational p = work(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      work(col, j) /= p;
      inv(col, j) /= p;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || work(i, col) == 0) continue;
      const Rational f = work(i, col);
      for (std::size_t j = 0; j < n; ++j) {
        work(i, j) -= f * work(col, j);
        inv(i, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

/// Rank of a family of integer vectors (fraction-free elimination).
inline std::size_t rank(std::span<const IntVector> vectors) {
  if (vectors.empty()) return 0;
  const std::size_t n = vectors.front().size();
  std::vector<std::vector<BigInt>> m;
  m.reserve(vectors.size());
  for (const auto& v : vectors) {
    if (v.size() != n) fail(ErrorKind::DimensionMismatch, "rank of mixed dimensions");
    std::vector<BigInt> row(n);
    for (std::size_t j = 0; j < n; ++j) row[j] = static_cast<long>(v[j]);
    m.push_back(std::move(row));
  }
  std::size_t r = 0;
  BigInt prev = 1;
  for (std::size_t col = 0; col < n && r < m.size(); ++col) {
    std::size_t piv = r;
    while (piv < m.size() && m[piv][col] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[r]);
    for (std::size_t i = r + 1; i < m.size(); ++i) {
      for (std::size_t j = col + 1; j < n; ++j) {
        m[i][j] = (m[r][col] * m[i][j] - m[i][col] * m[r][j]) / prev;
      }
      m[i][col] = 0;
    }
    prev = m[r][col];
    ++r;
  }
  return r;
}

inline std::size_t rank(std::initializer_list<IntVector> vs) {
  return rank(std::span<const IntVector>(vs.begin(), vs.size()));
}

/// Basis of the integer relations {a : sum a_i v_i = 0}; each basis vector is
/// primitive with its last nonzero entry positive.
inline std::vector<std::vector<Int>> integer_kernel(std::span<const IntVector> columns) {
  std::vector<std::vector<Int>> basis;
  if (columns.empty()) return basis;
  RationalMatrix m = RationalMatrix::from_columns(columns);
  const std::size_t rows = m.rows, cols = m.cols;
  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t col = 0; col < cols && r < rows; ++col) {
    std::size_t piv = r;
    while (piv < rows && m(piv, col) == 0) ++piv;
    if (piv == rows) continue;
    if (piv != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(m(piv, j), m(r, j));
    const Rational p = m(r, col);
    for (std::size_t j = 0; j < cols; ++j) m(r, j) /= p;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m(i, col) == 0) continue;
      const Rational f = m(i, col);
      for (std::size_t j = 0; j < cols; ++j) m(i, j) -= f * m(r, j);
    }
    pivot_cols.push_back(col);
    ++r;
  }
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivot_cols) is_pivot[c] = true;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(cols);
    v[free] = 1;
    for (std::size_t k = 0; k < pivot_cols.size(); ++k) v[pivot_cols[k]] = -m(k, free);
    BigInt den = 1;
    for (const auto& x : v) den = lcm(den, x.get_den());
    std::vector<BigInt> iv(cols);
    BigInt g = 0;
    for (std::size_t j = 0; j < cols; ++j) {
      iv[j] = v[j].get_num() * (den / v[j].get_den());
      g = gcd(g, iv[j]);
    }
    std::vector<Int> out(cols);
    for (std::size_t j = 0; j < cols; ++j) out[j] = to_int(iv[j] / g);
    for (std::size_t j = cols; j-- > 0;) {
      if (out[j] == 0) continue;
      if (out[j] < 0)
        for (auto& x : out) x = -x;
      break;
    }
    basis.push_back(std::move(out));
  }
  return basis;
}

/// Dense row-major integer matrix with arbitrary-precision entries.
struct IntMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<BigInt> a;

  IntMatrix() = default;
  IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> init) {
    rows = init.size();
    cols = rows ? init.begin()->size() : 0;
    for (const auto& row : init) {
      if (row.size() != cols) fail(ErrorKind::DimensionMismatch, "ragged matrix literal");
      for (long x : row) a.emplace_back(x);
    }
  }
  BigInt& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const BigInt& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

/// Result of diagonalising M: U * M * V = diag(d_0, d_1, ...) with U, V
/// unimodular and d_i | d_{i+1}. Only U is kept; V is never needed here.
struct SmithForm {
  IntMatrix u;
  std::vector<BigInt> diagonal;  // length min(rows, cols), nonnegative
};

inline SmithForm smith_normal_form(IntMatrix m) {
  const std::size_t rows = m.rows, cols = m.cols;
  IntMatrix u(rows, rows);
  for (std::size_t i = 0; i < rows; ++i) u(i, i) = 1;

  auto swap_rows = [&](std::size_t i, std::size_t j) {
    for (std::size_t k = 0; k < cols; ++k) std::swap(m(i, k), m(j, k));
    for (std::size_t k = 0; k < rows; ++k) std::swap(u(i, k), u(j, k));
  };
  auto add_row = [&](std::size_t dst, std::size_t src, const BigInt& f) {  // row_dst += f*row_src
    for (std::size_t k = 0; k < cols; ++k) m(dst, k) += f * m(src, k);
    for (std::size_t k = 0; k < rows; ++k) u(dst, k) += f * u(src, k);
  };
  auto swap_cols = [&](std::size_t i, std::size_t j) {
    for (std::size_t k = 0; k < rows; ++k) std::swap(m(k, i), m(k, j));
  };
  auto add_col = [&](std::size_t dst, std::size_t src, const BigInt& f) {
    for (std::size_t k = 0; k < rows; ++k) m(k, dst) += f * m(k, src);
  };

  const std::size_t diag = std::min(rows, cols);
  for (std::size_t t = 0; t < diag; ++t) {
    for (;;) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      std::size_t pi = rows, pj = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (m(i, j) != 0 && (pi == rows || abs(m(i, j)) < abs(m(pi, pj)))) pi = i, pj = j;
      if (pi == rows) break;
      if (pi != t) swap_rows(pi, t);
      if (pj != t) swap_cols(pj, t);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (m(i, t) == 0) continue;
        BigInt q;
        mpz_fdiv_q(q.get_mpz_t(), m(i, t).get_mpz_t(), m(t, t).get_mpz_t());
        add_row(i, t, -q);
        if (m(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (m(t, j) == 0) continue;
        BigInt q;
        mpz_fdiv_q(q.get_mpz_t(), m(t, j).get_mpz_t(), m(t, t).get_mpz_t());
        add_col(j, t, -q);
        if (m(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Enforce the divisibility chain.
      std::size_t bad = rows;
      for (std::size_t i = t + 1; i < rows && bad == rows; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (m(i, j) % m(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad == rows) break;
      add_row(t, bad, BigInt(1));
    }
    if (m(t, t) < 0) {
      for (std::size_t k = 0; k < cols; ++k) m(t, k) = -m(t, k);
      for (std::size_t k = 0; k < rows; ++k) u(t, k) = -u(t, k);
    }
  }
  SmithForm s;
  s.u = std::move(u);
  s.diagonal.resize(diag);
  for (std::size_t t = 0; t < diag; ++t) s.diagonal[t] = m(t, t);
  return s;
}

/// Decides whether M x = c (mod d) has an integer solution x.
inline bool solve_mod(const IntMatrix& m, std::span<const BigInt> c, const BigInt& d) {
  if (c.size() != m.rows) fail(ErrorKind::DimensionMismatch, "right-hand side length differs from row count");
  if (d < 1) fail(ErrorKind::DimensionMismatch, "modulus must be positive");
  const SmithForm s = smith_normal_form(m);
  for (std::size_t i = 0; i < m.rows; ++i) {
    BigInt uc = 0;
    for (std::size_t k = 0; k < m.rows; ++k) uc += s.u(i, k) * c[k];
    const BigInt g = i < s.diagonal.size() ? gcd(d, s.diagonal[i]) : d;
    if (uc % g != 0) return false;
  }
  return true;
}

/// Exponent of Z^n / span_Z(generators): lcm of the row denominators of B^{-1},
/// where B has the generators as columns.
inline BigInt element_order_lcm(std::span<const IntVector> generators) {
  if (generators.empty()) fail(ErrorKind::NotFullRank, "no generators");
  const std::size_t n = generators.front().size();
  if (generators.size() != n || rank(generators) != n)
    fail(ErrorKind::NotFullRank, "generators must be n independent vectors in Z^n");
  const RationalMatrix inv = invert_rational_matrix(RationalMatrix::from_columns(generators));
  BigInt d = 1;
  for (const auto& x : inv.a) d = lcm(d, x.get_den());
  return d;
}

}  // namespace vpf
