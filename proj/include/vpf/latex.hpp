/// @file latex.hpp
/// LaTeX text form of fraction sums, one fraction per line:
///   &&+(-x_2^{3}-2x_2^{2}-x_2) \frac{1}{(1-x_1)} \frac{1}{(1-x_2^{2})^3}
#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include "vpf/genfunc.hpp"

namespace vpf {

inline std::string denominator_latex(const DenominatorFactor& d) {
  std::string s = "\\frac{1}{(1-" + monomial_latex(d.vector()) + ")";
  if (d.multiplicity != 1) s += "^" + std::to_string(d.multiplicity);
  return s + "}";
}

inline std::string fraction_latex(const GeneratingFraction& f) {
  std::string s;
  const auto& t = f.numerator.terms();
  if (t.size() == 1 && t.begin()->first.is_zero() && t.begin()->second == 1) {
    s = "+ ";
  } else if (t.size() == 1) {
    s = f.numerator.latex();
    if (s.front() != '-') s = "+" + s;
    s += " ";
  } else {
    s = "+(" + f.numerator.latex() + ") ";
  }
  for (std::size_t i = 0; i < f.denominators.size(); ++i) {
    if (i) s += " ";
    s += denominator_latex(f.denominators[i]);
  }
  return s;
}

inline std::string product_latex(const GeneratingFraction& f) {
  std::string s;
  for (const auto& d : f.denominators) {
    if (!s.empty()) s += " ";
    s += denominator_latex(d);
  }
  return s;
}

inline std::string fraction_sum_latex(const FractionSum& s) {
  std::string out;
  for (const auto& f : s.fractions) out += "&&" + fraction_latex(f) + " \\\\ \n";
  return out;
}

namespace detail {

class LatexParser {
 public:
  LatexParser(std::string_view text, std::size_t dim) : dim_(dim) {
    // Alignment marks, line breaks and blanks carry no meaning here.
    for (std::size_t i = 0; i < text.size(); ++i) {
      const char ch = text[i];
      if (ch == '\\' && i + 1 < text.size() && text[i + 1] == '\\') {
        ++i;
        continue;
      }
      if (ch == '&' || std::isspace(static_cast<unsigned char>(ch))) continue;
      s_ += ch;
    }
  }

  FractionSum parse() {
    FractionSum out(dim_);
    while (pos_ < s_.size()) out.add(term());
    return out;
  }

 private:
  [[noreturn]] void error(const std::string& what) const {
    fail(ErrorKind::Parse, what + " at offset " + std::to_string(pos_) + " near '" +
                               s_.substr(pos_, std::min<std::size_t>(20, s_.size() - pos_)) + "'");
  }
  bool peek(std::string_view lit) const { return s_.compare(pos_, lit.size(), lit) == 0; }
  bool accept(std::string_view lit) {
    if (!peek(lit)) return false;
    pos_ += lit.size();
    return true;
  }
  void expect(std::string_view lit) {
    if (!accept(lit)) error("expected '" + std::string(lit) + "'");
  }
  bool at_digit() const { return pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])); }
  bool at_denominator() const { return peek("\\frac{1}{("); }

  BigInt digits() {
    const std::size_t b = pos_;
    while (at_digit()) ++pos_;
    if (b == pos_) error("expected digits");
    return BigInt(s_.substr(b, pos_ - b));
  }
  Int integer() {
    const bool neg = accept("-");
    const Int v = to_int(digits());
    return neg ? -v : v;
  }

  // x_i^{e} factors; empty product allowed.
  IntVector monomial() {
    IntVector e(dim_);
    while (accept("x_")) {
      const Int idx = to_int(digits());
      if (idx < 1 || static_cast<std::size_t>(idx) > dim_) error("variable index out of range");
      Int power = 1;
      if (accept("^{")) {
        power = integer();
        expect("}");
      } else if (accept("^")) {
        if (!at_digit()) error("expected exponent");
        power = s_[pos_++] - '0';
      }
      e[static_cast<std::size_t>(idx - 1)] = checked_add(e[static_cast<std::size_t>(idx - 1)], power);
    }
    return e;
  }

  // Optional unsigned coefficient: digits or \frac{p}{q} (but not a denominator factor).
  Rational coefficient(bool& present) {
    present = true;
    if (at_digit()) return Rational(digits());
    if (peek("\\frac{") && !at_denominator()) {
      expect("\\frac{");
      BigInt p = digits();
      expect("}{");
      BigInt q = digits();
      expect("}");
      return make_rational(p, q);
    }
    present = false;
    return 1;
  }

  // One signed monomial term; returns false when nothing was consumed.
  bool signed_term(LaurentPoly& into, bool sign_required) {
    const std::size_t start = pos_;
    int sign = 1;
    if (accept("+")) {
    } else if (accept("-")) {
      sign = -1;
    } else if (sign_required) {
      return false;
    }
    bool has_coef;
    Rational c = coefficient(has_coef);
    const std::size_t before = pos_;
    IntVector e = monomial();
    if (!has_coef && before == pos_) {
      pos_ = start;
      return false;
    }
    into.add_term(e, c * sign);
    return true;
  }

  DenominatorFactor denominator() {
    expect("\\frac{1}{(1-");
    IntVector e = monomial();
    expect(")");
    Int mult = 1;
    if (accept("^{")) {
      mult = integer();
      expect("}");
    } else if (accept("^")) {
      mult = to_int(digits());
    }
    expect("}");
    return DenominatorFactor::from_vector(e, mult);
  }

  GeneratingFraction term() {
    int sign = 1;
    if (accept("-"))
      sign = -1;
    else
      accept("+");
    LaurentPoly num(dim_);
    if (accept("(")) {
      if (!signed_term(num, false)) error("empty numerator");
      while (signed_term(num, true)) {
      }
      expect(")");
    } else {
      bool has_coef;
      Rational c = coefficient(has_coef);
      IntVector e = monomial();
      num.add_term(e, c);
    }
    num *= Rational(sign);
    DenominatorList den;
    while (at_denominator()) den.push_back(denominator());
    if (den.empty()) error("fraction without denominator factors");
    return {std::move(num), std::move(den)};
  }

  std::string s_;
  std::size_t pos_ = 0;
  std::size_t dim_;
};

}  // namespace detail

inline FractionSum parse_fraction_sum_latex(std::string_view text, std::size_t dim) {
  return detail::LatexParser(text, dim).parse();
}

/// Three eqnarray blocks joined by `=`: the symbolic product (when a root
/// system label is given), the product written out, and the decomposition.
inline std::string decomposition_latex(const std::string& system_name, const GeneratingFraction& input,
                                       const FractionSum& result) {
  std::string s;
  if (!system_name.empty())
    s += "\\begin{eqnarray*}\n\\prod_{\\alpha\\in " + system_name + "}\\frac{1}{1-x^\\alpha} \\\\ \n\\end{eqnarray*}\n=\n";
  s += "\\begin{eqnarray*}\n&& " + product_latex(input) + " \\\\ \n\\end{eqnarray*}\n=\n";
  s += "\\begin{eqnarray*}\n" + fraction_sum_latex(result) + "\\end{eqnarray*}\n";
  return s;
}

/// Reads the last eqnarray block of a document produced by decomposition_latex
/// (or a bare list of fraction lines).
inline FractionSum parse_decomposition_latex(std::string_view text, std::size_t dim) {
  constexpr std::string_view open = "\\begin{eqnarray*}", close = "\\end{eqnarray*}";
  const std::size_t b = text.rfind(open);
  if (b == std::string_view::npos) return parse_fraction_sum_latex(text, dim);
  const std::size_t e = text.find(close, b);
  if (e == std::string_view::npos) fail(ErrorKind::Parse, "unterminated eqnarray block");
  return parse_fraction_sum_latex(text.substr(b + open.size(), e - b - open.size()), dim);
}

}  // namespace vpf
