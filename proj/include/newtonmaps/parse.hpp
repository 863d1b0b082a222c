#pragma once

// Map specifications: arithmetic expressions in z, coefficient lists, and a few
// named maps. Grammar (see README):
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary | power)*     juxtaposition only after a number
//   unary   := ('+' | '-') unary | power
//   power   := primary ('^' ['-'] integer)?
//   primary := number | 'z' | 'i' | '(' expr ')'
//
// A coefficient list "(c_n, ..., c_0)" optionally followed by "/(d_m, ..., d_0)"
// gives num/den highest degree first.

#include <cctype>
#include <cstdio>
#include <regex>
#include <stdexcept>
#include <string>
#include <vector>

#include "newtonmaps/classifier.hpp"
#include "newtonmaps/complex_poly.hpp"
#include "newtonmaps/dynamics.hpp"
#include "newtonmaps/mcmullen.hpp"
#include "newtonmaps/rational_map.hpp"

namespace newtonmaps {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

struct Frac {
  Polynomial num;
  Polynomial den = Polynomial::constant(1.0);
};

inline Frac add(const Frac& a, const Frac& b, double sign) {
  if (a.den == b.den) return {a.num + sign * b.num, a.den};
  return {a.num * b.den + sign * (b.num * a.den), a.den * b.den};
}

inline Frac mul(const Frac& a, const Frac& b) { return {a.num * b.num, a.den * b.den}; }

inline Frac div(const Frac& a, const Frac& b) {
  if (b.num.is_zero()) throw ParseError("division by zero");
  return {a.num * b.den, a.den * b.num};
}

class ExprParser {
 public:
  explicit ExprParser(std::string s) : s_(std::move(s)) {}

  Frac parse() {
    Frac f = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return f;
  }

 private:
  std::string s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at position " + std::to_string(pos_) + " in \"" + s_ + "\"");
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  bool starts_primary() {
    const char c = peek();
    return std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == 'z' || c == 'i' || c == '(';
  }

  Frac expr() {
    Frac acc = term();
    for (;;) {
      const char c = peek();
      if (c != '+' && c != '-') return acc;
      ++pos_;
      acc = add(acc, term(), c == '+' ? 1.0 : -1.0);
    }
  }

  Frac term() {
    bool last_was_number = false;
    Frac acc = unary(&last_was_number);
    for (;;) {
      const char c = peek();
      if (c == '*' || c == '/') {
        ++pos_;
        Frac rhs = unary(&last_was_number);
        acc = c == '*' ? mul(acc, rhs) : div(acc, rhs);
      } else if (starts_primary()) {
        if (!last_was_number) fail("implicit multiplication is only allowed after a number");
        acc = mul(acc, power(&last_was_number));
      } else {
        return acc;
      }
    }
  }

  Frac unary(bool* was_number) {
    const char c = peek();
    if (c == '-' || c == '+') {
      ++pos_;
      Frac f = unary(was_number);
      *was_number = false;
      if (c == '-') f.num = -1.0 * f.num;
      return f;
    }
    return power(was_number);
  }

  Frac power(bool* was_number) {
    Frac base = primary(was_number);
    if (peek() != '^') return base;
    ++pos_;
    *was_number = false;
    bool neg = false;
    if (peek() == '-') {
      neg = true;
      ++pos_;
    }
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("exponent must be an integer");
    const int e = std::stoi(s_.substr(start, pos_ - start));
    if (e > 256) fail("exponent too large");
    Frac out{base.num.pow(e), base.den.pow(e)};
    if (neg) {
      if (out.num.is_zero()) fail("negative power of zero");
      std::swap(out.num, out.den);
    }
    return out;
  }

  Frac primary(bool* was_number) {
    const char c = peek();
    *was_number = false;
    if (c == 'z' || c == 'i') {
      ++pos_;
      if (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) fail("unknown identifier");
      return {c == 'z' ? Polynomial::monomial(1.0, 1) : Polynomial::constant(cplx{0.0, 1.0})};
    }
    if (c == '(') {
      ++pos_;
      Frac f = expr();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return f;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* begin = s_.c_str() + pos_;
      char* end = nullptr;
      const double v = std::strtod(begin, &end);
      if (end == begin) fail("bad number");
      pos_ += static_cast<std::size_t>(end - begin);
      *was_number = true;
      return {Polynomial::constant(v)};
    }
    if (c == '\0') fail("unexpected end of input");
    fail("unexpected '" + std::string(1, c) + "'");
  }
};

inline std::vector<std::string> split_top_level(const std::string& inner) {
  std::vector<std::string> parts;
  int depth = 0;
  std::string cur;
  for (char ch : inner) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == ',' && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  parts.push_back(cur);
  return parts;
}

inline cplx parse_constant(const std::string& s) {
  const Frac f = ExprParser(s).parse();
  if (f.num.degree() > 0 || f.den.degree() > 0) throw ParseError("coefficient is not a constant: \"" + s + "\"");
  return f.num.is_zero() ? cplx{} : f.num[0] / f.den[0];
}

// "(a, b, c)" at the start of s; returns the polynomial and the rest of s.
inline std::optional<std::pair<Polynomial, std::string>> coefficient_group(const std::string& s) {
  std::size_t i = s.find_first_not_of(" \t");
  if (i == std::string::npos || s[i] != '(') return std::nullopt;
  int depth = 0;
  std::size_t close = std::string::npos;
  for (std::size_t k = i; k < s.size(); ++k) {
    if (s[k] == '(') ++depth;
    if (s[k] == ')' && --depth == 0) {
      close = k;
      break;
    }
  }
  if (close == std::string::npos) return std::nullopt;
  const auto parts = split_top_level(s.substr(i + 1, close - i - 1));
  if (parts.size() < 2) return std::nullopt;
  std::vector<cplx> coeffs;
  for (const auto& p : parts) coeffs.push_back(parse_constant(p));
  return std::pair{Polynomial::from_descending(coeffs), s.substr(close + 1)};
}

}  // namespace detail

struct ParsedSpec {
  RationalMap map;
  /// Named maps (F1.., N0.., mcmullen) are already Newton maps.
  bool is_newton = false;
  std::string label;
};

/// The maps used in the connectivity argument for d = 4, 5.
inline RationalMap named_F(int i) {
  auto row = [](int d, const std::string& id) {
    for (const auto& g : golden_rows(d))
      if (g.id == id) return RationalMap::polynomial(Polynomial::from_ascending(g.newton));
    throw std::logic_error("named_F: missing row");
  };
  switch (i) {
    case 1: return row(4, "3");
    case 2: return row(5, "4");
    case 3: return row(5, "3(i)");
    case 4: return row(5, "3(ii)");
    case 5: return row(5, "3(iii)");
  }
  throw std::invalid_argument("named_F: index must be 1..5");
}

inline ParsedSpec parse_map(const std::string& spec, double gcd_tol = 1e-6) {
  static const std::regex named(R"(\s*(F([1-5])|N0\(\s*(\d+)\s*,\s*(\d+)\s*\)|N1\(\s*(\d+)\s*\)|N2\(\s*(\d+)\s*\)|mcmullen\(\s*(\d+)\s*,\s*(\d+)\s*\))\s*)");
  std::smatch m;
  if (std::regex_match(spec, m, named)) {
    try {
      if (m[2].matched) return {named_F(std::stoi(m[2])), true, m[1]};
      if (m[3].matched) return {named_family({FamilyKind::N0, std::stoi(m[3]), std::stoi(m[4])}), true, m[1]};
      if (m[5].matched) return {named_family({FamilyKind::N1, 0, std::stoi(m[5])}), true, m[1]};
      if (m[6].matched) return {named_family({FamilyKind::N2, 0, std::stoi(m[6])}), true, m[1]};
      return {newton_mcmullen(std::stoi(m[7]), std::stoi(m[8])), true, m[1]};
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what());
    }
  }

  if (auto head = detail::coefficient_group(spec)) {
    Polynomial den = Polynomial::constant(1.0);
    std::string rest = head->second;
    const auto slash = rest.find_first_not_of(" \t");
    if (slash != std::string::npos) {
      if (rest[slash] != '/') throw ParseError("expected '/' after coefficient list");
      auto tail = detail::coefficient_group(rest.substr(slash + 1));
      if (!tail || tail->second.find_first_not_of(" \t") != std::string::npos)
        throw ParseError("expected a coefficient list after '/'");
      den = tail->first;
    }
    if (den.is_zero()) throw ParseError("zero denominator");
    return {RationalMap::reduce(head->first, den, gcd_tol), false, spec};
  }

  const auto f = detail::ExprParser(spec).parse();
  if (f.den.is_zero()) throw ParseError("zero denominator");
  return {RationalMap::reduce(f.num, f.den, gcd_tol), false, spec};
}

namespace detail {

inline std::string format_coeff(cplx c) {
  char buf[96];
  if (c.imag() == 0.0)
    std::snprintf(buf, sizeof buf, "%.17g", c.real());
  else
    std::snprintf(buf, sizeof buf, "(%.17g%+.17gi)", c.real(), c.imag());
  return buf;
}

inline std::string format_list(const Polynomial& p) {
  auto d = p.descending();
  if (d.empty()) d.push_back(0.0);
  // a single coefficient still needs a comma-free form the list parser accepts
  std::string s = "(";
  if (d.size() == 1) s += "0,";
  for (std::size_t k = 0; k < d.size(); ++k) s += (k ? "," : "") + format_coeff(d[k]);
  return s + ")";
}

}  // namespace detail

/// Coefficient-list form that parse_map reads back to the identical map.
inline std::string format_map(const RationalMap& r) {
  return detail::format_list(r.num()) + "/" + detail::format_list(r.den());
}

}  // namespace newtonmaps
