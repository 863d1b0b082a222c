#pragma once

// Complex-coefficient polynomials: arithmetic, Horner evaluation, Aberth root
// finding with multiplicity clustering, root-matching GCD and the length
// functional.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <numbers>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace newtonmaps {

using cplx = std::complex<double>;

/// Raised when an iterative numerical routine fails to settle.
class RootFindingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Root {
  cplx value;
  int multiplicity = 1;
};

/// Distinct roots with multiplicities; the multiplicities sum to the degree.
using RootList = std::vector<Root>;

inline int total_multiplicity(const RootList& roots) {
  int s = 0;
  for (const auto& r : roots) s += r.multiplicity;
  return s;
}

class Polynomial {
 public:
  /// The zero polynomial (empty coefficient vector).
  Polynomial() = default;

  /// Coefficients highest degree first, e.g. {1, 0, -1} is z^2 - 1.
  Polynomial(std::initializer_list<cplx> descending)
      : c_(descending.begin(), descending.end()) {
    std::reverse(c_.begin(), c_.end());
    trim();
  }

  static Polynomial from_descending(std::span<const cplx> coeffs) {
    Polynomial p;
    p.c_.assign(coeffs.rbegin(), coeffs.rend());
    p.trim();
    return p;
  }

  /// Coefficients indexed by power: coeffs[k] multiplies z^k.
  static Polynomial from_ascending(std::vector<cplx> coeffs) {
    Polynomial p;
    p.c_ = std::move(coeffs);
    p.trim();
    return p;
  }

  static Polynomial constant(cplx c) { return from_ascending({c}); }

  static Polynomial monomial(cplx c, int k) {
    std::vector<cplx> v(static_cast<std::size_t>(k) + 1, cplx{});
    v.back() = c;
    return from_ascending(std::move(v));
  }

  /// z - r
  static Polynomial linear_factor(cplx r) { return from_ascending({-r, 1.0}); }

  /// Monic product of (z - r_i)^{m_i}.
  static Polynomial from_roots(const RootList& roots) {
    Polynomial p = constant(1.0);
    for (const auto& r : roots)
      for (int k = 0; k < r.multiplicity; ++k) p = p * linear_factor(r.value);
    return p;
  }

  static Polynomial from_roots(std::span<const cplx> roots) {
    Polynomial p = constant(1.0);
    for (const auto& r : roots) p = p * linear_factor(r);
    return p;
  }

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }

  cplx leading() const { return c_.empty() ? cplx{} : c_.back(); }

  /// Coefficient of z^k (zero beyond the degree).
  cplx operator[](int k) const {
    return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[static_cast<std::size_t>(k)] : cplx{};
  }

  const std::vector<cplx>& ascending() const { return c_; }

  std::vector<cplx> descending() const { return {c_.rbegin(), c_.rend()}; }

  cplx operator()(cplx z) const {
    cplx acc{};
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
    return acc;
  }

  /// Value and first derivative in one Horner sweep.
  std::pair<cplx, cplx> eval_with_derivative(cplx z) const {
    cplx v{}, d{};
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
      d = d * z + v;
      v = v * z + *it;
    }
    return {v, d};
  }

  Polynomial derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<cplx> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * static_cast<double>(k);
    return from_ascending(std::move(d));
  }

  Polynomial derivative(int order) const {
    Polynomial p = *this;
    for (int i = 0; i < order; ++i) p = p.derivative();
    return p;
  }

  Polynomial monic() const {
    if (is_zero()) return {};
    return *this * (1.0 / leading());
  }

  double max_abs_coeff() const {
    double m = 0.0;
    for (const auto& c : c_) m = std::max(m, std::abs(c));
    return m;
  }

  /// Drop leading coefficients below rel_tol * max|c|. Used after operations
  /// whose leading terms cancel in exact arithmetic.
  Polynomial trimmed(double rel_tol) const {
    Polynomial p = *this;
    const double cut = rel_tol * max_abs_coeff();
    while (!p.c_.empty() && std::abs(p.c_.back()) <= cut) p.c_.pop_back();
    return p;
  }

  /// p(a z + b)
  Polynomial compose_affine(cplx a, cplx b) const {
    Polynomial result;
    const Polynomial inner = from_ascending({b, a});
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) result = result * inner + constant(*it);
    return result;
  }

  /// p(mu z), coefficient-wise.
  Polynomial scaled_argument(cplx mu) const {
    std::vector<cplx> v = c_;
    cplx f = 1.0;
    for (auto& c : v) {
      c *= f;
      f *= mu;
    }
    return from_ascending(std::move(v));
  }

  /// z^n p(1/z) for n >= degree.
  Polynomial reversed(int n) const {
    std::vector<cplx> v(static_cast<std::size_t>(n) + 1, cplx{});
    for (std::size_t k = 0; k < c_.size(); ++k) v[static_cast<std::size_t>(n) - k] = c_[k];
    return from_ascending(std::move(v));
  }

  Polynomial pow(int e) const {
    Polynomial r = constant(1.0);
    for (int i = 0; i < e; ++i) r = r * *this;
    return r;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<cplx> v(std::max(a.c_.size(), b.c_.size()), cplx{});
    for (std::size_t k = 0; k < a.c_.size(); ++k) v[k] += a.c_[k];
    for (std::size_t k = 0; k < b.c_.size(); ++k) v[k] += b.c_[k];
    return from_ascending(std::move(v));
  }

  friend Polynomial operator-(const Polynomial& a) { return a * -1.0; }

  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<cplx> v(a.c_.size() + b.c_.size() - 1, cplx{});
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
    return from_ascending(std::move(v));
  }

  friend Polynomial operator*(const Polynomial& a, cplx s) {
    if (s == cplx{}) return {};
    std::vector<cplx> v = a.c_;
    for (auto& c : v) c *= s;
    return from_ascending(std::move(v));
  }

  friend Polynomial operator*(cplx s, const Polynomial& a) { return a * s; }

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  void trim() {
    while (!c_.empty() && c_.back() == cplx{}) c_.pop_back();
  }

  std::vector<cplx> c_;
};

/// Long division: num = quot * den + rem with deg rem < deg den.
inline std::pair<Polynomial, Polynomial> divmod(const Polynomial& num, const Polynomial& den) {
  if (den.is_zero()) throw std::invalid_argument("divmod: division by the zero polynomial");
  if (num.degree() < den.degree()) return {Polynomial{}, num};
  std::vector<cplx> rem = num.ascending();
  const auto& d = den.ascending();
  const int nd = den.degree();
  std::vector<cplx> q(static_cast<std::size_t>(num.degree() - nd) + 1, cplx{});
  for (int k = num.degree(); k >= nd; --k) {
    const cplx f = rem[static_cast<std::size_t>(k)] / d.back();
    q[static_cast<std::size_t>(k - nd)] = f;
    for (int j = 0; j <= nd; ++j) rem[static_cast<std::size_t>(k - nd + j)] -= f * d[static_cast<std::size_t>(j)];
  }
  rem.resize(static_cast<std::size_t>(nd));
  return {Polynomial::from_ascending(std::move(q)), Polynomial::from_ascending(std::move(rem))};
}

/// Sum of the absolute values of all coefficients.
inline double length(const Polynomial& p) {
  double s = 0.0;
  for (const auto& c : p.ascending()) s += std::abs(c);
  return s;
}

struct RootOptions {
  double tol = 1e-12;
  int max_iterations = 500;
  /// Approximations closer than this times (1 + |root|) always merge.
  double cluster_radius = 1e-6;
};

namespace detail {

// Horner evaluation of sum |c_k| r^k, the scale of rounding error in p(z).
inline double abs_horner(const std::vector<cplx>& a, double r) {
  double e = 0.0;
  for (auto it = a.rbegin(); it != a.rend(); ++it) e = e * r + std::abs(*it);
  return e;
}

inline std::pair<cplx, cplx> horner2(const std::vector<cplx>& a, cplx z) {
  cplx v{}, d{};
  for (auto it = a.rbegin(); it != a.rend(); ++it) {
    d = d * z + v;
    v = v * z + *it;
  }
  return {v, d};
}

inline std::size_t find_root(std::vector<std::size_t>& parent, std::size_t i) {
  while (parent[i] != i) {
    parent[i] = parent[parent[i]];
    i = parent[i];
  }
  return i;
}

// Newton polish of a k-fold root on the (k-1)-th derivative, where it is simple.
inline cplx polish(const Polynomial& p, cplx start, int k, double max_move) {
  const Polynomial f = p.derivative(k - 1);
  cplx z = start;
  double last_step = std::numeric_limits<double>::infinity();
  for (int it = 0; it < 30; ++it) {
    auto [v, d] = f.eval_with_derivative(z);
    if (v == cplx{} || d == cplx{}) break;
    const cplx step = v / d;
    const double s = std::abs(step);
    if (!(s < last_step)) break;
    z -= step;
    last_step = s;
    if (s <= 4 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(z))) break;
  }
  if (!(std::abs(z - start) <= max_move)) return start;
  return z;
}

}  // namespace detail

/// All roots of a nonconstant polynomial, counted with multiplicity.
///
/// Aberth-Ehrlich simultaneous iteration from a circle of radius
/// 1 + max|c_k / c_lead|. Converged approximations are grouped by overlapping
/// inclusion disks (n |p(z_i)| / |c_lead prod_{j != i}(z_i - z_j)|, widened by
/// the rounding-error bound) and by the fixed clustering radius. Each cluster
/// of size k is reported once with multiplicity k, at its centroid polished by
/// Newton's method on the (k-1)-th derivative. Exact zero roots are split off
/// before iterating.
inline RootList roots(const Polynomial& p, const RootOptions& opt = {}) {
  if (p.degree() < 1) throw std::invalid_argument("roots: polynomial must be nonconstant");
  const auto& a = p.ascending();
  std::size_t zeros = 0;
  while (a[zeros] == cplx{}) ++zeros;

  RootList out;
  if (zeros > 0) out.push_back({cplx{}, static_cast<int>(zeros)});
  const std::vector<cplx> q(a.begin() + static_cast<std::ptrdiff_t>(zeros), a.end());
  const int n = static_cast<int>(q.size()) - 1;
  const auto by_position = [](const Root& x, const Root& y) {
    if (x.value.real() != y.value.real()) return x.value.real() < y.value.real();
    return x.value.imag() < y.value.imag();
  };
  if (n == 0) return out;
  if (n == 1) {
    out.push_back({-q[0] / q[1], 1});
    std::sort(out.begin(), out.end(), by_position);
    return out;
  }

  const double eps = std::numeric_limits<double>::epsilon();
  double bound = 0.0;
  for (int k = 0; k < n; ++k) bound = std::max(bound, std::abs(q[static_cast<std::size_t>(k)] / q.back()));
  const double r0 = 1.0 + bound;

  std::vector<cplx> z(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k)
    z[static_cast<std::size_t>(k)] = std::polar(r0, 2.0 * std::numbers::pi * k / n + 0.4);

  const auto noise = [&](cplx x) { return 8.0 * eps * (2.0 * n + 1.0) * detail::abs_horner(q, std::abs(x)); };

  std::vector<char> done(static_cast<std::size_t>(n), 0);
  int active = n;
  for (int iter = 0; iter < opt.max_iterations && active > 0; ++iter) {
    for (std::size_t i = 0; i < z.size(); ++i) {
      if (done[i]) continue;
      auto [v, d] = detail::horner2(q, z[i]);
      if (std::abs(v) <= noise(z[i])) {
        done[i] = 1;
        --active;
        continue;
      }
      cplx sum{};
      for (std::size_t j = 0; j < z.size(); ++j) {
        if (j == i) continue;
        cplx diff = z[i] - z[j];
        if (diff == cplx{}) diff = cplx{eps, eps} * (1.0 + std::abs(z[i]));
        sum += 1.0 / diff;
      }
      if (d == cplx{}) d = cplx{eps, 0.0};
      const cplx ratio = v / d;
      const cplx w = ratio / (1.0 - ratio * sum);
      z[i] -= w;
      if (std::abs(w) <= opt.tol * (1.0 + std::abs(z[i]))) {
        done[i] = 1;
        --active;
      }
    }
  }
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (done[i]) continue;
    if (!(std::abs(detail::horner2(q, z[i]).first) <= 1e3 * noise(z[i])))
      throw RootFindingError("roots: Aberth iteration did not converge (ill-conditioned polynomial of degree " +
                             std::to_string(n) + ")");
  }

  // Inclusion radii.
  std::vector<double> rad(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    double prod = std::abs(q.back());
    for (std::size_t j = 0; j < z.size(); ++j)
      if (j != i) prod *= std::abs(z[i] - z[j]);
    const double num = n * (std::abs(detail::horner2(q, z[i]).first) + noise(z[i]));
    double r = prod > 0.0 ? num / prod : std::numeric_limits<double>::infinity();
    const double scale = 1.0 + std::abs(z[i]);
    r = std::min(r, 0.1 * scale);
    rad[i] = std::max(r, opt.cluster_radius * scale);
  }

  std::vector<std::size_t> parent(z.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  for (std::size_t i = 0; i < z.size(); ++i)
    for (std::size_t j = i + 1; j < z.size(); ++j)
      if (std::abs(z[i] - z[j]) <= rad[i] + rad[j])
        parent[detail::find_root(parent, i)] = detail::find_root(parent, j);

  const Polynomial qp = Polynomial::from_ascending(q);
  std::vector<std::vector<std::size_t>> groups(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) groups[detail::find_root(parent, i)].push_back(i);
  for (const auto& g : groups) {
    if (g.empty()) continue;
    cplx c{};
    for (auto i : g) c += z[i];
    c /= static_cast<double>(g.size());
    double spread = 0.0;
    for (auto i : g) spread = std::max(spread, std::abs(z[i] - c) + rad[i]);
    const int k = static_cast<int>(g.size());
    out.push_back({detail::polish(qp, c, k, std::max(spread, opt.cluster_radius * (1.0 + std::abs(c)))), k});
  }
  std::sort(out.begin(), out.end(), by_position);
  return out;
}

inline RootList roots(const Polynomial& p, double tol) {
  RootOptions opt;
  opt.tol = tol;
  return roots(p, opt);
}

/// Monic approximate GCD by matching roots of p and q within tol * (1 + |root|).
/// Returns the constant 1 when no common root is found.
inline Polynomial gcd_numeric(const Polynomial& p, const Polynomial& q, double tol = 1e-6) {
  if (p.is_zero() && q.is_zero()) throw std::invalid_argument("gcd_numeric: both polynomials are zero");
  if (p.is_zero()) return q.monic();
  if (q.is_zero()) return p.monic();
  if (p.degree() < 1 || q.degree() < 1) return Polynomial::constant(1.0);
  const RootList rp = roots(p);
  RootList rq = roots(q);
  RootList common;
  std::vector<char> used(rq.size(), 0);
  for (const auto& r : rp) {
    std::size_t best = rq.size();
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < rq.size(); ++j) {
      if (used[j]) continue;
      const double dist = std::abs(r.value - rq[j].value);
      if (dist < best_d) {
        best_d = dist;
        best = j;
      }
    }
    if (best < rq.size() && best_d <= tol * (1.0 + std::abs(r.value))) {
      used[best] = 1;
      common.push_back({r.value, std::min(r.multiplicity, rq[best].multiplicity)});
    }
  }
  return Polynomial::from_roots(common);
}

}  // namespace newtonmaps
