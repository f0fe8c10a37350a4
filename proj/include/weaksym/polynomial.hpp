// This file is part of weaksym, a library of rectangular mixed finite
// elements for linear elasticity with weakly imposed stress symmetry.
// Distributed under the BSD 3-Clause license. See LICENSE for details.

#pragma once

#include <weaksym/rational.hpp>

#include <array>
#include <map>
#include <sstream>
#include <string>

namespace weaksym {

/// Exponent triple of a monomial x^a y^b z^c; unused trailing slots are 0.
using MultiIndex = std::array<int, 3>;

/// Multivariate polynomial in up to three variables with exact rational
/// coefficients. Variables live on the reference cell [0,1]^nvars (or a
/// facet parameter domain), which makes monomial integration exact:
/// the integral of x^a over [0,1] is 1/(a+1).
class Poly {
public:
  Poly() : m_nvars(1) {}
  explicit Poly(int nvars) : m_nvars(nvars) { check_nvars(nvars); }

  static Poly constant(int nvars, const Rational& c) {
    Poly p(nvars);
    if (c != 0) p.m_terms[{0, 0, 0}] = c;
    return p;
  }

  static Poly monomial(int nvars, MultiIndex e, const Rational& c = 1) {
    Poly p(nvars);
    for (int v = nvars; v < 3; ++v)
      if (e[v] != 0) throw std::invalid_argument("monomial: exponent beyond nvars");
    if (c != 0) p.m_terms[e] = c;
    return p;
  }

  /// The coordinate variable of index `v`.
  static Poly var(int nvars, int v) {
    MultiIndex e{0, 0, 0};
    e[v] = 1;
    return monomial(nvars, e);
  }

  int nvars() const { return m_nvars; }
  bool is_zero() const { return m_terms.empty(); }
  std::size_t n_terms() const { return m_terms.size(); }
  const std::map<MultiIndex, Rational>& terms() const { return m_terms; }

  Rational coefficient(MultiIndex e) const {
    auto it = m_terms.find(e);
    return it == m_terms.end() ? Rational(0) : it->second;
  }

  int degree(int v) const {
    int d = 0;
    for (const auto& [e, c] : m_terms) d = std::max(d, e[v]);
    return d;
  }

  int total_degree() const {
    int d = 0;
    for (const auto& [e, c] : m_terms) d = std::max(d, e[0] + e[1] + e[2]);
    return d;
  }

  Poly& operator+=(const Poly& q) {
    require_same_arity(q);
    for (const auto& [e, c] : q.m_terms) add_term(e, c);
    return *this;
  }
  Poly& operator-=(const Poly& q) {
    require_same_arity(q);
    for (const auto& [e, c] : q.m_terms) add_term(e, -c);
    return *this;
  }
  Poly& operator*=(const Rational& s) {
    if (s == 0) {
      m_terms.clear();
    } else {
      for (auto& [e, c] : m_terms) c *= s;
    }
    return *this;
  }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const Rational& s) { return a *= s; }
  friend Poly operator*(const Rational& s, Poly a) { return a *= s; }
  friend Poly operator-(Poly a) { return a *= Rational(-1); }

  friend Poly operator*(const Poly& a, const Poly& b) {
    a.require_same_arity(b);
    Poly out(a.m_nvars);
    for (const auto& [ea, ca] : a.m_terms)
      for (const auto& [eb, cb] : b.m_terms)
        out.add_term({ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}, ca * cb);
    return out;
  }

  bool operator==(const Poly& q) const {
    return m_nvars == q.m_nvars && m_terms == q.m_terms;
  }

  /// Partial derivative with respect to variable `v`.
  Poly derivative(int v) const {
    Poly out(m_nvars);
    for (const auto& [e, c] : m_terms) {
      if (e[v] == 0) continue;
      MultiIndex d = e;
      d[v] -= 1;
      out.add_term(d, c * e[v]);
    }
    return out;
  }

  /// Exact integral over the unit cube [0,1]^nvars.
  Rational integral_unit() const {
    Rational s = 0;
    for (const auto& [e, c] : m_terms) {
      Rational t = c;
      for (int v = 0; v < m_nvars; ++v) t /= (e[v] + 1);
      s += t;
    }
    return s;
  }

  /// Substitute variable `v` by the rational constant `value`; the result is
  /// a polynomial in the remaining variables, renumbered in their original
  /// order (arity drops by one).
  Poly substitute(int v, const Rational& value) const {
    if (m_nvars < 1 || v >= m_nvars) throw std::invalid_argument("substitute: bad variable");
    Poly out(m_nvars - 1 > 0 ? m_nvars - 1 : 1);
    out.m_nvars = std::max(1, m_nvars - 1);
    for (const auto& [e, c] : m_terms) {
      Rational f = c;
      for (int k = 0; k < e[v]; ++k) f *= value;
      if (f == 0) continue;
      MultiIndex d{0, 0, 0};
      int slot = 0;
      for (int w = 0; w < m_nvars; ++w) {
        if (w == v) continue;
        d[slot++] = e[w];
      }
      out.add_term(d, f);
    }
    return out;
  }

  /// Compose with an affine change of each variable x_v -> a_v * x_v + b_v.
  Poly affine_substitute(const std::array<Rational, 3>& a, const std::array<Rational, 3>& b) const {
    Poly out = Poly::constant(m_nvars, 0);
    for (const auto& [e, c] : m_terms) {
      Poly term = Poly::constant(m_nvars, c);
      for (int v = 0; v < m_nvars; ++v) {
        Poly lin = Poly::var(m_nvars, v) * a[v] + Poly::constant(m_nvars, b[v]);
        for (int k = 0; k < e[v]; ++k) term = term * lin;
      }
      out += term;
    }
    return out;
  }

  template <typename Scalar>
  Scalar eval(const std::array<Scalar, 3>& x) const {
    Scalar s{};
    for (const auto& [e, c] : m_terms) {
      Scalar t = static_cast<Scalar>(c);
      for (int v = 0; v < m_nvars; ++v)
        for (int k = 0; k < e[v]; ++k) t *= x[v];
      s += t;
    }
    return s;
  }

  Rational eval_rational(const std::array<Rational, 3>& x) const { return eval<Rational>(x); }

  double eval_double(const std::array<double, 3>& x) const {
    double s = 0;
    for (const auto& [e, c] : m_terms) {
      double t = to_double(c);
      for (int v = 0; v < m_nvars; ++v)
        for (int k = 0; k < e[v]; ++k) t *= x[v];
      s += t;
    }
    return s;
  }

  /// Human-readable form, mainly for diagnostics and error messages.
  std::string str() const {
    if (m_terms.empty()) return "0";
    static const char* names[3] = {"x", "y", "z"};
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : m_terms) {
      if (!first) os << " + ";
      first = false;
      os << c;
      for (int v = 0; v < 3; ++v) {
        if (e[v] == 0) continue;
        os << "*" << names[v];
        if (e[v] > 1) os << "^" << e[v];
      }
    }
    return os.str();
  }

private:
  static void check_nvars(int n) {
    if (n < 1 || n > 3) throw std::invalid_argument("Poly: nvars must be 1..3");
  }
  void require_same_arity(const Poly& q) const {
    if (m_nvars != q.m_nvars) throw std::invalid_argument("Poly: arity mismatch");
  }
  void add_term(MultiIndex e, const Rational& c) {
    auto it = m_terms.find(e);
    if (it == m_terms.end()) {
      if (c != 0) m_terms.emplace(e, c);
    } else {
      it->second += c;
      if (it->second == 0) m_terms.erase(it);
    }
  }

  int m_nvars;
  std::map<MultiIndex, Rational> m_terms;
};

}  // namespace weaksym
