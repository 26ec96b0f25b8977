#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cfluid/charges.hpp"
#include "cfluid/rational.hpp"

namespace cfluid {
namespace liealg {

inline std::string scalar_str(const Rational& r) { return r.str(); }
inline std::string scalar_str(const QSqrt2& q) {
  return q.a.str() + (q.b.is_zero() ? "" : " + " + q.b.str() + "*sqrt2");
}

/// Monomial x^i t^j s^k.
struct Monomial {
  int px = 0, pt = 0, ps = 0;
  auto operator<=>(const Monomial&) const = default;
  int degree() const { return px + pt + ps; }
};

/// Sparse polynomial in (x,t,s) over an exact scalar (Rational or QSqrt2).
template <typename S>
class Polynomial3 {
 public:
  Polynomial3() = default;
  static Polynomial3 constant(S c) {
    Polynomial3 p;
    p.add_term({0, 0, 0}, c);
    return p;
  }
  static Polynomial3 variable(int axis) {  // 0=x, 1=t, 2=s
    Polynomial3 p;
    Monomial m;
    (axis == 0 ? m.px : axis == 1 ? m.pt : m.ps) = 1;
    p.add_term(m, S(Rational(1)));
    return p;
  }

  void add_term(const Monomial& m, const S& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, c);
    } else {
      it->second = it->second + c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  const std::map<Monomial, S>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
    return d;
  }
  S coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? S() : it->second;
  }

  Polynomial3 derivative(int axis) const {
    Polynomial3 out;
    for (const auto& [m, c] : terms_) {
      Monomial d = m;
      int power = (axis == 0 ? m.px : axis == 1 ? m.pt : m.ps);
      if (power == 0) continue;
      (axis == 0 ? d.px : axis == 1 ? d.pt : d.ps) = power - 1;
      out.add_term(d, c * S(Rational(power)));
    }
    return out;
  }

  double evaluate(double x, double t, double s) const {
    double v = 0.0;
    for (const auto& [m, c] : terms_) {
      double term = c.to_double();
      for (int i = 0; i < m.px; ++i) term *= x;
      for (int i = 0; i < m.pt; ++i) term *= t;
      for (int i = 0; i < m.ps; ++i) term *= s;
      v += term;
    }
    return v;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [m, c] : terms_) {
      if (!out.empty()) out += " + ";
      out += "(" + scalar_str(c) + ")";
      for (int i = 0; i < m.px; ++i) out += "*x";
      for (int i = 0; i < m.pt; ++i) out += "*t";
      for (int i = 0; i < m.ps; ++i) out += "*s";
    }
    return out;
  }

  friend Polynomial3 operator+(const Polynomial3& p, const Polynomial3& q) {
    Polynomial3 out = p;
    for (const auto& [m, c] : q.terms_) out.add_term(m, c);
    return out;
  }
  friend Polynomial3 operator-(const Polynomial3& p, const Polynomial3& q) {
    Polynomial3 out = p;
    for (const auto& [m, c] : q.terms_) out.add_term(m, -c);
    return out;
  }
  friend Polynomial3 operator*(const Polynomial3& p, const Polynomial3& q) {
    Polynomial3 out;
    for (const auto& [mp, cp] : p.terms_)
      for (const auto& [mq, cq] : q.terms_)
        out.add_term({mp.px + mq.px, mp.pt + mq.pt, mp.ps + mq.ps}, cp * cq);
    return out;
  }
  friend Polynomial3 operator*(const S& c, const Polynomial3& q) {
    return Polynomial3::constant(c) * q;
  }
  friend bool operator==(const Polynomial3& p, const Polynomial3& q) {
    return (p - q).is_zero();
  }

 private:
  std::map<Monomial, S> terms_;
};

using RPoly = Polynomial3<Rational>;
using QPoly = Polynomial3<QSqrt2>;

/// Vector field c_x d/dx + c_t d/dt + c_s d/ds with polynomial coefficients.
template <typename S>
struct VectorField3 {
  Polynomial3<S> cx, ct, cs;

  const Polynomial3<S>& component(int axis) const {
    return axis == 0 ? cx : axis == 1 ? ct : cs;
  }
  int degree() const {
    return std::max({cx.degree(), ct.degree(), cs.degree()});
  }
  bool is_zero() const { return cx.is_zero() && ct.is_zero() && cs.is_zero(); }
  std::array<double, 3> evaluate(double x, double t, double s) const {
    return {cx.evaluate(x, t, s), ct.evaluate(x, t, s), cs.evaluate(x, t, s)};
  }
  friend VectorField3 operator+(const VectorField3& a, const VectorField3& b) {
    return {a.cx + b.cx, a.ct + b.ct, a.cs + b.cs};
  }
  friend VectorField3 operator-(const VectorField3& a, const VectorField3& b) {
    return {a.cx - b.cx, a.ct - b.ct, a.cs - b.cs};
  }
  friend VectorField3 operator*(const S& c, const VectorField3& a) {
    return {c * a.cx, c * a.ct, c * a.cs};
  }
  friend bool operator==(const VectorField3& a, const VectorField3& b) {
    return (a - b).is_zero();
  }
};

using PolyVectorField3 = VectorField3<Rational>;
using QVectorField3 = VectorField3<QSqrt2>;

/// The ten symmetry generators X_0..X_9 on extended space, exact rational
/// coefficients, in X-index order.
const std::array<PolyVectorField3, 10>& generators();

/// Field for a charge label under the fixed correspondence
/// H<->X0, P<->X1, N<->X2, B<->X3, Delta<->X4, K<->X5, D<->X6, G<->X7,
/// C1<->X8, C2<->X9.
const PolyVectorField3& generator_field(Generator g);

/// X-index of a charge label under the same correspondence.
int x_index(Generator g);

/// Lie bracket [X,Y]^mu = X^nu d_nu Y^mu - Y^nu d_nu X^mu, exact.
template <typename S>
VectorField3<S> lie_bracket(const VectorField3<S>& X, const VectorField3<S>& Y);

/// Conformal factor lambda with (L_X g) = lambda g for the flat metric
/// dx^2 + 2 dt ds; empty when X is not conformal.
std::optional<RPoly> conformal_factor(const PolyVectorField3& X);

/// Exact decomposition of a field in the span of the ten generators;
/// throws Error on closure failure.
std::array<Rational, 10> decompose_in_basis(const PolyVectorField3& field);

struct StructureEntry {
  Generator left, right;
  std::array<Rational, 10> coeffs;  // [X_left, X_right] in the X-basis
};

struct StructureTable {
  std::vector<StructureEntry> entries;  // all 45 unordered pairs
  bool closed = true;
  int sigma = 0;       // uniform sign reconciling with the Poisson table; 0 = none
  bool sigma_unique = false;
};

/// All 45 brackets in the X-basis plus the verdict against the Poisson table.
StructureTable structure_table();

struct DictionaryReport {
  bool all_exact = true;
  std::vector<std::string> failures;
};

/// Verifies the change of basis to the standard o(3,2) generators
/// (P_x, P_0, P_y, M_01, M_02, M_12, d, K_0, K_1, K_2), exactly over Q(sqrt2).
DictionaryReport dictionary_check();

}  // namespace liealg
}  // namespace cfluid
