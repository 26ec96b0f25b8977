#include "cfluid/liealg.hpp"

#include <algorithm>

#include "cfluid/poisson.hpp"

namespace cfluid {
namespace liealg {

namespace {

RPoly rp_const(std::int64_t n, std::int64_t d = 1) {
  return RPoly::constant(Rational(n, d));
}
const RPoly X = RPoly::variable(0);
const RPoly T = RPoly::variable(1);
const RPoly S = RPoly::variable(2);

std::array<PolyVectorField3, 10> build_generators() {
  std::array<PolyVectorField3, 10> g;
  // X0 = d_t
  g[0] = {RPoly{}, rp_const(1), RPoly{}};
  // X1 = -d_x
  g[1] = {rp_const(-1), RPoly{}, RPoly{}};
  // X2 = -d_s
  g[2] = {RPoly{}, RPoly{}, rp_const(-1)};
  // X3 = t d_x - x d_s
  g[3] = {T, RPoly{}, rp_const(-1) * X};
  // X4 = t d_t + x/2 d_x
  g[4] = {rp_const(1, 2) * X, T, RPoly{}};
  // X5 = t^2 d_t + x t d_x - x^2/2 d_s
  g[5] = {X * T, T * T, rp_const(-1, 2) * (X * X)};
  // X6 = t d_t - s d_s
  g[6] = {RPoly{}, T, rp_const(-1) * S};
  // X7 = x d_t - s d_x
  g[7] = {rp_const(-1) * S, X, RPoly{}};
  // X8 = x^2/2 d_t - x s d_x - s^2 d_s
  g[8] = {rp_const(-1) * (X * S), rp_const(1, 2) * (X * X),
          rp_const(-1) * (S * S)};
  // X9 = x t d_t + (x^2/2 - t s) d_x + x s d_s
  g[9] = {rp_const(1, 2) * (X * X) - T * S, X * T, X * S};
  return g;
}

// Flat extended-space metric dx^2 + 2 dt ds in coordinates (x,t,s).
constexpr int kMetric[3][3] = {{1, 0, 0}, {0, 0, 1}, {0, 1, 0}};

}  // namespace

const std::array<PolyVectorField3, 10>& generators() {
  static const std::array<PolyVectorField3, 10> g = build_generators();
  return g;
}

int x_index(Generator g) {
  switch (g) {
    case Generator::H: return 0;
    case Generator::P: return 1;
    case Generator::N: return 2;
    case Generator::B: return 3;
    case Generator::Delta: return 4;
    case Generator::K: return 5;
    case Generator::D: return 6;
    case Generator::G: return 7;
    case Generator::C1: return 8;
    case Generator::C2: return 9;
  }
  throw Error("unknown generator");
}

const PolyVectorField3& generator_field(Generator g) {
  return generators()[static_cast<std::size_t>(x_index(g))];
}

template <typename S>
VectorField3<S> lie_bracket(const VectorField3<S>& Xf,
                            const VectorField3<S>& Yf) {
  VectorField3<S> out;
  for (int mu = 0; mu < 3; ++mu) {
    Polynomial3<S> comp;
    for (int nu = 0; nu < 3; ++nu) {
      comp = comp + Xf.component(nu) * Yf.component(mu).derivative(nu) -
             Yf.component(nu) * Xf.component(mu).derivative(nu);
    }
    (mu == 0 ? out.cx : mu == 1 ? out.ct : out.cs) = comp;
  }
  return out;
}

template VectorField3<Rational> lie_bracket(const VectorField3<Rational>&,
                                            const VectorField3<Rational>&);
template VectorField3<QSqrt2> lie_bracket(const VectorField3<QSqrt2>&,
                                          const VectorField3<QSqrt2>&);

std::optional<RPoly> conformal_factor(const PolyVectorField3& Xf) {
  // (L_X g)_{mu nu} = g_{sigma nu} d_mu X^sigma + g_{mu sigma} d_nu X^sigma.
  RPoly L[3][3];
  for (int mu = 0; mu < 3; ++mu)
    for (int nu = 0; nu < 3; ++nu) {
      RPoly entry;
      for (int sigma = 0; sigma < 3; ++sigma) {
        if (kMetric[sigma][nu] != 0)
          entry = entry + rp_const(kMetric[sigma][nu]) *
                              Xf.component(sigma).derivative(mu);
        if (kMetric[mu][sigma] != 0)
          entry = entry + rp_const(kMetric[mu][sigma]) *
                              Xf.component(sigma).derivative(nu);
      }
      L[mu][nu] = entry;
    }
  const RPoly lambda = L[0][0];  // g_xx = 1
  for (int mu = 0; mu < 3; ++mu)
    for (int nu = 0; nu < 3; ++nu) {
      const RPoly expected = rp_const(kMetric[mu][nu]) * lambda;
      if (!(L[mu][nu] == expected)) return std::nullopt;
    }
  return lambda;
}

std::array<Rational, 10> decompose_in_basis(const PolyVectorField3& field) {
  // Coordinates: 3 components x 10 monomials of degree <= 2.
  static const std::array<Monomial, 10> kMonomials = {
      Monomial{0, 0, 0}, Monomial{1, 0, 0}, Monomial{0, 1, 0},
      Monomial{0, 0, 1}, Monomial{2, 0, 0}, Monomial{1, 1, 0},
      Monomial{1, 0, 1}, Monomial{0, 2, 0}, Monomial{0, 1, 1},
      Monomial{0, 0, 2}};

  if (field.degree() > 2) throw Error("closure failure: bracket degree > 2");

  auto coords = [&](const PolyVectorField3& f) {
    std::array<Rational, 30> v{};
    for (int comp = 0; comp < 3; ++comp)
      for (std::size_t m = 0; m < kMonomials.size(); ++m)
        v[static_cast<std::size_t>(comp) * 10 + m] =
            f.component(comp).coefficient(kMonomials[m]);
    return v;
  };

  // Augmented matrix [basis | field], exact Gaussian elimination.
  std::array<std::array<Rational, 11>, 30> A{};
  const auto& basis = generators();
  for (int k = 0; k < 10; ++k) {
    auto col = coords(basis[static_cast<std::size_t>(k)]);
    for (int r = 0; r < 30; ++r) A[r][k] = col[r];
  }
  {
    auto b = coords(field);
    for (int r = 0; r < 30; ++r) A[r][10] = b[r];
  }

  std::array<int, 10> pivot_row;
  pivot_row.fill(-1);
  int row = 0;
  for (int col = 0; col < 10 && row < 30; ++col) {
    int p = -1;
    for (int r = row; r < 30; ++r)
      if (!A[r][col].is_zero()) {
        p = r;
        break;
      }
    if (p < 0) continue;
    std::swap(A[p], A[row]);
    const Rational inv = Rational(1) / A[row][col];
    for (int c = col; c <= 10; ++c) A[row][c] = A[row][c] * inv;
    for (int r = 0; r < 30; ++r) {
      if (r == row || A[r][col].is_zero()) continue;
      const Rational f = A[r][col];
      for (int c = col; c <= 10; ++c) A[r][c] = A[r][c] - f * A[row][c];
    }
    pivot_row[col] = row;
    ++row;
  }

  // Rows past the pivots must have zero in the augmented column.
  for (int r = row; r < 30; ++r)
    if (!A[r][10].is_zero())
      throw Error("closure failure: field outside span of X0..X9");

  std::array<Rational, 10> coeffs{};
  for (int col = 0; col < 10; ++col)
    if (pivot_row[col] >= 0) coeffs[col] = A[pivot_row[col]][10];
  return coeffs;
}

StructureTable structure_table() {
  StructureTable table;
  // Brackets for all 45 unordered charge pairs, in enum order.
  for (std::size_t a = 0; a < kGenerators.size(); ++a) {
    for (std::size_t b = a + 1; b < kGenerators.size(); ++b) {
      StructureEntry entry;
      entry.left = kGenerators[a];
      entry.right = kGenerators[b];
      PolyVectorField3 br =
          lie_bracket(generator_field(entry.left), generator_field(entry.right));
      std::array<Rational, 10> x_coeffs;
      try {
        x_coeffs = decompose_in_basis(br);
      } catch (const Error&) {
        table.closed = false;
        table.entries.push_back(entry);
        continue;
      }
      // Reindex from X-order to charge order.
      for (std::size_t i = 0; i < kGenerators.size(); ++i)
        entry.coeffs[i] =
            x_coeffs[static_cast<std::size_t>(x_index(kGenerators[i]))];
      table.entries.push_back(entry);
    }
  }
  if (!table.closed) return table;

  // A single sign sigma must reconcile every bracket with the Poisson table.
  bool plus_ok = true, minus_ok = true;
  for (const auto& entry : table.entries) {
    std::array<Rational, 10> rhs{};
    for (const auto& term : poisson::table_rhs(entry.left, entry.right)) {
      auto pos = std::distance(
          kGenerators.begin(),
          std::find(kGenerators.begin(), kGenerators.end(), term.g));
      rhs[static_cast<std::size_t>(pos)] =
          rhs[static_cast<std::size_t>(pos)] + term.coeff;
    }
    for (std::size_t i = 0; i < 10; ++i) {
      if (!(entry.coeffs[i] == rhs[i])) plus_ok = false;
      if (!(entry.coeffs[i] == -rhs[i])) minus_ok = false;
    }
  }
  table.sigma = plus_ok ? 1 : (minus_ok ? -1 : 0);
  table.sigma_unique = (plus_ok != minus_ok);
  return table;
}

namespace {

QPoly lift(const RPoly& p) {
  QPoly out;
  for (const auto& [m, c] : p.terms()) out.add_term(m, QSqrt2(c));
  return out;
}

QVectorField3 lift(const PolyVectorField3& f) {
  return {lift(f.cx), lift(f.ct), lift(f.cs)};
}

QVectorField3 scale(const QSqrt2& c, const QVectorField3& f) { return c * f; }

}  // namespace

DictionaryReport dictionary_check() {
  using VF = QVectorField3;
  const QSqrt2 one{Rational(1)};
  const QSqrt2 half{Rational(1, 2)};
  const QSqrt2 r2 = QSqrt2::sqrt2();
  const QSqrt2 inv_r2 = one / r2;

  const QPoly x = QPoly::variable(0);
  const QPoly t = QPoly::variable(1);
  const QPoly s = QPoly::variable(2);
  auto c = [](Rational r) { return QPoly::constant(QSqrt2(r)); };

  // Standard o(3,2) basis in light-cone coordinates.
  const VF Px{c(Rational(1)), QPoly{}, QPoly{}};
  const VF P0 = {QPoly{}, inv_r2 * c(Rational(-1)), inv_r2 * c(Rational(1))};
  const VF Py = {QPoly{}, inv_r2 * c(Rational(1)), inv_r2 * c(Rational(1))};
  const VF M01 = {inv_r2 * (t - s), inv_r2 * x, inv_r2 * (c(Rational(-1)) * x)};
  const VF M02 = {QPoly{}, t, c(Rational(-1)) * s};
  const VF M12 = {inv_r2 * (c(Rational(-1)) * (t + s)), inv_r2 * x,
                  inv_r2 * x};
  const VF d = {x, t, s};
  const VF K0 = {r2 * (x * (t - s)), r2 * (t * t) + inv_r2 * (x * x),
                 r2 * (c(Rational(-1)) * (s * s)) - inv_r2 * (x * x)};
  const VF K1 = {half * (x * x) - QSqrt2(Rational(1)) * (t * s), x * t, x * s};
  const VF K2 = {r2 * (x * (t + s)), r2 * (t * t) - inv_r2 * (x * x),
                 r2 * (s * s) - inv_r2 * (x * x)};

  const auto& Xs = generators();
  struct Identity {
    const char* name;
    int index;
    VF rhs;
  };
  const QSqrt2 two_r2 = QSqrt2(Rational(2)) * r2;
  std::vector<Identity> identities;
  identities.push_back({"X1 = -P_x", 1, scale(-one, Px)});
  identities.push_back({"X0 = (P_y - P_0)/sqrt2", 0, scale(one / r2, Py - P0)});
  identities.push_back(
      {"X2 = -(P_y + P_0)/sqrt2", 2, scale(-(one / r2), Py + P0)});
  identities.push_back(
      {"X3 = (M01 - M12)/sqrt2", 3, scale(one / r2, M01 - M12)});
  identities.push_back({"X4 = (M02 + d)/2", 4, scale(half, M02 + d)});
  identities.push_back({"X5 = (K0 + K2)/(2 sqrt2)", 5, scale(one / two_r2, K0 + K2)});
  identities.push_back({"X6 = M02", 6, M02});
  identities.push_back({"X7 = (M01 + M12)/sqrt2", 7, scale(one / r2, M01 + M12)});
  identities.push_back({"X8 = (K0 - K2)/(2 sqrt2)", 8, scale(one / two_r2, K0 - K2)});
  identities.push_back({"X9 = K1", 9, K1});

  DictionaryReport report;
  for (const auto& id : identities) {
    // Compare in the cleared form 2*sqrt2 * X_i vs 2*sqrt2 * rhs so every
    // coefficient is exactly representable.
    const VF lhs = scale(two_r2, lift(Xs[static_cast<std::size_t>(id.index)]));
    const VF rhs = scale(two_r2, id.rhs);
    if (!(lhs == rhs)) {
      report.all_exact = false;
      report.failures.push_back(id.name);
    }
  }
  return report;
}

}  // namespace liealg
}  // namespace cfluid
