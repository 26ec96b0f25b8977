#include "cfluid/poisson.hpp"

#include <algorithm>
#include <cmath>

namespace cfluid {
namespace poisson {

namespace {

using G = Generator;

std::vector<BracketTableEntry> build_table() {
  const Rational one(1), half(1, 2), two(2);
  auto e = [](G a, G b, std::vector<TableTerm> rhs) {
    return BracketTableEntry{a, b, std::move(rhs)};
  };
  std::vector<BracketTableEntry> t;
  t.reserve(45);
  // H row
  t.push_back(e(G::H, G::P, {}));
  t.push_back(e(G::H, G::B, {{-one, G::P}}));
  t.push_back(e(G::H, G::N, {}));
  t.push_back(e(G::H, G::Delta, {{one, G::H}}));
  t.push_back(e(G::H, G::K, {{two, G::Delta}}));
  t.push_back(e(G::H, G::D, {{one, G::H}}));
  t.push_back(e(G::H, G::G, {}));
  t.push_back(e(G::H, G::C1, {}));
  t.push_back(e(G::H, G::C2, {{one, G::G}}));
  // P row
  t.push_back(e(G::P, G::B, {{-one, G::N}}));
  t.push_back(e(G::P, G::N, {}));
  t.push_back(e(G::P, G::Delta, {{half, G::P}}));
  t.push_back(e(G::P, G::K, {{-one, G::B}}));
  t.push_back(e(G::P, G::D, {}));
  t.push_back(e(G::P, G::G, {{-one, G::H}}));
  t.push_back(e(G::P, G::C1, {{-one, G::G}}));
  t.push_back(e(G::P, G::C2, {{one, G::D}, {-two, G::Delta}}));
  // B row
  t.push_back(e(G::B, G::N, {}));
  t.push_back(e(G::B, G::Delta, {{-half, G::B}}));
  t.push_back(e(G::B, G::K, {}));
  t.push_back(e(G::B, G::D, {{-one, G::B}}));
  t.push_back(e(G::B, G::G, {{one, G::D}}));
  t.push_back(e(G::B, G::C1, {{one, G::C2}}));
  t.push_back(e(G::B, G::C2, {{one, G::K}}));
  // N row
  t.push_back(e(G::N, G::Delta, {}));
  t.push_back(e(G::N, G::K, {}));
  t.push_back(e(G::N, G::D, {{-one, G::N}}));
  t.push_back(e(G::N, G::G, {{-one, G::P}}));
  t.push_back(e(G::N, G::C1, {{two, G::Delta}, {-two, G::D}}));
  t.push_back(e(G::N, G::C2, {{one, G::B}}));
  // Delta row
  t.push_back(e(G::Delta, G::K, {{one, G::K}}));
  t.push_back(e(G::Delta, G::D, {}));
  t.push_back(e(G::Delta, G::G, {{-half, G::G}}));
  t.push_back(e(G::Delta, G::C1, {}));
  t.push_back(e(G::Delta, G::C2, {{half, G::C2}}));
  // K row
  t.push_back(e(G::K, G::D, {{-one, G::K}}));
  t.push_back(e(G::K, G::G, {{-one, G::C2}}));
  t.push_back(e(G::K, G::C1, {}));
  t.push_back(e(G::K, G::C2, {}));
  // D row
  t.push_back(e(G::D, G::G, {{-one, G::G}}));
  t.push_back(e(G::D, G::C1, {{-one, G::C1}}));
  t.push_back(e(G::D, G::C2, {}));
  // G row
  t.push_back(e(G::G, G::C1, {}));
  t.push_back(e(G::G, G::C2, {{one, G::C1}}));
  // C row
  t.push_back(e(G::C1, G::C2, {}));
  return t;
}

}  // namespace

const std::vector<BracketTableEntry>& bracket_table() {
  static const std::vector<BracketTableEntry> table = build_table();
  return table;
}

std::vector<TableTerm> table_rhs(Generator a, Generator b) {
  if (a == b) return {};
  for (const auto& entry : bracket_table()) {
    if (entry.left == a && entry.right == b) return entry.rhs;
    if (entry.left == b && entry.right == a) {
      std::vector<TableTerm> flipped = entry.rhs;
      for (auto& term : flipped) term.coeff = -term.coeff;
      return flipped;
    }
  }
  throw Error("pair missing from bracket table");
}

double bracket(Generator a, Generator b, const FieldPair& state,
               const Potential& pot) {
  const FunctionalGradient ga = functional_gradient(a, state, pot);
  const FunctionalGradient gb = functional_gradient(b, state, pot);
  return integrate(ga.dR * gb.dTheta - ga.dTheta * gb.dR);
}

namespace {

BracketCheck check_pair(Generator a, Generator b, const FieldPair& state,
                        const Potential& pot) {
  BracketCheck check;
  check.left = a;
  check.right = b;
  check.lhs = bracket(a, b, state, pot);
  double rhs = 0.0, magnitude = 0.0;
  for (const auto& term : table_rhs(a, b)) {
    const double q = term.coeff.to_double() * charge(term.g, state, pot);
    rhs += q;
    magnitude += std::abs(q);
  }
  check.rhs = rhs;
  const double scale =
      std::max({1.0, std::abs(check.lhs), std::abs(rhs), magnitude});
  check.residual = std::abs(check.lhs - rhs) / scale;
  return check;
}

}  // namespace

std::vector<BracketCheck> verify_table(const FieldPair& state,
                                       const Potential& pot) {
  std::vector<BracketCheck> checks;
  checks.reserve(bracket_table().size());
  for (const auto& entry : bracket_table())
    checks.push_back(check_pair(entry.left, entry.right, state, pot));
  return checks;
}

std::vector<BracketCheck> verify_table_subset(
    const FieldPair& state, const Potential& pot,
    const std::vector<Generator>& subset) {
  std::vector<BracketCheck> checks;
  for (const auto& entry : bracket_table()) {
    const bool left_in =
        std::find(subset.begin(), subset.end(), entry.left) != subset.end();
    const bool right_in =
        std::find(subset.begin(), subset.end(), entry.right) != subset.end();
    if (left_in && right_in)
      checks.push_back(check_pair(entry.left, entry.right, state, pot));
  }
  return checks;
}

std::array<Rational, 10> jacobi_cyclic_sum(Generator a, Generator b,
                                           Generator c) {
  auto index = [](Generator g) {
    return static_cast<std::size_t>(
        std::distance(kGenerators.begin(),
                      std::find(kGenerators.begin(), kGenerators.end(), g)));
  };
  std::array<Rational, 10> sum{};
  // {a,{b,c}} expanded linearly through the table.
  auto accumulate = [&](Generator outer, Generator inner1, Generator inner2) {
    for (const auto& term : table_rhs(inner1, inner2)) {
      for (const auto& nested : table_rhs(outer, term.g)) {
        sum[index(nested.g)] =
            sum[index(nested.g)] + term.coeff * nested.coeff;
      }
    }
  };
  accumulate(a, b, c);
  accumulate(b, c, a);
  accumulate(c, a, b);
  return sum;
}

}  // namespace poisson
}  // namespace cfluid
