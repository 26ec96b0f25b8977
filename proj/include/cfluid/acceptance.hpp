#pragma once

#include <string>
#include <vector>

namespace cfluid {
namespace acceptance {

/// One measured quantity of a criterion.  `exceed` flips the comparison for
/// symmetry-breaking checks, where the value must lie above the bound.
struct Item {
  std::string name;
  double value = 0.0;
  double bound = 0.0;
  bool exceed = false;
  bool pass = false;
};

struct CriterionResult {
  std::string name;
  std::vector<Item> items;
  bool pass = true;
};

/// Runs the eight verification criteria at the pinned tolerances.
/// The seed controls the random smooth states of the bracket checks and the
/// random points of the matrix checks; reports record it.
std::vector<CriterionResult> run_all(unsigned seed = 1);

}  // namespace acceptance
}  // namespace cfluid
