#pragma once

#include <string>
#include <utility>
#include <vector>

namespace dcomp {

// Exact left-hand side of an inequality under test against its assembled
// right-hand side; nonnegative slack is the theorem holding at this n.
struct BoundReport {
  std::string name;
  double lhs = 0;
  double rhs = 0;
  std::vector<std::pair<std::string, double>> components;

  double slack() const { return rhs - lhs; }
  bool holds(double tol = 1e-12) const { return lhs <= rhs + tol; }

  void component(const std::string& k, double v) { components.emplace_back(k, v); }
};

}  // namespace dcomp
