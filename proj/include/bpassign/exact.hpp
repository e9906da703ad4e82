#pragma once

#include <cstddef>
#include <vector>

#include <json.hpp>

#include "bpassign/instance.hpp"

namespace bpassign {

/// A perfect matching: row i is matched to column row_to_col[i].
struct Assignment {
  std::vector<std::size_t> row_to_col;
  double value = 0.0;

  friend bool operator==(const Assignment&, const Assignment&) = default;
};

/// Sum of cost(i, row_to_col[i]) accumulated in row order.
double assignment_cost(const CostMatrix& cost, const std::vector<std::size_t>& row_to_col);

/// Minimum-cost perfect matching by successive shortest augmenting paths
/// with vertex potentials (Hungarian method), O(n^3).
Assignment solve_exact(const CostMatrix& cost);

/// Exhaustive search over all n! permutations in lexicographic order; the
/// first permutation reaching the minimum wins. Limited to n <= 10.
Assignment solve_bruteforce(const CostMatrix& cost);

inline constexpr std::size_t kBruteforceMaxN = 10;

nlohmann::json to_json(const Assignment& a);

}  // namespace bpassign
