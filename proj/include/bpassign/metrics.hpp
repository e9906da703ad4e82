#pragma once

#include <cstddef>

#include "bpassign/bp.hpp"
#include "bpassign/exact.hpp"

namespace bpassign {

/// Views an assignment as a decision on all 2n vertices (columns get the
/// inverse permutation).
BipartiteDecision as_decision(const Assignment& a);

/// Fraction of the 2n vertices whose choices differ.
double hamming(const BipartiteDecision& a, const BipartiteDecision& b);

/// row_choice is a bijection and col_choice is its inverse.
bool is_perfect_matching(const BipartiteDecision& d);

/// Excess choices: for each vertex chosen by m > 1 vertices on the other
/// side, m - 1 is counted.
std::size_t collision_count(const BipartiteDecision& d);

/// Honest matching from a possibly inconsistent decision: every pair (i, j)
/// where row i picks j and column j picks i is kept, the remaining rows and
/// columns are matched optimally.
Assignment repair(const BipartiteDecision& d, const CostMatrix& cost);

struct ErrorReport {
  double hamming = 0.0;
  double bp_cost_of_repair = 0.0;
  double exact_cost = 0.0;
  std::size_t collision_count = 0;
};

ErrorReport evaluate(const BipartiteDecision& d, const CostMatrix& cost, const Assignment& exact);

}  // namespace bpassign
