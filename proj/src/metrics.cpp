#include "bpassign/metrics.hpp"

#include <stdexcept>
#include <vector>

namespace bpassign {

BipartiteDecision as_decision(const Assignment& a) {
  const std::size_t n = a.row_to_col.size();
  BipartiteDecision d{a.row_to_col, std::vector<std::size_t>(n)};
  for (std::size_t i = 0; i < n; ++i) d.col_choice.at(a.row_to_col[i]) = i;
  return d;
}

double hamming(const BipartiteDecision& a, const BipartiteDecision& b) {
  const std::size_t n = a.n();
  if (b.n() != n || a.col_choice.size() != n || b.col_choice.size() != n)
    throw std::invalid_argument("hamming distance needs decisions of equal size");
  if (n == 0) return 0.0;
  std::size_t differ = 0;
  for (std::size_t v = 0; v < n; ++v) {
    differ += a.row_choice[v] != b.row_choice[v];
    differ += a.col_choice[v] != b.col_choice[v];
  }
  return static_cast<double>(differ) / static_cast<double>(2 * n);
}

bool is_perfect_matching(const BipartiteDecision& d) {
  const std::size_t n = d.n();
  if (d.col_choice.size() != n) return false;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = d.row_choice[i];
    if (j >= n || d.col_choice[j] != i) return false;
  }
  // col_choice inverts row_choice on every row, so row_choice is injective;
  // being a map [n] -> [n] it is a bijection.
  return true;
}

std::size_t collision_count(const BipartiteDecision& d) {
  const std::size_t n = d.n();
  std::vector<std::size_t> col_hits(n, 0), row_hits(n, 0);
  for (auto j : d.row_choice) ++col_hits.at(j);
  for (auto i : d.col_choice) ++row_hits.at(i);
  std::size_t excess = 0;
  for (std::size_t v = 0; v < n; ++v) {
    excess += col_hits[v] > 1 ? col_hits[v] - 1 : 0;
    excess += row_hits[v] > 1 ? row_hits[v] - 1 : 0;
  }
  return excess;
}

Assignment repair(const BipartiteDecision& d, const CostMatrix& cost) {
  const std::size_t n = cost.n();
  if (d.n() != n || d.col_choice.size() != n)
    throw std::invalid_argument("decision and cost matrix sizes differ");

  std::vector<std::size_t> row_to_col(n, n);
  std::vector<char> col_taken(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = d.row_choice[i];
    if (j < n && d.col_choice[j] == i) {
      row_to_col[i] = j;
      col_taken[j] = 1;
    }
  }

  std::vector<std::size_t> free_rows, free_cols;
  for (std::size_t i = 0; i < n; ++i)
    if (row_to_col[i] == n) free_rows.push_back(i);
  for (std::size_t j = 0; j < n; ++j)
    if (!col_taken[j]) free_cols.push_back(j);

  if (!free_rows.empty()) {
    const std::size_t m = free_rows.size();
    std::vector<double> sub(m * m);
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b) sub[a * m + b] = cost(free_rows[a], free_cols[b]);
    const auto residual = solve_exact(CostMatrix::from_entries(m, std::move(sub)));
    for (std::size_t a = 0; a < m; ++a) row_to_col[free_rows[a]] = free_cols[residual.row_to_col[a]];
  }
  return {row_to_col, assignment_cost(cost, row_to_col)};
}

ErrorReport evaluate(const BipartiteDecision& d, const CostMatrix& cost, const Assignment& exact) {
  return {hamming(d, as_decision(exact)), repair(d, cost).value, exact.value, collision_count(d)};
}

}  // namespace bpassign
