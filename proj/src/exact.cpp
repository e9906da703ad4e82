#include "bpassign/exact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace bpassign {

double assignment_cost(const CostMatrix& cost, const std::vector<std::size_t>& row_to_col) {
  double total = 0.0;
  for (std::size_t i = 0; i < row_to_col.size(); ++i) total += cost(i, row_to_col[i]);
  return total;
}

Assignment solve_exact(const CostMatrix& cost) {
  const std::size_t n = cost.n();
  if (n == 0) throw std::invalid_argument("cannot solve an empty assignment problem");
  for (double x : cost.entries())
    if (!std::isfinite(x)) throw std::invalid_argument("cost entries must be finite");

  constexpr double kInf = std::numeric_limits<double>::infinity();
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  // Column index n is a virtual root; row_of[col] is the row matched to col.
  std::vector<double> row_pot(n, 0.0), col_pot(n + 1, 0.0);
  std::vector<std::size_t> row_of(n + 1, kNone), prev_col(n + 1, n);
  std::vector<double> slack(n + 1);
  std::vector<char> visited(n + 1);

  for (std::size_t r = 0; r < n; ++r) {
    row_of[n] = r;
    std::size_t col = n;
    std::fill(slack.begin(), slack.end(), kInf);
    std::fill(visited.begin(), visited.end(), 0);
    do {
      visited[col] = 1;
      const std::size_t row = row_of[col];
      double delta = kInf;
      std::size_t next = kNone;
      for (std::size_t j = 0; j < n; ++j) {
        if (visited[j]) continue;
        const double reduced = cost(row, j) - row_pot[row] - col_pot[j];
        if (reduced < slack[j]) {
          slack[j] = reduced;
          prev_col[j] = col;
        }
        if (slack[j] < delta) {
          delta = slack[j];
          next = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (visited[j]) {
          row_pot[row_of[j]] += delta;
          col_pot[j] -= delta;
        } else {
          slack[j] -= delta;
        }
      }
      col = next;
    } while (row_of[col] != kNone);
    // Flip the alternating path back to the root.
    while (col != n) {
      const std::size_t p = prev_col[col];
      row_of[col] = row_of[p];
      col = p;
    }
  }

  Assignment a;
  a.row_to_col.assign(n, 0);
  for (std::size_t j = 0; j < n; ++j) a.row_to_col[row_of[j]] = j;
  a.value = assignment_cost(cost, a.row_to_col);
  return a;
}

Assignment solve_bruteforce(const CostMatrix& cost) {
  const std::size_t n = cost.n();
  if (n > kBruteforceMaxN)
    throw std::invalid_argument("brute force is limited to n <= " + std::to_string(kBruteforceMaxN) + ", got " +
                                std::to_string(n));
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Assignment best{perm, assignment_cost(cost, perm)};
  while (std::next_permutation(perm.begin(), perm.end())) {
    const double v = assignment_cost(cost, perm);
    if (v < best.value) best = {perm, v};
  }
  return best;
}

nlohmann::json to_json(const Assignment& a) {
  return {{"permutation", a.row_to_col}, {"value", a.value}};
}

}  // namespace bpassign
