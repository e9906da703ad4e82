#pragma once

#include <cstddef>
#include <filesystem>
#include <vector>

#include "bpassign/instance.hpp"

namespace bpassign {

/// Messages of min-sum BP on K_nn after `step` synchronous updates.
///   row_to_col[i * n + j] = <r_i -> c_j>
///   col_to_row[i * n + j] = <c_j -> r_i>
/// Both tables are indexed by (row vertex, column vertex).
/// Values are extended reals; +inf appears only for n = 1.
struct MessageState {
  std::size_t n = 0;
  std::size_t step = 0;
  std::vector<double> row_to_col;
  std::vector<double> col_to_row;

  double r2c(std::size_t i, std::size_t j) const { return row_to_col[i * n + j]; }
  double c2r(std::size_t j, std::size_t i) const { return col_to_row[i * n + j]; }

  friend bool operator==(const MessageState&, const MessageState&) = default;
};

/// Per-vertex argmin choices. Not necessarily a matching.
struct BipartiteDecision {
  std::vector<std::size_t> row_choice;  // column chosen by each row
  std::vector<std::size_t> col_choice;  // row chosen by each column

  std::size_t n() const { return row_choice.size(); }
  friend bool operator==(const BipartiteDecision&, const BipartiteDecision&) = default;
};

/// All messages equal to `init` (0 for the algorithm proper).
MessageState init_messages(std::size_t n, double init = 0.0);

/// One synchronous update:
///   <r_i -> c_j>' = min_{j' != j} (X_ij' - <c_j' -> r_i>)
///   <c_j -> r_i>' = min_{i' != i} (X_i'j - <r_i' -> c_j>)
/// Each vertex keeps its two smallest candidate values, so a step is O(n^2).
MessageState bp_step(const MessageState& state, const CostMatrix& cost);
/// Same update written into `next`, reusing its storage. `next` must not
/// alias `state`.
void bp_step(const MessageState& state, const CostMatrix& cost, MessageState& next);

/// row_choice[i] = argmin_j (X_ij - <c_j -> r_i>), lowest index on ties;
/// col_choice symmetric.
BipartiteDecision decide(const MessageState& state, const CostMatrix& cost);

struct BpRun {
  MessageState state;
  BipartiteDecision decision;
  std::vector<BipartiteDecision> trace;  // decision after steps 0..k when recorded
};

BpRun run(const CostMatrix& cost, std::size_t steps, bool record_trace = false);

/// Distribution of the weight rank (1 = lightest incident edge) of the
/// neighbour each vertex picks under the decision rule.
struct RankHistogram {
  std::vector<std::size_t> counts;  // counts[r - 1] vertices chose rank r
  std::size_t total() const;
  /// Fraction of vertices whose chosen rank is >= rank.
  double tail_mass(std::size_t rank) const;
  RankHistogram& operator+=(const RankHistogram& other);
};

RankHistogram argmin_index_histogram(const MessageState& state, const CostMatrix& cost);

// Text dump: first line "n,k", then the n rows of row_to_col followed by the
// n rows of col_to_row (row i holds <c_j -> r_i> for j = 0..n-1).
void write_messages(const MessageState& state, const std::filesystem::path& path);
MessageState read_messages(const std::filesystem::path& path);

}  // namespace bpassign
