#include "bpassign/bp.hpp"

#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

namespace bpassign {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_dims(const MessageState& state, const CostMatrix& cost) {
  if (state.n != cost.n())
    throw std::invalid_argument("message state is " + std::to_string(state.n) + "x" + std::to_string(state.n) +
                                " but cost matrix is " + std::to_string(cost.n()) + "x" +
                                std::to_string(cost.n()));
}

// Smallest and second smallest of a candidate row; `arg` is the lowest index
// attaining the smallest value.
struct TwoMin {
  double first = kInf;
  double second = kInf;
  std::size_t arg = 0;

  void push(double v, std::size_t idx) {
    if (v < first) {
      second = first;
      first = v;
      arg = idx;
    } else if (v < second) {
      second = v;
    }
  }
  double excluding(std::size_t idx) const { return idx == arg ? second : first; }
};

}  // namespace

MessageState init_messages(std::size_t n, double init) {
  if (n == 0) throw std::invalid_argument("instance size n must be at least 1");
  return {n, 0, std::vector<double>(n * n, init), std::vector<double>(n * n, init)};
}

void bp_step(const MessageState& state, const CostMatrix& cost, MessageState& next) {
  check_dims(state, cost);
  if (&state == &next) throw std::invalid_argument("bp_step cannot update a state in place");
  const std::size_t n = state.n;
  next.n = n;
  next.step = state.step + 1;
  next.row_to_col.resize(n * n);
  next.col_to_row.resize(n * n);

  // Both tables are indexed (row vertex, column vertex), so a single
  // row-major sweep feeds the row minima and the running column minima.
  std::vector<TwoMin> col_best(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto x = cost.row(i);
    const double* from_cols = state.col_to_row.data() + i * n;
    const double* from_row = state.row_to_col.data() + i * n;
    TwoMin best;
    for (std::size_t j = 0; j < n; ++j) {
      best.push(x[j] - from_cols[j], j);
      col_best[j].push(x[j] - from_row[j], i);
    }
    double* out = next.row_to_col.data() + i * n;
    for (std::size_t j = 0; j < n; ++j) out[j] = best.excluding(j);
  }
  for (std::size_t i = 0; i < n; ++i) {
    double* out = next.col_to_row.data() + i * n;
    for (std::size_t j = 0; j < n; ++j) out[j] = col_best[j].excluding(i);
  }
}

MessageState bp_step(const MessageState& state, const CostMatrix& cost) {
  MessageState next;
  bp_step(state, cost, next);
  return next;
}

BipartiteDecision decide(const MessageState& state, const CostMatrix& cost) {
  check_dims(state, cost);
  const std::size_t n = state.n;
  BipartiteDecision d{std::vector<std::size_t>(n), std::vector<std::size_t>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    TwoMin best;
    for (std::size_t j = 0; j < n; ++j) best.push(cost(i, j) - state.col_to_row[i * n + j], j);
    d.row_choice[i] = best.arg;
  }
  std::vector<TwoMin> col_best(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) col_best[j].push(cost(i, j) - state.row_to_col[i * n + j], i);
  for (std::size_t j = 0; j < n; ++j) d.col_choice[j] = col_best[j].arg;
  return d;
}

BpRun run(const CostMatrix& cost, std::size_t steps, bool record_trace) {
  BpRun result{init_messages(cost.n()), {}, {}};
  if (record_trace) result.trace.push_back(decide(result.state, cost));
  MessageState spare;
  for (std::size_t s = 0; s < steps; ++s) {
    bp_step(result.state, cost, spare);
    std::swap(result.state, spare);
    if (record_trace) result.trace.push_back(decide(result.state, cost));
  }
  result.decision = record_trace ? result.trace.back() : decide(result.state, cost);
  return result;
}

std::size_t RankHistogram::total() const {
  std::size_t t = 0;
  for (auto c : counts) t += c;
  return t;
}

double RankHistogram::tail_mass(std::size_t rank) const {
  const std::size_t t = total();
  if (t == 0 || rank == 0) return t == 0 ? 0.0 : 1.0;
  std::size_t above = 0;
  for (std::size_t r = rank; r <= counts.size(); ++r) above += counts[r - 1];
  return static_cast<double>(above) / static_cast<double>(t);
}

RankHistogram& RankHistogram::operator+=(const RankHistogram& other) {
  if (counts.size() < other.counts.size()) counts.resize(other.counts.size(), 0);
  for (std::size_t r = 0; r < other.counts.size(); ++r) counts[r] += other.counts[r];
  return *this;
}

RankHistogram argmin_index_histogram(const MessageState& state, const CostMatrix& cost) {
  const auto d = decide(state, cost);
  const std::size_t n = cost.n();
  RankHistogram h{std::vector<std::size_t>(n, 0)};
  for (std::size_t i = 0; i < n; ++i) {
    const double chosen = cost(i, d.row_choice[i]);
    std::size_t rank = 1;
    for (std::size_t j = 0; j < n; ++j) rank += cost(i, j) < chosen;
    ++h.counts[rank - 1];
  }
  for (std::size_t j = 0; j < n; ++j) {
    const double chosen = cost(d.col_choice[j], j);
    std::size_t rank = 1;
    for (std::size_t i = 0; i < n; ++i) rank += cost(i, j) < chosen;
    ++h.counts[rank - 1];
  }
  return h;
}

void write_messages(const MessageState& state, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out.precision(17);
  out << state.n << ',' << state.step << '\n';
  for (const auto* table : {&state.row_to_col, &state.col_to_row})
    for (std::size_t r = 0; r < state.n; ++r) {
      for (std::size_t c = 0; c < state.n; ++c) out << (c ? "," : "") << (*table)[r * state.n + c];
      out << '\n';
    }
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

MessageState read_messages(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::string line;
  std::getline(in, line);
  MessageState s;
  if (std::sscanf(line.c_str(), "%zu,%zu", &s.n, &s.step) != 2 || s.n == 0)
    throw std::runtime_error(path.string() + ": bad header '" + line + "'");
  std::vector<double> values;
  while (std::getline(in, line)) {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) values.push_back(std::stod(cell));
  }
  if (values.size() != 2 * s.n * s.n) throw std::runtime_error(path.string() + ": truncated message dump");
  s.row_to_col.assign(values.begin(), values.begin() + s.n * s.n);
  s.col_to_row.assign(values.begin() + s.n * s.n, values.end());
  return s;
}

}  // namespace bpassign
