#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace bpassign {

using NodeId = std::uint64_t;

/// Poisson Weighted Infinite Tree truncated to a full B-ary tree of depth D.
///
/// Nodes are numbered breadth-first (root 0, child i of v is v * B + i + 1
/// for i = 0..B-1), which does not depend on D. Edge weights are generated
/// on demand from (seed, node, slot) with a counter-based generator, so a
/// node's weights are identical in every tree sharing seed and width, and
/// nothing is materialised up front.
class PwitTree {
 public:
  PwitTree(std::size_t depth, std::size_t width, std::uint64_t seed);

  std::size_t depth() const { return depth_; }
  std::size_t width() const { return width_; }
  std::uint64_t seed() const { return seed_; }

  /// sum_{h=0}^{D} B^h.
  std::uint64_t node_count() const;
  NodeId child(NodeId v, std::size_t i) const { return v * width_ + i + 1; }
  /// First id at depth d (the root is alone at depth 0).
  NodeId first_at_depth(std::size_t d) const;
  std::size_t depth_of(NodeId v) const;

  /// xi^v_1 < ... < xi^v_B: cumulative sums of i.i.d. Exp(1) spacings.
  void weights(NodeId v, std::span<double> out) const;
  std::vector<double> weights(NodeId v) const;
  double first_weight(NodeId v) const;

 private:
  double spacing(NodeId v, std::size_t slot) const;

  std::size_t depth_;
  std::size_t width_;
  std::uint64_t seed_;
};

PwitTree sample_pwit(std::size_t depth, std::size_t width, std::uint64_t seed);

std::vector<double> weights_from_spacings(std::span<const double> spacings);

/// min_i (weights[i] - child_messages[i]) and the lowest index attaining it.
struct MinTerm {
  double value;
  std::size_t index;
};
MinTerm min_term(std::span<const double> weights, std::span<const double> child_messages);

/// Up-messages <v -> parent(v)> after `step` rounds of the tree recursion,
/// kept for every node at depth 1..exact_depth with exact_depth = D - step.
/// Those are exactly the nodes whose step-`step` message does not reach
/// below the truncation depth.
struct TreeMessages {
  std::size_t step = 0;
  double init = 0.0;
  std::size_t width = 0;
  std::size_t exact_depth = 0;
  std::vector<double> up;  // indexed by node id - 1

  // Truncation diagnostic over every min evaluated for this computation.
  std::uint64_t evaluated_mins = 0;
  std::uint64_t last_child_argmins = 0;

  double up_message(NodeId v) const;
  /// Message from the root's first child; its law is T^k F_init.
  double root_message() const { return up_message(1); }
  /// Fraction of evaluated mins attained at the last (B-th) child.
  double exceedance_rate() const;
};

/// Runs the recursion <v -> parent>^{s+1} = min_i (xi^v_i - <v.i -> v>^s)
/// from constant initial messages. Requires step <= D - 1.
TreeMessages tree_bp(const PwitTree& tree, std::size_t step, double init = 0.0);

/// Single up-message <v -> parent(v)> at `step`, evaluated without storing
/// the rest of the tree. Requires depth(v) + step <= D.
double node_message(const PwitTree& tree, NodeId v, std::size_t step, double init = 0.0);

/// 1-based rank of the child minimising xi^root_i - <i -> root>^k.
std::size_t root_decision(const PwitTree& tree, const TreeMessages& messages);

}  // namespace bpassign
