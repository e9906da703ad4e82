#include "bpassign/pwit.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "bpassign/rng.hpp"

namespace bpassign {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Upper bound on weight draws one tree_bp call may perform.
constexpr double kWorkLimit = 2e10;

// Depth-first evaluation of step-s up-messages with one scratch buffer of
// weights and child messages per recursion level.
class Evaluator {
 public:
  Evaluator(const PwitTree& tree, double init, std::size_t max_step, TreeMessages& stats)
      : tree_(tree), init_(init), stats_(stats), weights_(max_step + 1), children_(max_step + 1) {
    for (auto& w : weights_) w.resize(tree.width());
    for (auto& c : children_) c.resize(tree.width());
  }

  double message(NodeId v, std::size_t s) {
    if (s == 0) return init_;
    ++stats_.evaluated_mins;
    // Every child carries the same initial message, so the lightest edge wins.
    if (s == 1) return tree_.first_weight(v) - init_;
    auto& w = weights_[s];
    auto& c = children_[s];
    tree_.weights(v, w);
    for (std::size_t i = 0; i < w.size(); ++i) c[i] = message(tree_.child(v, i), s - 1);
    const auto best = min_term(w, c);
    stats_.last_child_argmins += best.index + 1 == w.size();
    return best.value;
  }

 private:
  const PwitTree& tree_;
  double init_;
  TreeMessages& stats_;
  std::vector<std::vector<double>> weights_;
  std::vector<std::vector<double>> children_;
};

}  // namespace

PwitTree::PwitTree(std::size_t depth, std::size_t width, std::uint64_t seed)
    : depth_(depth), width_(width), seed_(seed) {
  if (depth < 1) throw std::invalid_argument("PWIT depth must be at least 1");
  if (width < 2) throw std::invalid_argument("PWIT width must be at least 2");
  // Node ids up to depth D must fit in 64 bits.
  double count = 0.0, level = 1.0;
  for (std::size_t h = 0; h <= depth; ++h, level *= static_cast<double>(width)) count += level;
  if (count >= 1.8e19)
    throw std::invalid_argument("PWIT with depth " + std::to_string(depth) + " and width " + std::to_string(width) +
                                " has too many nodes to index");
}

std::uint64_t PwitTree::node_count() const {
  std::uint64_t count = 0, level = 1;
  for (std::size_t h = 0; h <= depth_; ++h, level *= width_) count += level;
  return count;
}

NodeId PwitTree::first_at_depth(std::size_t d) const {
  NodeId first = 0, level = 1;
  for (std::size_t h = 0; h < d; ++h, level *= width_) first += level;
  return first;
}

std::size_t PwitTree::depth_of(NodeId v) const {
  std::size_t d = 0;
  while (v != 0) {
    v = (v - 1) / width_;
    ++d;
  }
  return d;
}

double PwitTree::spacing(NodeId v, std::size_t slot) const {
  return exponential_from_bits(keyed_bits(derive_seed(seed_, v), slot));
}

void PwitTree::weights(NodeId v, std::span<double> out) const {
  if (out.size() != width_) throw std::invalid_argument("weight buffer must hold B values");
  const std::uint64_t key = derive_seed(seed_, v);
  double acc = 0.0;
  for (std::size_t i = 0; i < width_; ++i) {
    acc += exponential_from_bits(keyed_bits(key, i));
    out[i] = acc;
  }
}

std::vector<double> PwitTree::weights(NodeId v) const {
  std::vector<double> w(width_);
  weights(v, w);
  return w;
}

double PwitTree::first_weight(NodeId v) const { return spacing(v, 0); }

PwitTree sample_pwit(std::size_t depth, std::size_t width, std::uint64_t seed) { return {depth, width, seed}; }

std::vector<double> weights_from_spacings(std::span<const double> spacings) {
  std::vector<double> w(spacings.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < spacings.size(); ++i) {
    if (!(spacings[i] > 0.0)) throw std::invalid_argument("Poisson spacings must be positive");
    w[i] = acc += spacings[i];
  }
  return w;
}

MinTerm min_term(std::span<const double> weights, std::span<const double> child_messages) {
  if (weights.size() != child_messages.size()) throw std::invalid_argument("one message per child is required");
  MinTerm best{kInf, 0};
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const double v = weights[i] - child_messages[i];
    if (v < best.value) best = {v, i};
  }
  return best;
}

double TreeMessages::up_message(NodeId v) const {
  if (v == 0 || v > up.size()) throw std::out_of_range("node " + std::to_string(v) + " has no stored up-message");
  return up[v - 1];
}

double TreeMessages::exceedance_rate() const {
  return evaluated_mins == 0 ? 0.0 : static_cast<double>(last_child_argmins) / static_cast<double>(evaluated_mins);
}

TreeMessages tree_bp(const PwitTree& tree, std::size_t step, double init) {
  if (step >= tree.depth())
    throw std::invalid_argument("tree_bp needs step <= D - 1 (step " + std::to_string(step) + ", D " +
                                std::to_string(tree.depth()) + ")");
  if (!std::isfinite(init)) throw std::invalid_argument("initial message must be finite");

  TreeMessages out;
  out.step = step;
  out.init = init;
  out.width = tree.width();
  out.exact_depth = tree.depth() - step;
  const NodeId stored = tree.first_at_depth(out.exact_depth + 1) - 1;
  const double work =
      static_cast<double>(stored) * std::pow(static_cast<double>(tree.width()), step > 1 ? step - 1.0 : 0.0);
  if (work > kWorkLimit)
    throw std::invalid_argument("tree_bp would evaluate about " + std::to_string(work) +
                                " weights; reduce depth, width or step");

  out.up.resize(stored);
  Evaluator eval(tree, init, step, out);
  for (NodeId v = 1; v <= stored; ++v) out.up[v - 1] = eval.message(v, step);
  return out;
}

double node_message(const PwitTree& tree, NodeId v, std::size_t step, double init) {
  if (v == 0) throw std::invalid_argument("the root sends no up-message");
  if (tree.depth_of(v) + step > tree.depth())
    throw std::invalid_argument("message at step " + std::to_string(step) + " would reach below depth " +
                                std::to_string(tree.depth()));
  TreeMessages stats;
  Evaluator eval(tree, init, step, stats);
  return eval.message(v, step);
}

std::size_t root_decision(const PwitTree& tree, const TreeMessages& messages) {
  if (messages.width != tree.width() || messages.up.size() < tree.width())
    throw std::invalid_argument("messages were not computed on this tree");
  const auto w = tree.weights(0);
  std::vector<double> incoming(tree.width());
  for (std::size_t i = 0; i < incoming.size(); ++i) incoming[i] = messages.up_message(tree.child(0, i));
  return min_term(w, incoming).index + 1;
}

}  // namespace bpassign
