#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace bpassign {

class TailGrid;

struct MeanStderr {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t count = 0;
};
MeanStderr mean_stderr(std::span<const double> xs);

/// sup over grid points x of |#{X > x}/N - F(x)|. Evaluating on the grid
/// makes the distance to a grid-sampled point mass exactly 0.
double ks_distance(std::span<const double> sample, const TailGrid& reference);

/// Two-sample Kolmogorov-Smirnov statistic.
double ks_two_sample(std::span<const double> a, std::span<const double> b);

/// Asymptotic critical value of the two-sample statistic at level alpha.
double ks_critical_two_sample(std::size_t n, std::size_t m, double alpha);

}  // namespace bpassign
