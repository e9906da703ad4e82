#include "bpassign/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bpassign/toperator.hpp"

namespace bpassign {

MeanStderr mean_stderr(std::span<const double> xs) {
  MeanStderr r;
  r.count = xs.size();
  if (xs.empty()) return r;
  for (double x : xs) r.mean += x;
  r.mean /= static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - r.mean) * (x - r.mean);
    r.std_error = std::sqrt(ss / static_cast<double>(xs.size() - 1) / static_cast<double>(xs.size()));
  }
  return r;
}

double ks_distance(std::span<const double> sample, const TailGrid& reference) {
  if (sample.empty()) throw std::invalid_argument("KS distance of an empty sample");
  std::vector<double> sorted(sample.begin(), sample.end());
  std::sort(sorted.begin(), sorted.end());
  const auto& g = reference.grid();
  const double total = static_cast<double>(sorted.size());
  double d = 0.0;
  auto above = sorted.begin();
  for (std::size_t m = 0; m < reference.size(); ++m) {
    const double x = g.x(m);
    above = std::upper_bound(above, sorted.end(), x);
    const double empirical = static_cast<double>(sorted.end() - above) / total;
    d = std::max(d, std::abs(empirical - reference.value(m)));
  }
  return d;
}

double ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("KS distance of an empty sample");
  std::vector<double> x(a.begin(), a.end()), y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == v) ++i;
    while (j < y.size() && y[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / x.size() - static_cast<double>(j) / y.size()));
  }
  return d;
}

double ks_critical_two_sample(std::size_t n, std::size_t m, double alpha) {
  const double c = std::sqrt(-0.5 * std::log(alpha / 2.0));
  return c * std::sqrt(static_cast<double>(n + m) / (static_cast<double>(n) * static_cast<double>(m)));
}

}  // namespace bpassign
