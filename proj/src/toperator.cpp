#include "bpassign/toperator.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <string>

namespace bpassign {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Grid points inside the window, as an index range [first, last].
std::pair<std::size_t, std::size_t> window_range(const GridSpec& g, const Window& w) {
  const double eps = 1e-9 * g.step;
  const auto first = static_cast<std::size_t>(std::ceil((std::max(w.lo, g.lo) - g.lo - eps) / g.step));
  const auto last = static_cast<std::size_t>(std::floor((std::min(w.hi, g.hi) - g.lo + eps) / g.step));
  if (w.lo >= w.hi || first > last || last >= g.size())
    throw std::invalid_argument("evaluation window does not intersect the grid");
  return {first, last};
}

double interpolate(std::span<const double> v, const GridSpec& g, double x) {
  const double pos = (x - g.lo) / g.step;
  if (pos <= 0.0) return v.front();
  const auto last = static_cast<double>(v.size() - 1);
  if (pos >= last) return v.back();
  const auto m = static_cast<std::size_t>(pos);
  const double frac = pos - static_cast<double>(m);
  return frac == 0.0 ? v[m] : v[m] + frac * (v[m + 1] - v[m]);
}

}  // namespace

std::size_t GridSpec::size() const {
  return static_cast<std::size_t>(std::llround((hi - lo) / step)) + 1;
}

void GridSpec::validate() const {
  if (!(step > 0.0) || !(hi > lo) || !std::isfinite(lo) || !std::isfinite(hi))
    throw std::invalid_argument("grid needs lo < hi and a positive step");
  if (std::abs(lo + hi) > 1e-9 * step)
    throw std::invalid_argument("grid must be symmetric about 0 (lo = -hi)");
  const double cells = (hi - lo) / step;
  if (std::abs(cells - std::round(cells)) > 1e-6)
    throw std::invalid_argument("grid range must be a whole number of steps");
  if (size() < 3) throw std::invalid_argument("grid needs at least 3 points");
}

TailGrid TailGrid::from_arrays(const GridSpec& grid, std::vector<double> values, std::vector<double> complement) {
  grid.validate();
  if (values.size() != grid.size() || complement.size() != grid.size())
    throw std::invalid_argument("grid function has " + std::to_string(values.size()) + " values, grid has " +
                                std::to_string(grid.size()) + " points");
  TailGrid f;
  f.grid_ = grid;
  f.values_ = std::move(values);
  f.complement_ = std::move(complement);
  f.validate();
  return f;
}

TailGrid TailGrid::from_values(const GridSpec& grid, std::vector<double> values) {
  std::vector<double> complement(values.size());
  std::transform(values.begin(), values.end(), complement.begin(), [](double v) { return 1.0 - v; });
  return from_arrays(grid, std::move(values), std::move(complement));
}

TailGrid TailGrid::from_function(const GridSpec& grid, const std::function<double(double)>& tail,
                                 const std::function<double(double)>& complement) {
  grid.validate();
  std::vector<double> v(grid.size()), c(grid.size());
  for (std::size_t m = 0; m < v.size(); ++m) {
    v[m] = tail(grid.x(m));
    c[m] = complement(grid.x(m));
  }
  return from_arrays(grid, std::move(v), std::move(c));
}

double TailGrid::at(double x) const { return interpolate(values_, grid_, x); }
double TailGrid::complement_at(double x) const { return interpolate(complement_, grid_, x); }

bool TailGrid::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return v == 0.0; });
}

bool TailGrid::is_one() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return v == 1.0; });
}

void TailGrid::validate() const {
  for (std::size_t m = 0; m < values_.size(); ++m) {
    const double v = values_[m], c = complement_[m];
    if (!(v >= 0.0 && v <= 1.0) || !(c >= 0.0 && c <= 1.0))
      throw std::domain_error("tail function leaves [0,1] at x = " + std::to_string(grid_.x(m)));
    if (m > 0 && v > values_[m - 1])
      throw std::domain_error("tail function increases at x = " + std::to_string(grid_.x(m)));
  }
  if (is_zero() || is_one()) return;
  if (values_.front() < 1.0 - kMassTolerance || values_.back() > kMassTolerance)
    throw std::domain_error("tail function carries mass outside the grid (F(lo) = " +
                            std::to_string(values_.front()) + ", F(hi) = " + std::to_string(values_.back()) + ")");
}

TailGrid logistic(const GridSpec& grid, double shift_by) {
  return TailGrid::from_function(
      grid, [=](double x) { return 1.0 / (1.0 + std::exp(x - shift_by)); },
      [=](double x) { return 1.0 / (1.0 + std::exp(shift_by - x)); });
}

TailGrid unit_step(const GridSpec& grid, double at) {
  grid.validate();
  const double cut = at - 1e-9 * grid.step;
  std::vector<double> v(grid.size());
  for (std::size_t m = 0; m < v.size(); ++m) v[m] = grid.x(m) < cut ? 1.0 : 0.0;
  return TailGrid::from_values(grid, std::move(v));
}

TailGrid shift(const TailGrid& f, double t) {
  const auto& g = f.grid();
  std::vector<double> v(f.size()), c(f.size());
  const double cells = std::round(t / g.step);
  if (std::abs(t / g.step - cells) < 1e-9) {
    // Whole number of cells: move samples without interpolation.
    const auto last = static_cast<std::ptrdiff_t>(f.size()) - 1;
    const auto offset = static_cast<std::ptrdiff_t>(cells);
    for (std::ptrdiff_t m = 0; m <= last; ++m) {
      const auto src = static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(m - offset, 0, last));
      v[m] = f.value(src);
      c[m] = f.complement(src);
    }
    return TailGrid::from_arrays(g, std::move(v), std::move(c));
  }
  for (std::size_t m = 0; m < v.size(); ++m) {
    v[m] = f.at(g.x(m) - t);
    c[m] = f.complement_at(g.x(m) - t);
  }
  return TailGrid::from_arrays(g, std::move(v), std::move(c));
}

TailGrid apply_T(const TailGrid& f) {
  const auto& g = f.grid();
  const std::size_t n = f.size();
  // T0 = 1 and T1 = 0 (the integral diverges).
  if (f.is_zero()) return TailGrid::from_values(g, std::vector<double>(n, 1.0));
  if (f.is_one()) return TailGrid::from_values(g, std::vector<double>(n, 0.0));

  const auto v = f.values();
  double tail = v[n - 1];
  if (v[n - 1] > 0.0 && v[n - 2] > v[n - 1]) {
    const double rate = std::log(v[n - 2] / v[n - 1]) / g.step;
    if (std::isfinite(rate) && rate > 0.0) tail = v[n - 1] / rate;
  }

  // right[j] = integral of F over [x_j, inf). Composite Simpson from the
  // right edge; when x_j is an odd number of cells from hi the first three
  // cells use the 3/8 rule (a lone last cell uses the trapezoid). All weights
  // are positive, so the integral is monotone in F.
  const double h = g.step;
  std::vector<double> right(n);
  right[n - 1] = tail;
  right[n - 2] = tail + 0.5 * h * (v[n - 2] + v[n - 1]);
  for (std::size_t j = n - 2; j-- > 0;) {
    if ((n - 1 - j) % 2 == 0)
      right[j] = right[j + 2] + h / 3.0 * (v[j] + 4.0 * v[j + 1] + v[j + 2]);
    else
      right[j] = right[j + 3] + 3.0 * h / 8.0 * (v[j] + 3.0 * v[j + 1] + 3.0 * v[j + 2] + v[j + 3]);
  }

  std::vector<double> out(n), comp(n);
  for (std::size_t m = 0; m < n; ++m) {
    const double integral = right[n - 1 - m];  // -x_m = x_{n-1-m}
    out[m] = std::exp(-integral);
    comp[m] = -std::expm1(-integral);
  }
  for (std::size_t m = 1; m < n; ++m) out[m] = std::min(out[m], out[m - 1]);
  return TailGrid::from_arrays(g, std::move(out), std::move(comp));
}

TailGrid iterate(const TailGrid& f, std::size_t k) {
  TailGrid cur = f;
  for (std::size_t s = 0; s < k; ++s) cur = apply_T(cur);
  return cur;
}

double sup_distance(const TailGrid& a, const TailGrid& b) {
  if (a.size() != b.size()) throw std::invalid_argument("grids differ in size");
  double d = 0.0;
  for (std::size_t m = 0; m < a.size(); ++m) d = std::max(d, std::abs(a.value(m) - b.value(m)));
  return d;
}

HatCurve hat_transform(const TailGrid& f, const Window& window) {
  const auto [first, last] = window_range(f.grid(), window);
  HatCurve h;
  h.x.reserve(last - first + 1);
  h.hat.reserve(last - first + 1);
  for (std::size_t m = first; m <= last; ++m) {
    const double v = f.value(m), c = f.complement(m);
    if (!(v > 0.0) || !(c > 0.0))
      throw std::domain_error("hat transform undefined at x = " + std::to_string(f.grid().x(m)) +
                              " (F saturates); narrow the window");
    h.x.push_back(f.grid().x(m));
    h.hat.push_back(f.grid().x(m) + std::log(v) - std::log(c));
  }
  return h;
}

Amplitude amplitude(const TailGrid& f, const Window& window) {
  const auto h = hat_transform(f, window);
  const auto [lo, hi] = std::minmax_element(h.hat.begin(), h.hat.end());
  return {*lo, *hi};
}

GammaEstimate estimate_gamma(const TailGrid& f, std::size_t double_steps, const Window& window) {
  const auto a = amplitude(iterate(f, 2 * double_steps), window);
  return {0.5 * (a.inf + a.sup), 2 * double_steps, 0.5 * a.width()};
}

std::vector<double> hat_derivative(const TailGrid& tk, const TailGrid& tk_minus_1) {
  const std::size_t n = tk.size();
  std::vector<double> d(n, kNaN);
  for (std::size_t m = 0; m < n; ++m) {
    const std::size_t mirror = n - 1 - m;
    const double den = tk.complement(m);
    if (!(den > 0.0) || !(tk.value(m) > 0.0)) continue;
    // 1 - T^kF(x) - T^{k-1}F(-x), arranged to subtract the two small terms.
    const double num = tk.value(m) < 0.5 ? tk_minus_1.complement(mirror) - tk.value(m)
                                         : tk.complement(m) - tk_minus_1.value(mirror);
    d[m] = num / den;
  }
  return d;
}

DerivativeDeviation derivative_identity_check(const TailGrid& f, std::size_t k, const Window& window) {
  if (k < 2) throw std::invalid_argument("derivative identity needs k >= 2");
  const TailGrid prev = iterate(f, k - 1);
  const TailGrid cur = apply_T(prev);
  const auto& g = f.grid();
  const std::size_t n = f.size();
  auto [first, last] = window_range(g, window);
  first = std::max<std::size_t>(first, 1);
  last = std::min(last, n - 2);

  const auto hat_prime = hat_derivative(cur, prev);
  auto hat_at = [&](std::size_t m) { return g.x(m) + std::log(cur.value(m)) - std::log(cur.complement(m)); };

  DerivativeDeviation dev;
  for (std::size_t m = first; m <= last; ++m) {
    const double fd = (cur.value(m + 1) - cur.value(m - 1)) / (2.0 * g.step);
    const double closed = -cur.value(m) * prev.value(n - 1 - m);
    dev.tail = std::max(dev.tail, std::abs(fd - closed));

    const double hat_fd = (hat_at(m + 1) - hat_at(m - 1)) / (2.0 * g.step);
    dev.hat = std::max(dev.hat, std::abs(hat_fd - hat_prime[m]));
  }
  return dev;
}

std::vector<double> hat_derivative_tail_mass(const TailGrid& f, std::span<const double> cutoffs, std::size_t k_min,
                                             std::size_t k_max) {
  if (k_min < 1 || k_max < k_min) throw std::invalid_argument("need 1 <= k_min <= k_max");
  std::vector<double> worst(cutoffs.size(), 0.0);
  const auto& g = f.grid();
  TailGrid prev = iterate(f, k_min - 1);
  for (std::size_t k = k_min; k <= k_max; ++k) {
    TailGrid cur = apply_T(prev);
    const auto d = hat_derivative(cur, prev);
    for (std::size_t c = 0; c < cutoffs.size(); ++c) {
      double mass = 0.0;
      for (std::size_t m = 0; m < d.size(); ++m)
        if (std::abs(g.x(m)) > cutoffs[c] && std::isfinite(d[m])) mass += std::abs(d[m]) * g.step;
      worst[c] = std::max(worst[c], mass);
    }
    prev = std::move(cur);
  }
  return worst;
}

void write_tail_grid(const TailGrid& f, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out.precision(17);
  out << "x,F\n";
  for (std::size_t m = 0; m < f.size(); ++m) out << f.grid().x(m) << ',' << f.value(m) << '\n';
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace bpassign
