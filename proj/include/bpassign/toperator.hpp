#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <span>
#include <vector>

namespace bpassign {

/// Uniform grid lo, lo + h, ..., hi. Must be symmetric (lo = -hi) so that
/// x -> -x maps grid points onto grid points.
struct GridSpec {
  double lo = -40.0;
  double hi = 40.0;
  double step = 0.01;

  std::size_t size() const;
  double x(std::size_t m) const { return lo + static_cast<double>(m) * step; }
  void validate() const;
};

/// Closed evaluation window for hat-transform quantities.
struct Window {
  double lo = -10.0;
  double hi = 10.0;
};

/// Tail distribution function F(x) = P(X > x) sampled on a grid. The
/// complement 1 - F is stored separately so that it keeps full relative
/// precision where F is close to 1.
class TailGrid {
 public:
  static TailGrid from_values(const GridSpec& grid, std::vector<double> values);
  static TailGrid from_function(const GridSpec& grid, const std::function<double(double)>& tail,
                                const std::function<double(double)>& complement);
  static TailGrid from_arrays(const GridSpec& grid, std::vector<double> values, std::vector<double> complement);

  const GridSpec& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  std::span<const double> complement() const { return complement_; }
  double value(std::size_t m) const { return values_[m]; }
  double complement(std::size_t m) const { return complement_[m]; }

  /// Linear interpolation, constant beyond the grid ends.
  double at(double x) const;
  double complement_at(double x) const;

  bool is_zero() const;
  bool is_one() const;

  /// Throws std::domain_error unless values lie in [0,1], are non-increasing
  /// and the grid holds essentially all mass (F(lo) >= 1 - 1e-6,
  /// F(hi) <= 1e-6). The constant 0 and 1 functions are accepted.
  void validate() const;

 private:
  GridSpec grid_;
  std::vector<double> values_;
  std::vector<double> complement_;
};

inline constexpr double kMassTolerance = 1e-6;

/// F*(x - t) = 1 / (1 + e^{x - t}).
TailGrid logistic(const GridSpec& grid = {}, double shift_by = 0.0);

/// Tail of a point mass at `at`: 1 for x < at, 0 for x >= at.
TailGrid unit_step(const GridSpec& grid = {}, double at = 0.0);

/// theta_t F : x -> F(x - t). Samples move exactly when t is a whole number
/// of grid steps; otherwise F is interpolated linearly.
TailGrid shift(const TailGrid& f, double t);

/// TF(x) = exp(-integral_{-x}^{inf} F). Trapezoid rule from the right edge
/// plus an exponential tail beyond hi fitted on the last two cells.
TailGrid apply_T(const TailGrid& f);

TailGrid iterate(const TailGrid& f, std::size_t k);

double sup_distance(const TailGrid& a, const TailGrid& b);

/// hat F(x) = x + ln(F(x) / (1 - F(x))) at the grid points inside the window.
struct HatCurve {
  std::vector<double> x;
  std::vector<double> hat;
};
HatCurve hat_transform(const TailGrid& f, const Window& window = {});

struct Amplitude {
  double inf = 0.0;
  double sup = 0.0;
  double width() const { return sup - inf; }
};
Amplitude amplitude(const TailGrid& f, const Window& window = {});

struct GammaEstimate {
  double gamma = 0.0;
  std::size_t k_used = 0;
  double residual = 0.0;
};

/// Midpoint of the hat range of T^{2K} F.
GammaEstimate estimate_gamma(const TailGrid& f, std::size_t double_steps = 30, const Window& window = {});

/// Max deviation between the closed-form derivatives
///   (T^k F)'(x)   = -T^k F(x) T^{k-1} F(-x)
///   (hat T^k F)'  = (1 - T^k F(x) - T^{k-1} F(-x)) / (1 - T^k F(x))
/// and centred finite differences of the grid iterate, over the window.
struct DerivativeDeviation {
  double tail = 0.0;
  double hat = 0.0;
  double max() const { return tail > hat ? tail : hat; }
};
DerivativeDeviation derivative_identity_check(const TailGrid& f, std::size_t k, const Window& window = {});

/// Closed-form (hat T^k F)' on the grid given T^k F and T^{k-1} F; NaN where
/// T^k F is 0 or 1.
std::vector<double> hat_derivative(const TailGrid& tk, const TailGrid& tk_minus_1);

/// For each cutoff M: max over k in [k_min, k_max] of the integral of
/// |(hat T^k F)'| over {|x| > M} inside the grid.
std::vector<double> hat_derivative_tail_mass(const TailGrid& f, std::span<const double> cutoffs,
                                             std::size_t k_min = 3, std::size_t k_max = 60);

/// CSV with header "x,F".
void write_tail_grid(const TailGrid& f, const std::filesystem::path& path);

}  // namespace bpassign
