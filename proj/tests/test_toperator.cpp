#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>

#include "bpassign/toperator.hpp"

using namespace bpassign;

namespace {

constexpr double kH = 0.01;
// Midpoint of the hat range of T^60 F_0 on the default grid, recorded from
// the first run. Moves by O(h) with the grid step.
constexpr double kGammaF0 = -0.596021503;

double fstar(double x) { return 1.0 / (1.0 + std::exp(x)); }
double fstar_c(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// theta_1 F* left of 0, F* right of 0: hat is 1 on x < 0 and 0 on x >= 0.
TailGrid glued(const GridSpec& g = {}) {
  return TailGrid::from_function(
      g, [](double x) { return x < 0 ? fstar(x - 1) : fstar(x); },
      [](double x) { return x < 0 ? fstar_c(x - 1) : fstar_c(x); });
}

TailGrid gaussian_tail(const GridSpec& g = {}) {
  return TailGrid::from_function(
      g, [](double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); },
      [](double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); });
}

TailGrid uniform_tail(double a, double b, const GridSpec& g = {}) {
  return TailGrid::from_function(
      g, [=](double x) { return std::clamp((b - x) / (b - a), 0.0, 1.0); },
      [=](double x) { return std::clamp((x - a) / (b - a), 0.0, 1.0); });
}

std::vector<TailGrid> test_functions() {
  return {unit_step(), unit_step({}, 0.7), logistic({}, 1.3), glued(), gaussian_tail(), uniform_tail(-1.0, 2.0)};
}

}  // namespace

TEST_CASE("grid") {
  const GridSpec g;
  CHECK(g.size() == 8001);
  CHECK(g.x(4000) == 0.0);
  CHECK_THROWS(GridSpec{-40, 30, 0.01}.validate());
  CHECK_THROWS(GridSpec{-1, 1, 0.3}.validate());
}

TEST_CASE("logistic") {
  const auto f = logistic();
  CHECK(f.at(0.0) == 0.5);
  for (std::size_t m = 0; m < f.size(); ++m) CHECK(std::abs(f.value(m) + f.value(f.size() - 1 - m) - 1.0) < 1e-14);
  CHECK_NOTHROW(f.validate());
}

TEST_CASE("validation") {
  std::vector<double> up(GridSpec{}.size(), 0.0);
  up.back() = 1.0;
  CHECK_THROWS_AS(TailGrid::from_values({}, up).validate(), std::domain_error);
  CHECK_THROWS_AS(TailGrid::from_values({}, std::vector<double>(GridSpec{}.size(), 0.5)).validate(), std::domain_error);
  CHECK_NOTHROW(TailGrid::from_values({}, std::vector<double>(GridSpec{}.size(), 0.0)).validate());
  CHECK_NOTHROW(TailGrid::from_values({}, std::vector<double>(GridSpec{}.size(), 1.0)).validate());
  for (const auto& f : test_functions()) CHECK_NOTHROW(f.validate());
}

TEST_CASE("fixed point") {
  const auto f = logistic();
  CHECK(sup_distance(apply_T(f), f) < 1e-3);
  CHECK(sup_distance(apply_T(f), f) < 1e-9);
}

TEST_CASE("degenerate inputs alternate between 0 and 1") {
  const auto zero = TailGrid::from_values({}, std::vector<double>(GridSpec{}.size(), 0.0));
  const auto one = apply_T(zero);
  CHECK(one.is_one());
  CHECK(apply_T(one).is_zero());
}

TEST_CASE("shift") {
  const auto f = logistic();
  CHECK(sup_distance(shift(f, 0.0), f) == 0.0);
  CHECK(shift(f, 2.0).at(2.0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(sup_distance(shift(f, 2.0), logistic({}, 2.0)) < 1e-12);
}

TEST_CASE("T of the unit step") {
  // T F_0(x) = exp(-max(x, 0)).
  const auto t = apply_T(unit_step());
  double err = 0.0;
  for (std::size_t m = 0; m < t.size(); ++m) {
    const double x = t.grid().x(m);
    err = std::max(err, std::abs(t.value(m) - std::exp(-std::max(x, 0.0))));
  }
  CHECK(err < 2 * kH);
}

TEST_CASE("shift anti-commutation") {
  for (const auto& f : test_functions())
    for (double t : {-5.0, -3.0, -1.0, 0.5, 1.0, 3.0, 5.0})
      CHECK(sup_distance(apply_T(shift(f, t)), shift(apply_T(f), -t)) < 1e-3);
  // Off-grid shifts need interpolation, which only commutes with T for continuous F.
  for (const auto& f : {logistic({}, 1.3), glued(), gaussian_tail(), uniform_tail(-1.0, 2.0)})
    for (double t : {-4.321, -0.37, 0.505, 2.718})
      CHECK(sup_distance(apply_T(shift(f, t)), shift(apply_T(f), -t)) < 1e-3);
  // A jump moved by a fraction of a cell becomes a ramp; the defect stays below h.
  CHECK(sup_distance(apply_T(shift(unit_step(), -0.37)), shift(apply_T(unit_step()), 0.37)) < kH);
}

TEST_CASE("anti-monotone, exactly on the grid") {
  const auto fs = test_functions();
  for (const auto& f : fs)
    for (const auto& g : fs) {
      std::vector<double> lo(f.size()), hi(f.size());
      for (std::size_t m = 0; m < f.size(); ++m) {
        lo[m] = std::min(f.value(m), g.value(m));
        hi[m] = std::max(f.value(m), g.value(m));
      }
      const auto tlo = apply_T(TailGrid::from_values({}, lo)), thi = apply_T(TailGrid::from_values({}, hi));
      for (std::size_t m = 0; m < f.size(); ++m) REQUIRE(tlo.value(m) >= thi.value(m));
    }
}

TEST_CASE("iterate") {
  const auto f = glued();
  CHECK(sup_distance(iterate(f, 0), f) == 0.0);
  CHECK(sup_distance(iterate(f, 3), apply_T(apply_T(apply_T(f)))) == 0.0);
}

TEST_CASE("hat transform") {
  const auto h0 = hat_transform(logistic());
  for (double v : h0.hat) CHECK(std::abs(v) < 1e-6);
  const auto h2 = hat_transform(shift(logistic(), 2.0));
  for (double v : h2.hat) CHECK(std::abs(v - 2.0) < 1e-3);
  const auto h4 = hat_transform(iterate(unit_step(), 4));
  for (double v : h4.hat) CHECK(std::isfinite(v));
  CHECK_THROWS_AS(hat_transform(unit_step()), std::domain_error);
}

TEST_CASE("amplitude") {
  const auto a = amplitude(logistic());
  CHECK(std::abs(a.inf) < 1e-6);
  CHECK(std::abs(a.sup) < 1e-6);

  const auto g = amplitude(glued());
  CHECK(g.inf == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(g.sup == doctest::Approx(1.0).epsilon(1e-9));
  const auto t2 = amplitude(iterate(glued(), 2));
  MESSAGE("amplitude of T^2 glued: [" << t2.inf << ", " << t2.sup << "]");
  CHECK(t2.inf > 1e-3);
  CHECK(t2.sup < 1.0 - 1e-3);
}

TEST_CASE("one step maps the hat range to a reflected sub-range") {
  for (const auto& f : test_functions()) {
    // Start where hat is defined on the window.
    auto cur = iterate(f, 2);
    for (int k = 0; k < 6; ++k) {
      const auto next = apply_T(cur);
      const auto a = amplitude(cur), b = amplitude(next);
      CHECK(b.sup <= -a.inf + 2 * kH);
      CHECK(b.inf >= -a.sup - 2 * kH);
      cur = next;
    }
  }
}

TEST_CASE("even-step amplitudes are monotone") {
  for (const auto& f : test_functions()) {
    Amplitude prev = amplitude(iterate(f, 2));
    auto cur = iterate(f, 2);
    for (int k = 2; k <= 30; ++k) {
      cur = apply_T(apply_T(cur));
      const auto a = amplitude(cur);
      CHECK(a.inf >= prev.inf - 2 * kH);
      CHECK(a.sup <= prev.sup + 2 * kH);
      prev = a;
    }
  }
}

TEST_CASE("gamma estimates") {
  const auto g0 = estimate_gamma(logistic());
  CHECK(std::abs(g0.gamma) < 1e-6);
  CHECK(g0.residual < 1e-6);
  CHECK(g0.k_used == 60);
  for (double t : {-2.0, 0.5, 1.5}) CHECK(std::abs(estimate_gamma(logistic({}, t)).gamma - t) < 1e-3);

  const auto gf0 = estimate_gamma(unit_step());
  CHECK(gf0.residual < 1e-3);
  CHECK(gf0.gamma == doctest::Approx(kGammaF0).epsilon(1e-8));
}

TEST_CASE("gamma of the unit step converges at first order in h") {
  double g[3];
  int i = 0;
  for (double h : {0.02, 0.01, 0.005}) g[i++] = estimate_gamma(unit_step(GridSpec{-40, 40, h})).gamma;
  const double ratio = (g[0] - g[1]) / (g[1] - g[2]);
  MESSAGE("gamma(h): " << g[0] << " " << g[1] << " " << g[2] << " ratio " << ratio);
  CHECK(ratio > 1.6);
  CHECK(ratio < 2.4);
}

TEST_CASE("alternating convergence to shifted logistics") {
  for (const auto& f : test_functions()) {
    const double gamma = estimate_gamma(f).gamma;
    const auto even = iterate(f, 60), odd = apply_T(even);
    CHECK(sup_distance(even, logistic({}, gamma)) < 1e-2);
    CHECK(sup_distance(odd, logistic({}, -gamma)) < 1e-2);
  }
}

TEST_CASE("distance of even iterates to the limit decreases") {
  const auto limit = logistic({}, kGammaF0);
  auto cur = iterate(unit_step(), 2);
  double prev = sup_distance(cur, limit);
  for (int k = 2; k <= 30; ++k) {
    cur = apply_T(apply_T(cur));
    const double d = sup_distance(cur, limit);
    CHECK(d <= prev + 1e-12);
    prev = d;
  }
}

TEST_CASE("derivative identities") {
  for (std::size_t k : {2, 3, 5}) {
    CHECK(derivative_identity_check(logistic(), k).max() < 5 * kH);
    CHECK(derivative_identity_check(unit_step(), k).max() < 5 * kH);
  }
  CHECK_THROWS(derivative_identity_check(logistic(), 1));
}

TEST_CASE("derivative deviation shrinks linearly with h") {
  const double coarse = derivative_identity_check(unit_step(GridSpec{-40, 40, 0.02}), 3).max();
  const double fine = derivative_identity_check(unit_step(GridSpec{-40, 40, 0.01}), 3).max();
  MESSAGE("deviation " << coarse << " -> " << fine);
  // At least first order; the Simpson quadrature and centred differences give about 4.
  CHECK(coarse / fine > 1.8);
}

TEST_CASE("tail mass of the hat derivative") {
  const std::vector<double> cutoffs{5, 10, 15, 20};
  for (const auto& f : {unit_step(), glued()}) {
    const auto mass = hat_derivative_tail_mass(f, cutoffs);
    for (std::size_t i = 1; i < mass.size(); ++i) CHECK(mass[i] <= mass[i - 1]);
    CHECK(mass.back() < 1e-3);
  }
}

TEST_CASE("csv dump") {
  const auto path = std::filesystem::temp_directory_path() / "bpassign_tail.csv";
  write_tail_grid(logistic(GridSpec{-20, 20, 0.5}), path);
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  CHECK(line == "x,F");
  std::size_t rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 81);
  std::filesystem::remove(path);
}
