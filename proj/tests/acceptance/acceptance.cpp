// Acceptance suite: one PASS/FAIL line per criterion; exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "bpassign/bp.hpp"
#include "bpassign/exact.hpp"
#include "bpassign/experiment.hpp"
#include "bpassign/metrics.hpp"
#include "bpassign/rng.hpp"
#include "bpassign/toperator.hpp"

using namespace bpassign;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* name, double time_limit, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o{false, ""};
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs > time_limit) {
    o.pass = false;
    o.detail += "; over the time limit";
  }
  if (!o.pass) ++failures;
  std::printf("%s %2d %s: %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str(), secs);
  std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

MessageState naive_step(const MessageState& s, const CostMatrix& x) {
  const std::size_t n = s.n;
  MessageState out = s;
  out.step = s.step + 1;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double r = std::numeric_limits<double>::infinity(), c = r;
      for (std::size_t t = 0; t < n; ++t) {
        if (t != j) r = std::min(r, x(i, t) - s.c2r(t, i));
        if (t != i) c = std::min(c, x(t, j) - s.r2c(t, j));
      }
      out.row_to_col[i * n + j] = r;
      out.col_to_row[i * n + j] = c;
    }
  return out;
}

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

double f_star(double x) { return 1.0 / (1.0 + std::exp(x)); }
double f_star_c(double x) { return 1.0 / (1.0 + std::exp(-x)); }

constexpr double kGammaF0 = -0.596021503;

}  // namespace

int main() {
  const auto exp1 = WeightDistribution::exponential(1.0);

  criterion(1, "zeta(2) limit at n=300", 120, [&] {
    ExperimentConfig c;
    c.distribution = exp1;
    c.n_values = {300};
    c.seeds = seed_range(1, 50);
    const auto s = run_zeta2(c).summary.at(0);
    const double rel = std::abs(s.value.mean - kZeta2) / kZeta2;
    return Outcome{rel <= 0.03, fmt("mean %.5f, relative error %.4f (limit 0.03)", s.value.mean, rel)};
  });

  criterion(2, "n=2 exact expectation by brute force", 60, [&] {
    ExperimentConfig c;
    c.distribution = exp1;
    c.n_values = {2};
    c.seeds = seed_range(1, 1000000);
    const auto s = run_zeta2(c).summary.at(0);
    return Outcome{s.value.mean >= 1.247 && s.value.mean <= 1.253,
                   fmt("mean %.5f over 1e6 solves (target [1.247, 1.253])", s.value.mean)};
  });

  criterion(3, "error curve at k=30", 300, [&] {
    ExperimentConfig c;
    c.n_values = {100, 200, 400};
    c.k_values = {30};
    c.seeds = seed_range(1, 30);
    const auto r = run_error_curve(c);
    std::string detail;
    for (const auto& s : r.summary) detail += fmt("n=%.0f: %.4f +- %.4f; ", s.n, s.hamming.mean, s.hamming.std_error);
    const auto violations = check(r);
    for (const auto& v : violations) detail += "[" + v + "] ";
    return Outcome{violations.empty(), detail};
  });

  criterion(4, "exact solver matches brute force on 7x7", 30, [&] {
    std::size_t mismatches = 0;
    for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
      const auto m = generate(7, WeightDistribution::uniform01(), derive_seed(seed, 7));
      const auto a = solve_exact(m), b = solve_bruteforce(m);
      if (a.row_to_col != b.row_to_col || std::abs(a.value - b.value) > 1e-9) ++mismatches;
    }
    return Outcome{mismatches == 0, fmt("%.0f mismatches in 1000 instances", static_cast<double>(mismatches))};
  });

  criterion(5, "two-minima update bit-identical to naive scan", 120, [&] {
    std::size_t instances = 0, bad = 0;
    for (std::size_t n : {2, 3, 17, 64})
      for (std::uint64_t seed = 0; seed < 25; ++seed, ++instances) {
        const auto m = generate(n, seed % 2 ? exp1 : WeightDistribution::uniform01(), derive_seed(seed, n));
        auto fast = init_messages(n), slow = fast;
        for (int k = 1; k <= 10; ++k) {
          fast = bp_step(fast, m);
          slow = naive_step(slow, m);
          if (!same_bits(fast.row_to_col, slow.row_to_col) || !same_bits(fast.col_to_row, slow.col_to_row)) {
            ++bad;
            break;
          }
        }
      }
    return Outcome{bad == 0, fmt("%.0f of %.0f instances differ", static_cast<double>(bad), static_cast<double>(instances))};
  });

  criterion(6, "operator fixed point", 1, [&] {
    const auto f = logistic();
    const double d = sup_distance(apply_T(f), f);
    return Outcome{d < 1e-3, fmt("sup |T F* - F*| = %.3g", d)};
  });

  criterion(7, "shift anti-commutation", 10, [&] {
    const auto f0 = unit_step();
    double worst = 0.0;
    for (double t : {-3.0, -1.0, 1.0, 3.0}) worst = std::max(worst, sup_distance(apply_T(shift(f0, t)), shift(apply_T(f0), -t)));
    return Outcome{worst < 1e-3, fmt("max sup distance %.3g", worst)};
  });

  criterion(8, "strict contraction of the hat range", 10, [&] {
    const auto glued = TailGrid::from_function(
        {}, [](double x) { return x < 0 ? f_star(x - 1) : f_star(x); },
        [](double x) { return x < 0 ? f_star_c(x - 1) : f_star_c(x); });
    const auto before = amplitude(glued), after = amplitude(iterate(glued, 2));
    const bool ok = std::abs(before.inf) < 1e-9 && std::abs(before.sup - 1.0) < 1e-9 && after.inf > 1e-3 &&
                    after.sup < 1.0 - 1e-3;
    return Outcome{ok, fmt("hat range [%.4f, %.4f] -> [%.4f, ", before.inf, before.sup, after.inf) +
                           fmt("%.4f]", after.sup)};
  });

  criterion(9, "alternating convergence to shifted logistics", 30, [&] {
    const auto f0 = unit_step();
    const auto g = estimate_gamma(f0, 30);
    const auto even = iterate(f0, 60), odd = apply_T(even);
    const double de = sup_distance(even, logistic({}, g.gamma)), dodd = sup_distance(odd, logistic({}, -g.gamma));
    const bool regression = std::abs(g.gamma - kGammaF0) < 1e-8;
    return Outcome{de < 1e-2 && dodd < 1e-2 && regression,
                   fmt("gamma %.9f, even %.3g, odd %.3g", g.gamma, de, dodd) +
                       (regression ? "" : " (gamma moved from the recorded value)")};
  });

  criterion(10, "derivative identities", 30, [&] {
    const double h = GridSpec{}.step;
    double worst = 0.0;
    for (const auto& f : {logistic(), unit_step()})
      for (std::size_t k : {2, 3, 5}) worst = std::max(worst, derivative_identity_check(f, k).max());
    return Outcome{worst < 5 * h, fmt("max deviation %.3g (limit %.3g)", worst, 5 * h)};
  });

  criterion(11, "continuity: K_nn messages vs operator and PWIT", 600, [&] {
    ExperimentConfig c;
    c.distribution = exp1;
    c.n_values = {500};
    c.k_values = {4};
    c.seeds = seed_range(1, 2000);
    c.pwit_width = 30;
    c.pwit_depth = 5;
    const auto row = run_ks_continuity(c).rows.at(0);
    return Outcome{row.ks_operator <= 0.05 && row.ks_pwit <= 0.07,
                   fmt("KS vs T^4 F0 %.4f (limit 0.05), KS vs PWIT %.4f (limit 0.07)", row.ks_operator, row.ks_pwit)};
  });

  criterion(12, "invariance suite", 120, [&] {
    std::size_t scaling_bad = 0, shift_bad = 0, repair_bad = 0, hamming_bad = 0;
    const std::size_t cases = 100;
    for (std::uint64_t seed = 0; seed < cases; ++seed) {
      const std::size_t n = 2 + seed % 11;
      SeededStream s(derive_seed(seed, 12));

      // Power-of-two factors keep every product exact.
      const auto m = generate(n, WeightDistribution::uniform01(), derive_seed(seed, 1));
      const double c = std::ldexp(1.0, static_cast<int>(s.below(9)) - 4);
      auto a = init_messages(n), b = init_messages(n);
      for (int k = 0; k <= 8; ++k) {
        for (std::size_t q = 0; q < n * n; ++q)
          if (b.row_to_col[q] != c * a.row_to_col[q] || b.col_to_row[q] != c * a.col_to_row[q]) ++scaling_bad;
        if (!(decide(a, m) == decide(b, m.scaled(c)))) ++scaling_bad;
        a = bp_step(a, m);
        b = bp_step(b, m.scaled(c));
      }

      // Dyadic costs and shifts keep every difference exact.
      std::vector<double> e(n * n);
      for (auto& v : e) v = static_cast<double>(s.below(512)) / 128.0;
      const auto dy = CostMatrix::from_entries(n, e);
      const double t = static_cast<double>(static_cast<int>(s.below(33)) - 16) / 16.0;
      auto p = init_messages(n), q = init_messages(n, t);
      for (int k = 0; k <= 8; ++k) {
        const double sign = k % 2 == 0 ? 1.0 : -1.0;
        for (std::size_t r = 0; r < n * n; ++r)
          if (q.row_to_col[r] != p.row_to_col[r] + sign * t || q.col_to_row[r] != p.col_to_row[r] + sign * t)
            ++shift_bad;
        if (!(decide(p, dy) == decide(q, dy))) ++shift_bad;
        p = bp_step(p, dy);
        q = bp_step(q, dy);
      }

      BipartiteDecision d{std::vector<std::size_t>(n), std::vector<std::size_t>(n)};
      for (auto& x : d.row_choice) x = s.below(n);
      for (auto& x : d.col_choice) x = s.below(n);
      if (!is_perfect_matching(as_decision(repair(d, m)))) ++repair_bad;
      if (!is_perfect_matching(as_decision(repair(run(m, seed % 5).decision, m)))) ++repair_bad;

      const auto pi = as_decision(solve_exact(m));
      if (hamming(pi, pi) != 0.0 || hamming(d, d) != 0.0) ++hamming_bad;
    }
    const bool ok = scaling_bad + shift_bad + repair_bad + hamming_bad == 0;
    return Outcome{ok, fmt("%.0f cases each; violations: scaling %.0f, initial shift %.0f, ", double(cases),
                           double(scaling_bad), double(shift_bad)) +
                           fmt("repair %.0f, hamming %.0f", double(repair_bad), double(hamming_bad))};
  });

  std::printf("%d of 12 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
