#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "bpassign/instance.hpp"
#include "bpassign/metrics.hpp"
#include "bpassign/stats.hpp"
#include "bpassign/toperator.hpp"

namespace bpassign {

inline constexpr int kConfigSchemaVersion = 1;
inline constexpr double kZeta2 = 1.6449340668482264;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  std::string experiment = "error-curve";
  std::vector<std::size_t> n_values{100};
  std::vector<std::size_t> k_values{30};
  WeightDistribution distribution = WeightDistribution::uniform01();
  std::vector<std::uint64_t> seeds{1};
  std::size_t pwit_width = 30;
  std::size_t pwit_depth = 0;  // 0: step + 1
  GridSpec grid;
  Window window;
  std::size_t gamma_double_steps = 30;
  std::string initial = "step";  // toperator start: "step" | "logistic"
  double init = 0.0;             // initial message value (location of the step)
  std::size_t max_rank = 20;
  std::size_t threads = 0;  // 0: hardware concurrency
  std::filesystem::path out_dir = ".";

  /// Throws ConfigError.
  void validate() const;
  nlohmann::json to_json() const;
  /// Accepts "seeds" as a list or as {"first": s, "count": c}. Throws ConfigError.
  static ExperimentConfig from_json(const nlohmann::json& j);
  static ExperimentConfig load(const std::filesystem::path& path);
  /// FNV-1a of the canonical JSON without output location or thread count.
  std::string hash() const;
};

std::vector<std::uint64_t> seed_range(std::uint64_t first, std::size_t count);

/// Runs body(i) for i in [0, count) on up to `threads` workers. Results must
/// be written to per-index slots so that output does not depend on the
/// schedule. The first exception thrown by any body is rethrown.
void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& body);

/// Seed of the instance for (seed, n); distinct sizes draw independent matrices.
std::uint64_t instance_seed(std::uint64_t seed, std::size_t n);

// ---- error curve -----------------------------------------------------------

struct ErrorCurveRow {
  std::uint64_t seed;
  std::size_t n;
  std::size_t k;
  ErrorReport report;
};
struct ErrorCurveSummary {
  std::size_t n;
  std::size_t k;
  MeanStderr hamming;
  MeanStderr repaired_cost;
  MeanStderr exact_cost;
};
struct ErrorCurveResult {
  std::vector<ErrorCurveRow> rows;
  std::vector<ErrorCurveSummary> summary;
};
ErrorCurveResult run_error_curve(const ExperimentConfig& config);

// ---- zeta(2) -------------------------------------------------------------

struct Zeta2Row {
  std::uint64_t seed;
  std::size_t n;
  double value;
};
struct Zeta2Summary {
  std::size_t n;
  MeanStderr value;
  double finite_n_expectation;  // sum_{i<=n} 1/i^2 for Exp(1) weights
};
struct Zeta2Result {
  std::vector<Zeta2Row> rows;
  std::vector<Zeta2Summary> summary;
};
/// Requires Exponential(1) weights. Uses the brute-force solver for n <= 3
/// and the shortest-augmenting-path solver otherwise.
Zeta2Result run_zeta2(const ExperimentConfig& config);
double finite_n_assignment_expectation(std::size_t n);

// ---- KS continuity -----------------------------------------------------------

struct KsRow {
  std::size_t n;
  std::size_t k;
  std::size_t samples;
  double ks_operator;  // vs T^k F_init on the grid
  double ks_pwit;      // vs the PWIT root-message sample
};
struct KsResult {
  std::vector<KsRow> rows;
  // knn_samples[(n index) * |k| + (k index)][seed index]
  std::vector<std::vector<double>> knn_samples;
  // pwit_samples[k index][seed index]
  std::vector<std::vector<double>> pwit_samples;
};
/// Message received by a uniformly chosen vertex of the rescaled K_nn from a
/// uniformly chosen neighbour, one per seed.
KsResult run_ks_continuity(const ExperimentConfig& config);
/// Up-message from the root's first child at step k, one per seed.
std::vector<double> pwit_root_sample(const ExperimentConfig& config, std::size_t k);

// ---- argmin diagnostic -------------------------------------------------------

struct ArgminRow {
  std::uint64_t seed;
  std::size_t n;
  std::size_t k;
  std::size_t rank;
  double tail_mass;  // fraction of vertices with chosen rank >= rank
};
struct ArgminResult {
  std::vector<ArgminRow> rows;
  std::vector<ArgminRow> pooled;  // seed field unused
};
ArgminResult run_argmin_diagnostic(const ExperimentConfig& config);

// ---- PWIT ------------------------------------------------------------------

struct PwitRow {
  std::uint64_t seed;
  std::size_t depth;
  std::size_t width;
  std::size_t k;
  double root_message;
  std::size_t decision_rank;
  double exceedance_rate;
};
std::vector<PwitRow> run_pwit(const ExperimentConfig& config);

// ---- operator T ------------------------------------------------------------

struct TOperatorStep {
  std::size_t k;
  Amplitude hat;
  double distance_to_limit;  // sup |T^k F - theta_{+-gamma} F*|
};
struct TOperatorResult {
  GammaEstimate gamma;
  std::vector<TailGrid> iterates;  // T^0 F .. T^{2K+1} F
  std::vector<TOperatorStep> steps;
};
TailGrid initial_tail(const ExperimentConfig& config);
TOperatorResult run_toperator(const ExperimentConfig& config);

// ---- output ----------------------------------------------------------------

/// Writes the CSV files of an experiment under config.out_dir and returns
/// their paths.
std::vector<std::filesystem::path> write_csv(const ErrorCurveResult& r, const ExperimentConfig& config);
std::vector<std::filesystem::path> write_csv(const Zeta2Result& r, const ExperimentConfig& config);
std::vector<std::filesystem::path> write_csv(const KsResult& r, const ExperimentConfig& config);
std::vector<std::filesystem::path> write_csv(const ArgminResult& r, const ExperimentConfig& config);
std::vector<std::filesystem::path> write_csv(const std::vector<PwitRow>& rows, const ExperimentConfig& config);
std::vector<std::filesystem::path> write_csv(const TOperatorResult& r, const ExperimentConfig& config);

// ---- acceptance checks (--check) ------------------------------------------------
// Each returns one message per violated threshold; empty means pass.

std::vector<std::string> check(const ErrorCurveResult& r);
std::vector<std::string> check(const Zeta2Result& r);
std::vector<std::string> check(const KsResult& r);
std::vector<std::string> check(const ArgminResult& r);
std::vector<std::string> check(const std::vector<PwitRow>& rows);
std::vector<std::string> check(const TOperatorResult& r);

}  // namespace bpassign
