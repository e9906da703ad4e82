#include "bpassign/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <thread>

#include "bpassign/bp.hpp"
#include "bpassign/exact.hpp"
#include "bpassign/pwit.hpp"
#include "bpassign/rng.hpp"

namespace bpassign {
namespace {

using nlohmann::json;

constexpr std::uint64_t kPwitStream = 0x50574954;  // "PWIT"
constexpr std::uint64_t kRootStream = 0x524F4F54;  // "ROOT"

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::size_t worker_count(const ExperimentConfig& c) {
  if (c.threads != 0) return c.threads;
  return std::max(1u, std::thread::hardware_concurrency());
}

std::ofstream open_csv(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::size_t pwit_depth_for(const ExperimentConfig& c, std::size_t k) {
  if (c.pwit_depth == 0) return k + 1;
  if (c.pwit_depth < k + 1)
    throw ConfigError("pwit depth " + std::to_string(c.pwit_depth) + " is too shallow for step " + std::to_string(k));
  return c.pwit_depth;
}

template <class T>
std::vector<T> sorted_unique(std::vector<T> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

// ---- config ------------------------------------------------------------------

void ExperimentConfig::validate() const {
  if (n_values.empty() || k_values.empty() || seeds.empty())
    throw ConfigError("n, k and seed lists must be non-empty");
  for (auto n : n_values)
    if (n == 0) throw ConfigError("instance sizes must be positive");
  if (pwit_width < 2) throw ConfigError("pwit width must be at least 2");
  if (max_rank < 1) throw ConfigError("max_rank must be at least 1");
  if (initial != "step" && initial != "logistic") throw ConfigError("initial must be 'step' or 'logistic'");
  if (!std::isfinite(init)) throw ConfigError("init must be finite");
  try {
    grid.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (!(window.lo < window.hi)) throw ConfigError("window needs lo < hi");
}

json ExperimentConfig::to_json() const {
  return {{"schema_version", kConfigSchemaVersion},
          {"experiment", experiment},
          {"n", n_values},
          {"k", k_values},
          {"distribution", {{"kind", distribution.name()}, {"rate", distribution.rate}}},
          {"seeds", seeds},
          {"pwit", {{"width", pwit_width}, {"depth", pwit_depth}}},
          {"grid", {{"lo", grid.lo}, {"hi", grid.hi}, {"step", grid.step}}},
          {"window", {{"lo", window.lo}, {"hi", window.hi}}},
          {"gamma_double_steps", gamma_double_steps},
          {"initial", initial},
          {"init", init},
          {"max_rank", max_rank},
          {"threads", threads},
          {"out", out_dir.string()}};
}

ExperimentConfig ExperimentConfig::from_json(const json& j) {
  ExperimentConfig c;
  try {
    const int version = j.value("schema_version", kConfigSchemaVersion);
    if (version != kConfigSchemaVersion)
      throw ConfigError("unsupported config schema_version " + std::to_string(version));
    c.experiment = j.value("experiment", c.experiment);
    if (j.contains("n")) c.n_values = j.at("n").get<std::vector<std::size_t>>();
    if (j.contains("k")) c.k_values = j.at("k").get<std::vector<std::size_t>>();
    if (j.contains("distribution")) {
      const auto& d = j.at("distribution");
      c.distribution = WeightDistribution::parse(d.value("kind", std::string("uniform01")), d.value("rate", 1.0));
    }
    if (j.contains("seeds")) {
      const auto& s = j.at("seeds");
      if (s.is_array())
        c.seeds = s.get<std::vector<std::uint64_t>>();
      else
        c.seeds = seed_range(s.value("first", std::uint64_t{1}), s.at("count").get<std::size_t>());
    }
    if (j.contains("pwit")) {
      c.pwit_width = j.at("pwit").value("width", c.pwit_width);
      c.pwit_depth = j.at("pwit").value("depth", c.pwit_depth);
    }
    if (j.contains("grid")) {
      const auto& g = j.at("grid");
      c.grid = {g.value("lo", c.grid.lo), g.value("hi", c.grid.hi), g.value("step", c.grid.step)};
    }
    if (j.contains("window")) c.window = {j.at("window").value("lo", c.window.lo), j.at("window").value("hi", c.window.hi)};
    c.gamma_double_steps = j.value("gamma_double_steps", c.gamma_double_steps);
    c.initial = j.value("initial", c.initial);
    c.init = j.value("init", c.init);
    c.max_rank = j.value("max_rank", c.max_rank);
    c.threads = j.value("threads", c.threads);
    if (j.contains("out")) c.out_dir = j.at("out").get<std::string>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  c.validate();
  return c;
}

ExperimentConfig ExperimentConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return from_json(j);
}

std::string ExperimentConfig::hash() const {
  auto j = to_json();
  j.erase("out");
  j.erase("threads");
  const std::string text = j.dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::vector<std::uint64_t> seed_range(std::uint64_t first, std::size_t count) {
  std::vector<std::uint64_t> s(count);
  for (std::size_t i = 0; i < count; ++i) s[i] = first + i;
  return s;
}

void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& body) {
  threads = std::min(std::max<std::size_t>(threads, 1), count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          next = count;
        }
      }
    });
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

std::uint64_t instance_seed(std::uint64_t seed, std::size_t n) { return derive_seed(seed, n); }

// ---- error curve -------------------------------------------------------------

ErrorCurveResult run_error_curve(const ExperimentConfig& config) {
  config.validate();
  const auto ns = sorted_unique(config.n_values);
  const auto ks = sorted_unique(config.k_values);
  const auto seeds = config.seeds;
  const std::size_t cells = ns.size() * seeds.size();

  std::vector<std::vector<ErrorCurveRow>> per_cell(cells);
  parallel_for(cells, worker_count(config), [&](std::size_t cell) {
    const std::size_t n = ns[cell / seeds.size()];
    const std::uint64_t seed = seeds[cell % seeds.size()];
    const auto cost = generate(n, config.distribution, instance_seed(seed, n));
    const auto exact = solve_exact(cost);
    const auto bp = run(cost, ks.back(), true);
    for (auto k : ks) per_cell[cell].push_back({seed, n, k, evaluate(bp.trace[k], cost, exact)});
  });

  ErrorCurveResult r;
  for (auto& rows : per_cell) r.rows.insert(r.rows.end(), rows.begin(), rows.end());
  std::sort(r.rows.begin(), r.rows.end(), [](const auto& a, const auto& b) {
    return std::tie(a.seed, a.n, a.k) < std::tie(b.seed, b.n, b.k);
  });
  for (auto n : ns)
    for (auto k : ks) {
      std::vector<double> h, rep, ex;
      for (const auto& row : r.rows)
        if (row.n == n && row.k == k) {
          h.push_back(row.report.hamming);
          rep.push_back(row.report.bp_cost_of_repair);
          ex.push_back(row.report.exact_cost);
        }
      r.summary.push_back({n, k, mean_stderr(h), mean_stderr(rep), mean_stderr(ex)});
    }
  return r;
}

// ---- zeta(2) -------------------------------------------------------------

double finite_n_assignment_expectation(std::size_t n) {
  double s = 0.0;
  for (std::size_t i = n; i >= 1; --i) s += 1.0 / (static_cast<double>(i) * static_cast<double>(i));
  return s;
}

Zeta2Result run_zeta2(const ExperimentConfig& config) {
  config.validate();
  if (config.distribution.kind != WeightKind::Exponential || config.distribution.rate != 1.0)
    throw ConfigError("zeta2 requires Exponential(1) weights");
  const auto ns = sorted_unique(config.n_values);
  const auto& seeds = config.seeds;
  Zeta2Result r;
  r.rows.resize(ns.size() * seeds.size());
  parallel_for(r.rows.size(), worker_count(config), [&](std::size_t cell) {
    const std::size_t n = ns[cell / seeds.size()];
    const std::uint64_t seed = seeds[cell % seeds.size()];
    const auto cost = generate(n, config.distribution, instance_seed(seed, n));
    const double value = n <= 3 ? solve_bruteforce(cost).value : solve_exact(cost).value;
    r.rows[cell] = {seed, n, value};
  });
  std::sort(r.rows.begin(), r.rows.end(),
            [](const auto& a, const auto& b) { return std::tie(a.seed, a.n) < std::tie(b.seed, b.n); });
  for (auto n : ns) {
    std::vector<double> v;
    for (const auto& row : r.rows)
      if (row.n == n) v.push_back(row.value);
    r.summary.push_back({n, mean_stderr(v), finite_n_assignment_expectation(n)});
  }
  return r;
}

// ---- KS continuity ---------------------------------------------------------

std::vector<double> pwit_root_sample(const ExperimentConfig& config, std::size_t k) {
  const std::size_t depth = pwit_depth_for(config, k);
  std::vector<double> sample(config.seeds.size());
  parallel_for(sample.size(), worker_count(config), [&](std::size_t i) {
    const PwitTree tree(depth, config.pwit_width, derive_seed(config.seeds[i], kPwitStream));
    sample[i] = node_message(tree, 1, k, config.init);
  });
  return sample;
}

KsResult run_ks_continuity(const ExperimentConfig& config) {
  config.validate();
  const auto ns = sorted_unique(config.n_values);
  const auto ks = sorted_unique(config.k_values);
  const auto& seeds = config.seeds;

  KsResult r;
  r.knn_samples.assign(ns.size() * ks.size(), std::vector<double>(seeds.size()));
  for (std::size_t ni = 0; ni < ns.size(); ++ni) {
    const std::size_t n = ns[ni];
    parallel_for(seeds.size(), worker_count(config), [&](std::size_t si) {
      const auto cost = rescale(generate(n, config.distribution, instance_seed(seeds[si], n)), config.distribution);
      SeededStream pick(derive_seed(cost.seed(), kRootStream));
      const std::size_t root = pick.below(2 * n);
      const std::size_t nbr = pick.below(n);
      auto state = init_messages(n, config.init);
      MessageState spare;
      std::size_t ki = 0;
      for (std::size_t step = 0; ki < ks.size(); ++step) {
        if (step == ks[ki]) {
          r.knn_samples[ni * ks.size() + ki][si] = root < n ? state.c2r(nbr, root) : state.r2c(nbr, root - n);
          ++ki;
          if (ki == ks.size()) break;
        }
        bp_step(state, cost, spare);
        std::swap(state, spare);
      }
    });
  }

  const TailGrid start = unit_step(config.grid, config.init);
  for (auto k : ks) r.pwit_samples.push_back(pwit_root_sample(config, k));
  for (std::size_t ni = 0; ni < ns.size(); ++ni)
    for (std::size_t ki = 0; ki < ks.size(); ++ki) {
      const auto& sample = r.knn_samples[ni * ks.size() + ki];
      r.rows.push_back({ns[ni], ks[ki], sample.size(), ks_distance(sample, iterate(start, ks[ki])),
                        ks_two_sample(sample, r.pwit_samples[ki])});
    }
  return r;
}

// ---- argmin diagnostic -------------------------------------------------------

ArgminResult run_argmin_diagnostic(const ExperimentConfig& config) {
  config.validate();
  const auto ns = sorted_unique(config.n_values);
  const auto ks = sorted_unique(config.k_values);
  const auto& seeds = config.seeds;
  const std::size_t cells = ns.size() * seeds.size();

  std::vector<std::vector<RankHistogram>> hist(cells);
  parallel_for(cells, worker_count(config), [&](std::size_t cell) {
    const std::size_t n = ns[cell / seeds.size()];
    const auto cost = generate(n, config.distribution, instance_seed(seeds[cell % seeds.size()], n));
    auto state = init_messages(n, config.init);
    MessageState spare;
    std::size_t ki = 0;
    for (std::size_t step = 0; ki < ks.size(); ++step) {
      if (step == ks[ki]) {
        hist[cell].push_back(argmin_index_histogram(state, cost));
        if (++ki == ks.size()) break;
      }
      bp_step(state, cost, spare);
      std::swap(state, spare);
    }
  });

  ArgminResult r;
  for (std::size_t ni = 0; ni < ns.size(); ++ni)
    for (std::size_t ki = 0; ki < ks.size(); ++ki) {
      RankHistogram pooled;
      for (std::size_t si = 0; si < seeds.size(); ++si) {
        const auto& h = hist[ni * seeds.size() + si][ki];
        pooled += h;
        for (std::size_t rank = 1; rank <= config.max_rank; ++rank)
          r.rows.push_back({seeds[si], ns[ni], ks[ki], rank, h.tail_mass(rank)});
      }
      for (std::size_t rank = 1; rank <= config.max_rank; ++rank)
        r.pooled.push_back({0, ns[ni], ks[ki], rank, pooled.tail_mass(rank)});
    }
  std::sort(r.rows.begin(), r.rows.end(), [](const auto& a, const auto& b) {
    return std::tie(a.seed, a.n, a.k, a.rank) < std::tie(b.seed, b.n, b.k, b.rank);
  });
  return r;
}

// ---- PWIT ------------------------------------------------------------------

std::vector<PwitRow> run_pwit(const ExperimentConfig& config) {
  config.validate();
  const auto ks = sorted_unique(config.k_values);
  const auto& seeds = config.seeds;
  std::vector<PwitRow> rows(seeds.size() * ks.size());
  parallel_for(rows.size(), worker_count(config), [&](std::size_t cell) {
    const std::uint64_t seed = seeds[cell / ks.size()];
    const std::size_t k = ks[cell % ks.size()];
    const std::size_t depth = pwit_depth_for(config, k);
    const PwitTree tree(depth, config.pwit_width, derive_seed(seed, kPwitStream));
    const auto msgs = tree_bp(tree, k, config.init);
    rows[cell] = {seed, depth, config.pwit_width, k, msgs.root_message(), root_decision(tree, msgs),
                  msgs.exceedance_rate()};
  });
  return rows;
}

// ---- operator T ------------------------------------------------------------

TailGrid initial_tail(const ExperimentConfig& config) {
  return config.initial == "logistic" ? logistic(config.grid, config.init) : unit_step(config.grid, config.init);
}

TOperatorResult run_toperator(const ExperimentConfig& config) {
  config.validate();
  TOperatorResult r;
  const std::size_t last = 2 * config.gamma_double_steps + 1;
  r.iterates.push_back(initial_tail(config));
  for (std::size_t k = 1; k <= last; ++k) r.iterates.push_back(apply_T(r.iterates.back()));

  const auto even = amplitude(r.iterates[last - 1], config.window);
  r.gamma = {0.5 * (even.inf + even.sup), last - 1, 0.5 * even.width()};
  const TailGrid plus = logistic(config.grid, r.gamma.gamma), minus = logistic(config.grid, -r.gamma.gamma);
  for (std::size_t k = 0; k <= last; ++k) {
    Amplitude a{std::nan(""), std::nan("")};
    try {
      a = amplitude(r.iterates[k], config.window);
    } catch (const std::domain_error&) {
      // hat is undefined while the iterate is still a step function
    }
    r.steps.push_back({k, a, sup_distance(r.iterates[k], k % 2 == 0 ? plus : minus)});
  }
  return r;
}

// ---- output ----------------------------------------------------------------

std::vector<std::filesystem::path> write_csv(const ErrorCurveResult& r, const ExperimentConfig& c) {
  std::filesystem::create_directories(c.out_dir);
  const auto rows_path = c.out_dir / "error_curve.csv", summary_path = c.out_dir / "error_curve_summary.csv";
  const auto h = c.hash();
  auto out = open_csv(rows_path);
  out << "seed,n,k,hamming,collision_count,repaired_cost,exact_cost,config_hash\n";
  for (const auto& row : r.rows)
    out << row.seed << ',' << row.n << ',' << row.k << ',' << num(row.report.hamming) << ','
        << row.report.collision_count << ',' << num(row.report.bp_cost_of_repair) << ','
        << num(row.report.exact_cost) << ',' << h << '\n';
  finish(out, rows_path);
  auto sum = open_csv(summary_path);
  sum << "n,k,seeds,hamming_mean,hamming_stderr,repaired_cost_mean,exact_cost_mean,config_hash\n";
  for (const auto& s : r.summary)
    sum << s.n << ',' << s.k << ',' << s.hamming.count << ',' << num(s.hamming.mean) << ','
        << num(s.hamming.std_error) << ',' << num(s.repaired_cost.mean) << ',' << num(s.exact_cost.mean) << ','
        << h << '\n';
  finish(sum, summary_path);
  return {rows_path, summary_path};
}

std::vector<std::filesystem::path> write_csv(const Zeta2Result& r, const ExperimentConfig& c) {
  std::filesystem::create_directories(c.out_dir);
  const auto rows_path = c.out_dir / "zeta2.csv", summary_path = c.out_dir / "zeta2_summary.csv";
  const auto h = c.hash();
  auto out = open_csv(rows_path);
  out << "seed,n,optimal_cost,config_hash\n";
  for (const auto& row : r.rows) out << row.seed << ',' << row.n << ',' << num(row.value) << ',' << h << '\n';
  finish(out, rows_path);
  auto sum = open_csv(summary_path);
  sum << "n,seeds,mean,stderr,finite_n_expectation,zeta2,config_hash\n";
  for (const auto& s : r.summary)
    sum << s.n << ',' << s.value.count << ',' << num(s.value.mean) << ',' << num(s.value.std_error) << ','
        << num(s.finite_n_expectation) << ',' << num(kZeta2) << ',' << h << '\n';
  finish(sum, summary_path);
  return {rows_path, summary_path};
}

std::vector<std::filesystem::path> write_csv(const KsResult& r, const ExperimentConfig& c) {
  std::filesystem::create_directories(c.out_dir);
  const auto rows_path = c.out_dir / "ks_continuity.csv", samples_path = c.out_dir / "ks_samples.csv";
  const auto h = c.hash();
  const auto ns = sorted_unique(c.n_values);
  const auto ks = sorted_unique(c.k_values);
  auto out = open_csv(rows_path);
  out << "n,k,seeds,ks_operator,ks_pwit,config_hash\n";
  for (const auto& row : r.rows)
    out << row.n << ',' << row.k << ',' << row.samples << ',' << num(row.ks_operator) << ',' << num(row.ks_pwit)
        << ',' << h << '\n';
  finish(out, rows_path);
  auto smp = open_csv(samples_path);
  smp << "seed,source,n,k,message,config_hash\n";
  for (std::size_t si = 0; si < c.seeds.size(); ++si) {
    for (std::size_t ni = 0; ni < ns.size(); ++ni)
      for (std::size_t ki = 0; ki < ks.size(); ++ki)
        smp << c.seeds[si] << ",knn," << ns[ni] << ',' << ks[ki] << ','
            << num(r.knn_samples[ni * ks.size() + ki][si]) << ',' << h << '\n';
    for (std::size_t ki = 0; ki < ks.size(); ++ki)
      smp << c.seeds[si] << ",pwit,," << ks[ki] << ',' << num(r.pwit_samples[ki][si]) << ',' << h << '\n';
  }
  finish(smp, samples_path);
  return {rows_path, samples_path};
}

std::vector<std::filesystem::path> write_csv(const ArgminResult& r, const ExperimentConfig& c) {
  std::filesystem::create_directories(c.out_dir);
  const auto rows_path = c.out_dir / "argmin_diag.csv", pooled_path = c.out_dir / "argmin_diag_pooled.csv";
  const auto h = c.hash();
  auto out = open_csv(rows_path);
  out << "seed,n,k,rank,tail_mass,config_hash\n";
  for (const auto& row : r.rows)
    out << row.seed << ',' << row.n << ',' << row.k << ',' << row.rank << ',' << num(row.tail_mass) << ',' << h
        << '\n';
  finish(out, rows_path);
  auto pooled = open_csv(pooled_path);
  pooled << "n,k,seeds,rank,tail_mass,config_hash\n";
  for (const auto& row : r.pooled)
    pooled << row.n << ',' << row.k << ',' << c.seeds.size() << ',' << row.rank << ',' << num(row.tail_mass) << ','
           << h << '\n';
  finish(pooled, pooled_path);
  return {rows_path, pooled_path};
}

std::vector<std::filesystem::path> write_csv(const std::vector<PwitRow>& rows, const ExperimentConfig& c) {
  std::filesystem::create_directories(c.out_dir);
  const auto path = c.out_dir / "pwit.csv";
  const auto h = c.hash();
  auto out = open_csv(path);
  out << "seed,D,B,k,root_message,decision_rank,exceedance_rate,config_hash\n";
  for (const auto& r : rows)
    out << r.seed << ',' << r.depth << ',' << r.width << ',' << r.k << ',' << num(r.root_message) << ','
        << r.decision_rank << ',' << num(r.exceedance_rate) << ',' << h << '\n';
  finish(out, path);
  return {path};
}

std::vector<std::filesystem::path> write_csv(const TOperatorResult& r, const ExperimentConfig& c) {
  const auto trace_dir = c.out_dir / "toperator_trace";
  std::filesystem::create_directories(trace_dir);
  std::vector<std::filesystem::path> paths;
  const auto summary_path = c.out_dir / "toperator_summary.csv";
  const auto h = c.hash();
  auto out = open_csv(summary_path);
  out << "k,hat_inf,hat_sup,distance_to_limit,gamma,gamma_residual,config_hash\n";
  for (const auto& s : r.steps)
    out << s.k << ',' << num(s.hat.inf) << ',' << num(s.hat.sup) << ',' << num(s.distance_to_limit) << ','
        << num(r.gamma.gamma) << ',' << num(r.gamma.residual) << ',' << h << '\n';
  finish(out, summary_path);
  paths.push_back(summary_path);
  for (std::size_t k = 0; k < r.iterates.size(); ++k) {
    char name[32];
    std::snprintf(name, sizeof name, "step_%03zu.csv", k);
    write_tail_grid(r.iterates[k], trace_dir / name);
    paths.push_back(trace_dir / name);
  }
  return paths;
}

// ---- checks ------------------------------------------------------------------

std::vector<std::string> check(const ErrorCurveResult& r) {
  std::vector<std::string> failures;
  if (r.summary.empty()) return {"no results"};
  std::size_t k_max = 0;
  for (const auto& s : r.summary) k_max = std::max(k_max, s.k);
  const ErrorCurveSummary* prev = nullptr;
  for (const auto& s : r.summary) {
    if (s.k != k_max) continue;
    if (s.hamming.mean > 0.05)
      failures.push_back("n=" + std::to_string(s.n) + " k=" + std::to_string(s.k) + ": mean hamming " +
                         num(s.hamming.mean) + " > 0.05");
    if (prev) {
      const double slack = 2.0 * std::hypot(prev->hamming.std_error, s.hamming.std_error);
      if (s.hamming.mean > prev->hamming.mean + slack)
        failures.push_back("mean hamming increases from n=" + std::to_string(prev->n) + " to n=" +
                           std::to_string(s.n) + " by more than 2 stderr");
    }
    prev = &s;
  }
  return failures;
}

std::vector<std::string> check(const Zeta2Result& r) {
  if (r.summary.empty()) return {"no results"};
  for (std::size_t i = 1; i < r.summary.size(); ++i) {
    const auto &a = r.summary[i - 1], &b = r.summary[i];
    if (b.value.mean + 2.0 * std::hypot(a.value.std_error, b.value.std_error) < a.value.mean)
      return {"mean optimal cost decreases from n=" + std::to_string(a.n) + " to n=" + std::to_string(b.n)};
  }
  const auto& s = r.summary.back();
  if (s.n >= 100) {
    if (std::abs(s.value.mean - kZeta2) > 0.03 * kZeta2)
      return {"n=" + std::to_string(s.n) + ": mean optimal cost " + num(s.value.mean) + " not within 3% of zeta(2)"};
  } else if (std::abs(s.value.mean - s.finite_n_expectation) > 4.0 * s.value.std_error) {
    return {"n=" + std::to_string(s.n) + ": mean optimal cost " + num(s.value.mean) +
            " more than 4 stderr from the exact expectation " + num(s.finite_n_expectation)};
  }
  return {};
}

std::vector<std::string> check(const KsResult& r) {
  std::vector<std::string> failures;
  for (const auto& row : r.rows) {
    const std::string cell = "n=" + std::to_string(row.n) + " k=" + std::to_string(row.k);
    if (row.ks_operator > 0.05) failures.push_back(cell + ": KS vs T^k F " + num(row.ks_operator) + " > 0.05");
    if (row.ks_pwit > 0.07) failures.push_back(cell + ": KS vs PWIT " + num(row.ks_pwit) + " > 0.07");
  }
  return failures;
}

std::vector<std::string> check(const ArgminResult& r) {
  std::vector<std::string> failures;
  for (const auto& row : r.pooled)
    if (row.rank == 10 && row.tail_mass >= 0.05)
      failures.push_back("n=" + std::to_string(row.n) + " k=" + std::to_string(row.k) + ": P(rank >= 10) = " +
                         num(row.tail_mass));
  return failures;
}

std::vector<std::string> check(const std::vector<PwitRow>& rows) {
  if (rows.empty()) return {"no results"};
  double exceed = 0.0;
  for (const auto& r : rows) exceed += r.exceedance_rate;
  exceed /= static_cast<double>(rows.size());
  if (exceed > 0.01) return {"mean truncation exceedance rate " + num(exceed) + " > 0.01"};
  return {};
}

std::vector<std::string> check(const TOperatorResult& r) {
  std::vector<std::string> failures;
  if (r.gamma.residual >= 1e-3) failures.push_back("gamma residual " + num(r.gamma.residual) + " >= 1e-3");
  const std::size_t n = r.steps.size();
  for (std::size_t i = n >= 2 ? n - 2 : 0; i < n; ++i)
    if (r.steps[i].distance_to_limit >= 1e-2)
      failures.push_back("step " + std::to_string(r.steps[i].k) + ": distance to shifted logistic " +
                         num(r.steps[i].distance_to_limit) + " >= 1e-2");
  return failures;
}

}  // namespace bpassign
