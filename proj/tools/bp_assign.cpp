// bp-assign: command-line driver for the min-sum BP assignment experiments.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "bpassign/bp.hpp"
#include "bpassign/exact.hpp"
#include "bpassign/experiment.hpp"
#include "bpassign/instance.hpp"

namespace {

using namespace bpassign;

constexpr int kExitConfig = 2;
constexpr int kExitCheck = 3;

struct Options {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> seeds;
  std::optional<std::size_t> n;
  std::optional<std::size_t> k;
  std::optional<std::size_t> threads;
  std::string out;
  std::string matrix;
  bool rescaled = false;
  bool check = false;
};

ExperimentConfig resolve(const Options& o, const std::string& experiment) {
  ExperimentConfig c;
  if (!o.config_path.empty()) c = ExperimentConfig::load(o.config_path);
  c.experiment = experiment;
  if (o.seed) c.seeds = seed_range(*o.seed, o.seeds.value_or(1));
  else if (o.seeds) c.seeds = seed_range(c.seeds.empty() ? 1 : c.seeds.front(), *o.seeds);
  if (o.n) c.n_values = {*o.n};
  if (o.k) c.k_values = {*o.k};
  if (o.threads) c.threads = *o.threads;
  if (!o.out.empty()) c.out_dir = o.out;
  c.validate();
  return c;
}

CostMatrix load_or_generate(const Options& o, const ExperimentConfig& c) {
  if (!o.matrix.empty()) return read_matrix(o.matrix);
  const std::size_t n = c.n_values.front();
  auto m = generate(n, c.distribution, instance_seed(c.seeds.front(), n));
  return o.rescaled ? rescale(m, c.distribution) : m;
}

void report(const std::vector<std::filesystem::path>& paths) {
  for (const auto& p : paths) std::cout << p.string() << '\n';
}

int finish_check(const Options& o, const std::vector<std::string>& failures) {
  if (!o.check) return 0;
  for (const auto& f : failures) std::cerr << "check failed: " << f << '\n';
  if (!failures.empty()) return kExitCheck;
  std::cerr << "check passed\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Min-sum belief propagation for random assignment problems"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config_path, "JSON experiment config")->check(CLI::ExistingFile);
    sub->add_option("--seed", o.seed, "first seed (overrides config)");
    sub->add_option("--seeds", o.seeds, "number of consecutive seeds");
    sub->add_option("--n", o.n, "instance size (overrides config)");
    sub->add_option("--k", o.k, "BP step count (overrides config)");
    sub->add_option("--threads", o.threads, "worker threads, 0 = all cores");
    sub->add_option("--out", o.out, "output directory");
  };

  auto* gen = app.add_subcommand("generate", "draw a cost matrix and write CSV + JSON sidecar");
  common(gen);
  gen->add_flag("--rescale", o.rescaled, "multiply by n times the density at 0");

  auto* bp = app.add_subcommand("bp", "run k BP steps and write messages and decision");
  common(bp);
  bp->add_option("--matrix", o.matrix, "cost matrix CSV (otherwise generated from config)");
  bp->add_flag("--rescale", o.rescaled, "rescale the generated matrix");

  auto* exact = app.add_subcommand("exact", "solve the assignment problem exactly");
  common(exact);
  exact->add_option("--matrix", o.matrix, "cost matrix CSV (otherwise generated from config)");
  exact->add_flag("--rescale", o.rescaled, "rescale the generated matrix");

  std::vector<CLI::App*> experiments;
  for (const char* name : {"error-curve", "zeta2", "ks", "pwit", "toperator", "argmin-diag"}) {
    auto* sub = app.add_subcommand(name, std::string("run the ") + name + " experiment");
    common(sub);
    sub->add_flag("--check", o.check, "exit with status 3 if the experiment's thresholds are violated");
    experiments.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    auto* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    const auto c = resolve(o, name);

    if (name == "generate") {
      std::filesystem::create_directories(c.out_dir);
      const auto m = load_or_generate(o, c);
      char file[96];
      std::snprintf(file, sizeof file, "matrix_n%zu_seed%llu.csv", m.n(),
                    static_cast<unsigned long long>(c.seeds.front()));
      write_matrix(m, c.out_dir / file);
      report({c.out_dir / file, sidecar_path(c.out_dir / file)});
      return 0;
    }
    if (name == "bp") {
      std::filesystem::create_directories(c.out_dir);
      const auto m = load_or_generate(o, c);
      const std::size_t k = c.k_values.front();
      const auto result = run(m, k);
      const auto msg_path = c.out_dir / ("messages_k" + std::to_string(k) + ".csv");
      write_messages(result.state, msg_path);
      const auto dec_path = c.out_dir / ("decision_k" + std::to_string(k) + ".json");
      std::ofstream(dec_path) << nlohmann::json{{"k", k},
                                                {"row_choice", result.decision.row_choice},
                                                {"col_choice", result.decision.col_choice}}
                                     .dump(2)
                              << '\n';
      report({msg_path, dec_path});
      return 0;
    }
    if (name == "exact") {
      std::filesystem::create_directories(c.out_dir);
      const auto a = solve_exact(load_or_generate(o, c));
      const auto path = c.out_dir / "assignment.json";
      std::ofstream(path) << to_json(a).dump(2) << '\n';
      report({path});
      return 0;
    }
    if (name == "error-curve") {
      const auto r = run_error_curve(c);
      report(write_csv(r, c));
      return finish_check(o, check(r));
    }
    if (name == "zeta2") {
      const auto r = run_zeta2(c);
      report(write_csv(r, c));
      return finish_check(o, check(r));
    }
    if (name == "ks") {
      const auto r = run_ks_continuity(c);
      report(write_csv(r, c));
      return finish_check(o, check(r));
    }
    if (name == "pwit") {
      const auto r = run_pwit(c);
      report(write_csv(r, c));
      return finish_check(o, check(r));
    }
    if (name == "toperator") {
      const auto r = run_toperator(c);
      const auto paths = write_csv(r, c);
      report({paths.front(), c.out_dir / "toperator_trace"});
      return finish_check(o, check(r));
    }
    if (name == "argmin-diag") {
      const auto r = run_argmin_diagnostic(c);
      report(write_csv(r, c));
      return finish_check(o, check(r));
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
