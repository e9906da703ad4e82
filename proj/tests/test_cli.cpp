#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

namespace {

const std::filesystem::path kDir = std::filesystem::temp_directory_path() / "bpassign_cli";

int run_cli(const std::string& args) {
  const std::string cmd = std::string(BP_ASSIGN_EXE) + " " + args + " > " + (kDir / "log.txt").string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string write_config(const std::string& name, const std::string& body) {
  std::filesystem::create_directories(kDir);
  const auto path = kDir / name;
  std::ofstream(path) << body;
  return path.string();
}

}  // namespace

TEST_CASE("generate, bp and exact write their outputs") {
  std::filesystem::remove_all(kDir);
  std::filesystem::create_directories(kDir);
  const auto out = (kDir / "inst").string();
  CHECK(run_cli("generate --n 6 --seed 4 --out " + out) == 0);
  const auto matrix = kDir / "inst" / "matrix_n6_seed4.csv";
  CHECK(std::filesystem::exists(matrix));
  CHECK(std::filesystem::exists(kDir / "inst" / "matrix_n6_seed4.json"));
  CHECK(run_cli("bp --matrix " + matrix.string() + " --k 50 --out " + out) == 0);
  CHECK(run_cli("exact --matrix " + matrix.string() + " --out " + out) == 0);

  using nlohmann::json;
  const auto decision = json::parse(std::ifstream(kDir / "inst" / "decision_k50.json"));
  const auto exact = json::parse(std::ifstream(kDir / "inst" / "assignment.json"));
  CHECK(decision.at("row_choice") == exact.at("permutation"));
}

TEST_CASE("config errors exit with 2") {
  CHECK(run_cli("zeta2 --config " + write_config("bad.json", R"({"n": [0]})")) == 2);
  CHECK(run_cli("zeta2 --config " + write_config("broken.json", "{ not json")) == 2);
  CHECK(run_cli("zeta2 --n 3") == 2);  // default distribution is Uniform(0,1)
  CHECK(run_cli("error-curve --bogus-flag") == 2);
  CHECK(run_cli("") == 2);
}

TEST_CASE("--check exits with 3 on a violated threshold") {
  const auto narrow = write_config("narrow.json", R"({"k": [3], "seeds": {"first": 1, "count": 20},
                                                      "pwit": {"width": 2}, "out": ")" + (kDir / "pw").string() + "\"}");
  CHECK(run_cli("pwit --config " + narrow) == 0);
  CHECK(run_cli("pwit --config " + narrow + " --check") == 3);
  const auto wide = write_config("wide.json", R"({"k": [3], "seeds": {"first": 1, "count": 20},
                                                  "out": ")" + (kDir / "pw").string() + "\"}");
  CHECK(run_cli("pwit --config " + wide + " --check") == 0);
  CHECK(std::filesystem::exists(kDir / "pw" / "pwit.csv"));
  std::filesystem::remove_all(kDir);
}
