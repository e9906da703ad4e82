#include "bpassign/instance.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "bpassign/rng.hpp"

namespace bpassign {

WeightDistribution WeightDistribution::uniform01() { return {WeightKind::Uniform01, 1.0, 1.0}; }

WeightDistribution WeightDistribution::exponential(double rate) {
  if (!(rate > 0.0) || !std::isfinite(rate))
    throw std::invalid_argument("exponential rate must be positive and finite");
  return {WeightKind::Exponential, rate, rate};
}

double WeightDistribution::density_at_zero() const {
  return kind == WeightKind::Uniform01 ? 1.0 : rate;
}

double WeightDistribution::sample(SeededStream& stream) const {
  return kind == WeightKind::Uniform01 ? stream.uniform() : stream.exponential(rate);
}

std::string WeightDistribution::name() const {
  return kind == WeightKind::Uniform01 ? "uniform01" : "exponential";
}

WeightDistribution WeightDistribution::parse(const std::string& kind, double rate) {
  if (kind == "uniform" || kind == "uniform01") return uniform01();
  if (kind == "exponential" || kind == "exp") return exponential(rate);
  throw std::invalid_argument("unknown weight distribution '" + kind + "'");
}

CostMatrix CostMatrix::from_entries(std::size_t n, std::vector<double> entries,
                                    WeightDistribution dist, std::uint64_t seed, bool rescaled) {
  if (n == 0) throw std::invalid_argument("cost matrix size must be positive");
  if (entries.size() != n * n)
    throw std::invalid_argument("cost matrix needs n*n = " + std::to_string(n * n) + " entries, got " +
                                std::to_string(entries.size()));
  for (double x : entries)
    if (!std::isfinite(x) || x < 0.0)
      throw std::invalid_argument("cost entries must be finite and nonnegative");
  CostMatrix m;
  m.n_ = n;
  m.entries_ = std::move(entries);
  m.dist_ = dist;
  m.seed_ = seed;
  m.rescaled_ = rescaled;
  return m;
}

CostMatrix CostMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  std::vector<double> flat;
  flat.reserve(rows.size() * rows.size());
  for (const auto& r : rows) {
    if (r.size() != rows.size()) throw std::invalid_argument("cost matrix must be square");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return from_entries(rows.size(), std::move(flat));
}

CostMatrix CostMatrix::scaled(double factor) const {
  if (!(factor > 0.0) || !std::isfinite(factor))
    throw std::invalid_argument("scale factor must be positive and finite");
  CostMatrix out = *this;
  for (double& x : out.entries_) x *= factor;
  return out;
}

bool CostMatrix::entries_distinct() const {
  std::vector<double> sorted = entries_;
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
}

CostMatrix generate(std::size_t n, const WeightDistribution& dist, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("instance size n must be at least 1");
  for (std::uint64_t s = seed;; ++s) {
    SeededStream stream(s);
    std::vector<double> entries(n * n);
    for (double& x : entries) x = dist.sample(stream);
    auto m = CostMatrix::from_entries(n, std::move(entries), dist, s, false);
    if (m.entries_distinct()) return m;
  }
}

CostMatrix rescale(const CostMatrix& m, const WeightDistribution& dist) {
  if (m.rescaled()) throw std::logic_error("cost matrix is already rescaled");
  const double factor = static_cast<double>(m.n()) * dist.density_at_zero();
  std::vector<double> entries(m.entries().begin(), m.entries().end());
  for (double& x : entries) x *= factor;
  return CostMatrix::from_entries(m.n(), std::move(entries), dist, m.seed(), true);
}

std::filesystem::path sidecar_path(const std::filesystem::path& csv_path) {
  auto p = csv_path;
  p.replace_extension(".json");
  return p;
}

void write_matrix(const CostMatrix& m, const std::filesystem::path& csv_path) {
  std::ofstream csv(csv_path);
  if (!csv) throw std::runtime_error("cannot open " + csv_path.string() + " for writing");
  csv.precision(17);
  for (std::size_t i = 0; i < m.n(); ++i) {
    for (std::size_t j = 0; j < m.n(); ++j) csv << (j ? "," : "") << m(i, j);
    csv << '\n';
  }
  nlohmann::json header = {{"n", m.n()},
                           {"kind", m.distribution().name()},
                           {"rate", m.distribution().rate},
                           {"seed", m.seed()},
                           {"rescaled", m.rescaled()}};
  std::ofstream side(sidecar_path(csv_path));
  if (!side) throw std::runtime_error("cannot open " + sidecar_path(csv_path).string() + " for writing");
  side << header.dump(2) << '\n';
  if (!csv || !side) throw std::runtime_error("write failed for " + csv_path.string());
}

CostMatrix read_matrix(const std::filesystem::path& csv_path) {
  std::ifstream csv(csv_path);
  if (!csv) throw std::runtime_error("cannot open " + csv_path.string());
  std::vector<double> entries;
  std::size_t rows = 0;
  std::string line;
  while (std::getline(csv, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) entries.push_back(std::stod(cell));
    ++rows;
  }
  WeightDistribution dist;
  std::uint64_t seed = 0;
  bool rescaled = false;
  std::size_t n = rows;
  if (std::ifstream side(sidecar_path(csv_path)); side) {
    auto header = nlohmann::json::parse(side);
    n = header.at("n").get<std::size_t>();
    dist = WeightDistribution::parse(header.at("kind").get<std::string>(), header.value("rate", 1.0));
    seed = header.value("seed", std::uint64_t{0});
    rescaled = header.value("rescaled", false);
    if (n != rows)
      throw std::runtime_error(csv_path.string() + ": header says n=" + std::to_string(n) + " but file has " +
                               std::to_string(rows) + " rows");
  }
  return CostMatrix::from_entries(n, std::move(entries), dist, seed, rescaled);
}

}  // namespace bpassign
