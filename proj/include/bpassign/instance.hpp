#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace bpassign {

class SeededStream;

enum class WeightKind { Uniform01, Exponential };

/// Law of the i.i.d. edge weights. Only laws that are continuous with a
/// positive density at 0 and an exponentially light tail are admissible.
/// Other laws can be added by supplying their density at zero and tail
/// rate; nothing else in the library depends on the kind.
struct WeightDistribution {
  WeightKind kind = WeightKind::Uniform01;
  double rate = 1.0;       // Exponential only
  double tail_rate = 1.0;  // metadata; never used numerically

  static WeightDistribution uniform01();
  static WeightDistribution exponential(double rate = 1.0);

  /// H'(0+).
  double density_at_zero() const;
  double sample(SeededStream& stream) const;
  std::string name() const;
  /// Parses "uniform" | "uniform01" | "exponential" | "exp".
  static WeightDistribution parse(const std::string& kind, double rate = 1.0);

  friend bool operator==(const WeightDistribution&, const WeightDistribution&) = default;
};

/// Dense n x n nonnegative costs, row-major.
class CostMatrix {
 public:
  CostMatrix() = default;

  /// Validates size and finiteness/nonnegativity of every entry.
  static CostMatrix from_entries(std::size_t n, std::vector<double> entries,
                                 WeightDistribution dist = {}, std::uint64_t seed = 0,
                                 bool rescaled = false);
  static CostMatrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t n() const { return n_; }
  double operator()(std::size_t row, std::size_t col) const { return entries_[row * n_ + col]; }
  std::span<const double> row(std::size_t i) const { return {entries_.data() + i * n_, n_}; }
  std::span<const double> entries() const { return entries_; }

  const WeightDistribution& distribution() const { return dist_; }
  std::uint64_t seed() const { return seed_; }
  bool rescaled() const { return rescaled_; }

  /// Copy with every entry multiplied by factor > 0; metadata is kept.
  CostMatrix scaled(double factor) const;
  bool entries_distinct() const;

  friend bool operator==(const CostMatrix&, const CostMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> entries_;
  WeightDistribution dist_;
  std::uint64_t seed_ = 0;
  bool rescaled_ = false;
};

/// n x n i.i.d. draws from `dist`, filled row by row from a SeededStream.
/// If two entries collide the whole matrix is redrawn with seed + 1, and the
/// returned matrix records the seed that was actually used.
CostMatrix generate(std::size_t n, const WeightDistribution& dist, std::uint64_t seed);

/// Multiplies every entry by n * H'(0+). Throws if `m` is already rescaled.
CostMatrix rescale(const CostMatrix& m, const WeightDistribution& dist);

// CSV of n rows x n columns plus a JSON sidecar {n, kind, rate, seed, rescaled}.
void write_matrix(const CostMatrix& m, const std::filesystem::path& csv_path);
CostMatrix read_matrix(const std::filesystem::path& csv_path);
std::filesystem::path sidecar_path(const std::filesystem::path& csv_path);

}  // namespace bpassign
