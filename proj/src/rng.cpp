#include "bpassign/rng.hpp"

#include <cmath>

namespace bpassign {

double exponential_from_bits(std::uint64_t bits, double rate) {
  return -std::log1p(-unit_from_bits(bits)) / rate;
}

std::uint64_t SeededStream::below(std::uint64_t bound) {
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t x = engine_();
  while (x >= limit) x = engine_();
  return x % bound;
}

}  // namespace bpassign
