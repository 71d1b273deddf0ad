#include "cylinder/random.hpp"

#include <vector>

namespace cylinder {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Integer random_bits(std::mt19937_64& rng, unsigned bits) {
  const unsigned words = (bits + 63) / 64;
  std::vector<std::uint64_t> buf(words);
  for (auto& w : buf) w = rng();
  if (bits % 64 != 0) buf.back() &= (std::uint64_t{1} << (bits % 64)) - 1;
  Integer v;
  mpz_import(v.get_mpz_t(), words, -1, sizeof(std::uint64_t), 0, 0, buf.data());
  return v;
}

Rational random_dyadic(std::mt19937_64& rng, unsigned bits) { return {random_bits(rng, bits), pow2(bits)}; }

}  // namespace cylinder
