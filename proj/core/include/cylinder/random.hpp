#pragma once

#include <cstdint>
#include <random>

#include "cylinder/exact.hpp"

namespace cylinder {

// SplitMix64 finaliser; used to derive independent per-sample seeds from one user seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

// Uniform dyadic rational j / 2^bits with 0 <= j < 2^bits.
Rational random_dyadic(std::mt19937_64& rng, unsigned bits);
Integer random_bits(std::mt19937_64& rng, unsigned bits);

}  // namespace cylinder
