#pragma once

#include "cylinder/exact.hpp"

namespace cylinder {

// Rigorous rational enclosures of a few transcendental quantities.

RationalInterval pi_enclosure();

// sqrt of a non-negative interval; each endpoint is rounded outward to 2^-bits.
RationalInterval sqrt_enclosure(const RationalInterval& x, unsigned bits = 96);

// exp(-t) for t >= 0, via a truncated Taylor series of exp(t) with a remainder bound.
RationalInterval exp_neg_enclosure(const Rational& t, unsigned terms = 40);

}  // namespace cylinder
