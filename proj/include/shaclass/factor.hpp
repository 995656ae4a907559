#pragma once

#include "shaclass/arith.hpp"

#include <vector>

namespace shaclass {

struct PrimePower {
    Integer prime;
    int exponent = 0;
};

/// Trial division below this bound precedes Pollard rho.
inline constexpr unsigned long kTrialDivisionBound = 1'000'000;

/// Factorization of |n| into ascending prime powers (n != 0).
///
/// Trial division up to kTrialDivisionBound, then Brent's variant of Pollard
/// rho with a Baillie-PSW primality check. A composite cofactor above 2^128,
/// or one that rho cannot split within its iteration budget, raises
/// FactorizationTooHard.
std::vector<PrimePower> factor(const Integer& n);

/// Ascending distinct prime divisors of |n|.
std::vector<Integer> prime_divisors(const Integer& n);

}  // namespace shaclass
