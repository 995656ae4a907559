#pragma once

// Exact integer helpers on top of GMP.

#include <gmpxx.h>

#include <climits>
#include <cstdint>
#include <string>
#include <vector>

namespace shaclass {

using Integer = mpz_class;
using Rational = mpq_class;

/// Sentinel valuation of zero.
inline constexpr int kInfiniteValuation = INT_MAX;

int valuation(const Integer& n, const Integer& prime);
int valuation(const Integer& n, unsigned long prime);
/// Valuation of a nonzero rational (numerator minus denominator).
int valuation(const Rational& q, const Integer& prime);

/// Least nonnegative residue.
Integer mod(const Integer& a, const Integer& m);
unsigned long mod(const Integer& a, unsigned long m);

Integer power(const Integer& base, unsigned long exponent);

/// Legendre symbol (a/p) for an odd prime p; zero when p | a.
int legendre(const Integer& a, const Integer& p);

/// True when a is a square modulo the prime p (zero counts as a square).
bool is_square_mod(const Integer& a, const Integer& p);

/// Baillie-PSW via GMP; no known counterexample.
bool is_probable_prime(const Integer& n);

/// Primes up to and including bound, by sieve.
std::vector<unsigned long> primes_up_to(unsigned long bound);

bool is_small_prime(unsigned long n);

/// Inverse of a modulo the prime p; a must be a unit.
Integer inverse_mod(const Integer& a, const Integer& p);

std::string to_string(const Integer& n);
std::string to_string(const Rational& q);

/// Parses a decimal integer with optional sign; throws InvalidInput.
Integer parse_integer(std::string_view text);

}  // namespace shaclass
