#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "shaclass/arith.hpp"
#include "shaclass/error.hpp"
#include "shaclass/factor.hpp"

#include <random>

using namespace shaclass;

namespace {

bool trial_prime(unsigned long n) {
    if (n < 2) return false;
    for (unsigned long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

}  // namespace

TEST_CASE("valuations") {
    CHECK(valuation(Integer(0), 5ul) == kInfiniteValuation);
    CHECK(valuation(Integer(-1058), 2ul) == 1);
    CHECK(valuation(Integer(1058), Integer(23)) == 2);
    CHECK(valuation(Rational(50, 8), Integer(2)) == -2);
    CHECK(valuation(Rational(50, 8), Integer(5)) == 2);
}

TEST_CASE("legendre symbol agrees with Euler's criterion") {
    for (unsigned long p : primes_up_to(97)) {
        if (p == 2) continue;
        for (long a = -30; a < 30; ++a) {
            long r = ((a % long(p)) + long(p)) % long(p);
            long e = 1;
            for (unsigned long k = 0; k < (p - 1) / 2; ++k) e = e * r % long(p);
            int expected = r == 0 ? 0 : (e == 1 ? 1 : -1);
            CHECK(legendre(Integer(a), Integer(p)) == expected);
            CHECK(is_square_mod(Integer(a), Integer(p)) == (expected >= 0));
        }
    }
}

TEST_CASE("sieve matches trial division") {
    auto primes = primes_up_to(2000);
    std::size_t i = 0;
    for (unsigned long n = 0; n <= 2000; ++n) {
        bool prime = trial_prime(n);
        CHECK(is_small_prime(n) == prime);
        if (prime) {
            REQUIRE(i < primes.size());
            CHECK(primes[i++] == n);
        }
    }
    CHECK(i == primes.size());
}

TEST_CASE("factorization multiplies back and has prime factors") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        Integer n = 1;
        int parts = 1 + trial % 4;
        for (int k = 0; k < parts; ++k) n *= Integer(std::to_string(rng() % 4000000000ull + 2));
        if (trial % 2) n = -n;
        Integer product = 1;
        Integer previous = 1;
        for (const auto& pp : factor(n)) {
            CHECK(is_probable_prime(pp.prime));
            CHECK(pp.prime > previous);
            previous = pp.prime;
            product *= power(pp.prime, pp.exponent);
        }
        CHECK(product == abs(n));
    }
    auto f = factor(Integer("-27061436852750306309"));
    Integer product = 1;
    for (const auto& pp : f) product *= power(pp.prime, pp.exponent);
    CHECK(product == Integer("27061436852750306309"));
    CHECK_THROWS_AS(factor(Integer(0)), Error);
}

TEST_CASE("modular inverse and parsing") {
    for (long a = 1; a < 97; ++a) CHECK(mod(inverse_mod(Integer(a), Integer(97)) * a, Integer(97)) == 1);
    CHECK(parse_integer("-17034726259173") == Integer("-17034726259173"));
    CHECK(parse_integer("+12") == 12);
    CHECK_THROWS_AS(parse_integer(""), Error);
    CHECK_THROWS_AS(parse_integer("12a"), Error);
    CHECK_THROWS_AS(parse_integer("-"), Error);
}
