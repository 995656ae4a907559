#include "shaclass/factor.hpp"

#include "shaclass/error.hpp"

#include <algorithm>

namespace shaclass {
namespace {

const std::vector<unsigned long>& trial_primes() {
    static const std::vector<unsigned long> primes = primes_up_to(kTrialDivisionBound);
    return primes;
}

constexpr unsigned long kRhoIterationBudget = 1UL << 24;

// Brent's cycle detection with batched gcds; returns a nontrivial factor or 0.
Integer brent_rho(const Integer& n, unsigned long seed) {
    Integer y = seed, c = seed + 1, g = 1, r = 1, q = 1, x, ys;
    const unsigned long batch = 128;
    unsigned long spent = 0;
    auto step = [&](Integer& v) {
        v = v * v + c;
        mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
    };
    while (g == 1) {
        x = y;
        for (Integer i = 0; i < r; ++i) step(y);
        Integer k = 0;
        while (k < r && g == 1) {
            ys = y;
            for (unsigned long i = 0; i < batch && k + i < r; ++i) {
                step(y);
                q = q * abs(x - y);
                mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
            }
            mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
            k += batch;
            spent += batch;
            if (spent > kRhoIterationBudget) return 0;
        }
        r *= 2;
    }
    if (g == n) {
        do {
            step(ys);
            mpz_gcd(g.get_mpz_t(), Integer(abs(x - ys)).get_mpz_t(), n.get_mpz_t());
        } while (g == 1);
    }
    return g == n ? Integer(0) : g;
}

void split_large(const Integer& n, std::vector<Integer>& out) {
    if (n == 1) return;
    if (is_probable_prime(n)) {
        out.push_back(n);
        return;
    }
    if (mpz_sizeinbase(n.get_mpz_t(), 2) > 128)
        throw Error(ErrorKind::FactorizationTooHard,
                    "composite cofactor of " + std::to_string(mpz_sizeinbase(n.get_mpz_t(), 10)) +
                        " digits exceeds 2^128");
    Integer root;
    if (mpz_perfect_power_p(n.get_mpz_t())) {
        for (unsigned long e = 2; e < 128; ++e) {
            if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), e) != 0) {
                std::vector<Integer> parts;
                split_large(root, parts);
                for (unsigned long i = 0; i < e; ++i) out.insert(out.end(), parts.begin(), parts.end());
                return;
            }
        }
    }
    for (unsigned long seed = 2; seed < 10; ++seed) {
        Integer d = brent_rho(n, seed);
        if (d != 0) {
            split_large(d, out);
            split_large(Integer(n / d), out);
            return;
        }
    }
    throw Error(ErrorKind::FactorizationTooHard, "Pollard rho budget exhausted on " + to_string(n));
}

}  // namespace

std::vector<PrimePower> factor(const Integer& n) {
    if (n == 0) throw Error(ErrorKind::InvalidInput, "cannot factor zero");
    Integer rest = abs(n);
    std::vector<PrimePower> result;
    for (unsigned long p : trial_primes()) {
        if (rest == 1) break;
        if (Integer(p) * p > rest) break;
        if (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
            int e = 0;
            while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
                mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
                ++e;
            }
            result.push_back({Integer(p), e});
        }
    }
    if (rest > 1) {
        std::vector<Integer> primes;
        split_large(rest, primes);
        std::sort(primes.begin(), primes.end());
        for (const Integer& q : primes) {
            if (!result.empty() && result.back().prime == q)
                ++result.back().exponent;
            else
                result.push_back({q, 1});
        }
    }
    return result;
}

std::vector<Integer> prime_divisors(const Integer& n) {
    std::vector<Integer> out;
    for (const PrimePower& pp : factor(n)) out.push_back(pp.prime);
    return out;
}

}  // namespace shaclass
