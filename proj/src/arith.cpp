#include "shaclass/arith.hpp"

#include "shaclass/error.hpp"

#include <cctype>

namespace shaclass {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidInput: return "InvalidInput";
        case ErrorKind::SingularModel: return "SingularModel";
        case ErrorKind::BadReductionAtP: return "BadReductionAtP";
        case ErrorKind::FactorizationTooHard: return "FactorizationTooHard";
        case ErrorKind::NotOrdinary: return "NotOrdinary";
        case ErrorKind::GroupTooLarge: return "GroupTooLarge";
        case ErrorKind::NotFound: return "NotFound";
        case ErrorKind::NetworkError: return "NetworkError";
        case ErrorKind::SchemaDrift: return "SchemaDrift";
        case ErrorKind::InsufficientData: return "InsufficientData";
        case ErrorKind::InconsistentInputs: return "InconsistentInputs";
        case ErrorKind::LedgerNotApplicable: return "LedgerNotApplicable";
        case ErrorKind::IoError: return "IoError";
    }
    return "Unknown";
}

int valuation(const Integer& n, const Integer& prime) {
    if (n == 0) return kInfiniteValuation;
    Integer rest = abs(n);
    int v = 0;
    while (mpz_divisible_p(rest.get_mpz_t(), prime.get_mpz_t())) {
        mpz_divexact(rest.get_mpz_t(), rest.get_mpz_t(), prime.get_mpz_t());
        ++v;
    }
    return v;
}

int valuation(const Integer& n, unsigned long prime) {
    if (n == 0) return kInfiniteValuation;
    Integer rest = abs(n);
    int v = 0;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), prime)) {
        mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), prime);
        ++v;
    }
    return v;
}

int valuation(const Rational& q, const Integer& prime) {
    if (q == 0) return kInfiniteValuation;
    return valuation(Integer(q.get_num()), prime) - valuation(Integer(q.get_den()), prime);
}

Integer mod(const Integer& a, const Integer& m) {
    Integer r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

unsigned long mod(const Integer& a, unsigned long m) {
    return mpz_fdiv_ui(a.get_mpz_t(), m);
}

Integer power(const Integer& base, unsigned long exponent) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
    return r;
}

int legendre(const Integer& a, const Integer& p) {
    Integer r = mod(a, p);
    return mpz_legendre(r.get_mpz_t(), p.get_mpz_t());
}

bool is_square_mod(const Integer& a, const Integer& p) {
    if (p == 2) return true;
    return legendre(a, p) >= 0;
}

bool is_probable_prime(const Integer& n) {
    if (n < 2) return false;
    return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0;
}

std::vector<unsigned long> primes_up_to(unsigned long bound) {
    std::vector<unsigned long> primes;
    if (bound < 2) return primes;
    std::vector<bool> composite(bound + 1, false);
    for (unsigned long i = 2; i <= bound; ++i) {
        if (composite[i]) continue;
        primes.push_back(i);
        for (unsigned long j = i * i; j <= bound; j += i) composite[j] = true;
    }
    return primes;
}

bool is_small_prime(unsigned long n) {
    if (n < 2) return false;
    for (unsigned long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

Integer inverse_mod(const Integer& a, const Integer& p) {
    Integer r;
    Integer reduced = mod(a, p);
    if (mpz_invert(r.get_mpz_t(), reduced.get_mpz_t(), p.get_mpz_t()) == 0)
        throw Error(ErrorKind::InvalidInput, "no inverse of " + to_string(a) + " mod " + to_string(p));
    return r;
}

std::string to_string(const Integer& n) { return n.get_str(); }

std::string to_string(const Rational& q) { return q.get_str(); }

Integer parse_integer(std::string_view text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (s.size() == start) throw Error(ErrorKind::InvalidInput, "empty integer");
    for (std::size_t i = start; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
            throw Error(ErrorKind::InvalidInput, "not an integer: '" + std::string(text) + "'");
    if (s[0] == '+') s.erase(0, 1);
    return Integer(s, 10);
}

}  // namespace shaclass
