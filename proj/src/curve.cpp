#include "shaclass/curve.hpp"

#include "shaclass/error.hpp"
#include "shaclass/factor.hpp"

#include <algorithm>
#include <sstream>
#include <vector>

namespace shaclass {
namespace {

std::array<Integer, 5> checked(std::array<Integer, 5> a) {
    compute_invariants(a);
    return a;
}

// Representative of a mod m in (-m/2, m/2].
Integer centered_mod(const Integer& a, const Integer& m) {
    Integer r = mod(a, m);
    if (2 * r > m) r -= m;
    return r;
}

bool kraus_at_3(const Integer& c4, const Integer& c6) {
    Integer disc = c4 * c4 * c4 - c6 * c6;
    if (!mpz_divisible_ui_p(disc.get_mpz_t(), 27)) return false;
    return valuation(c6, 3UL) != 2;
}

bool kraus_at_2(const Integer& c4, const Integer& c6) {
    Integer disc = c4 * c4 * c4 - c6 * c6;
    if (!mpz_divisible_ui_p(disc.get_mpz_t(), 64)) return false;
    if (mod(c6, 4UL) == 3) return true;
    if (valuation(c4, 2UL) < 4) return false;
    unsigned long r = mod(c6, 32UL);
    return r == 0 || r == 8;
}

}  // namespace

CurveModel::CurveModel(Integer a1, Integer a2, Integer a3, Integer a4, Integer a6)
    : a_(checked({std::move(a1), std::move(a2), std::move(a3), std::move(a4), std::move(a6)})) {}

CurveModel::CurveModel(const std::array<Integer, 5>& a) : a_(checked(a)) {}

CurveModel CurveModel::short_form(const Integer& A, const Integer& B) {
    return CurveModel(0, 0, 0, A, B);
}

CurveModel CurveModel::parse(std::string_view text) {
    std::string s(text);
    s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return c == '[' || c == ']' || c == ' '; }),
            s.end());
    std::vector<Integer> values;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) values.push_back(parse_integer(item));
    if (values.size() == 2) return short_form(values[0], values[1]);
    if (values.size() == 5) return CurveModel(values[0], values[1], values[2], values[3], values[4]);
    throw Error(ErrorKind::InvalidInput,
                "expected five coefficients a1,a2,a3,a4,a6 or the short form [A,B], got '" +
                    std::string(text) + "'");
}

std::string CurveModel::to_string() const {
    std::string out = "[";
    for (std::size_t i = 0; i < a_.size(); ++i) {
        if (i) out += ",";
        out += a_[i].get_str();
    }
    return out + "]";
}

Invariants compute_invariants(const std::array<Integer, 5>& a) {
    const auto& [a1, a2, a3, a4, a6] = a;
    Invariants inv;
    inv.b2 = a1 * a1 + 4 * a2;
    inv.b4 = 2 * a4 + a1 * a3;
    inv.b6 = a3 * a3 + 4 * a6;
    inv.b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    inv.c4 = inv.b2 * inv.b2 - 24 * inv.b4;
    inv.c6 = -inv.b2 * inv.b2 * inv.b2 + 36 * inv.b2 * inv.b4 - 216 * inv.b6;
    inv.discriminant = -inv.b2 * inv.b2 * inv.b8 - 8 * inv.b4 * inv.b4 * inv.b4 -
                       27 * inv.b6 * inv.b6 + 9 * inv.b2 * inv.b4 * inv.b6;
    if (inv.discriminant == 0)
        throw Error(ErrorKind::SingularModel, "discriminant vanishes");
    inv.j = Rational(inv.c4 * inv.c4 * inv.c4, inv.discriminant);
    inv.j.canonicalize();
    return inv;
}

Invariants compute_invariants(const CurveModel& model) { return compute_invariants(model.coefficients()); }

std::array<Rational, 5> apply_transformation(const std::array<Rational, 5>& a, const Transformation& w) {
    const auto& [a1, a2, a3, a4, a6] = a;
    const Rational &u = w.u, &r = w.r, &s = w.s, &t = w.t;
    Rational u2 = u * u, u3 = u2 * u, u4 = u2 * u2, u6 = u3 * u3;
    std::array<Rational, 5> out;
    out[0] = (a1 + 2 * s) / u;
    out[1] = (a2 - s * a1 + 3 * r - s * s) / u2;
    out[2] = (a3 + r * a1 + 2 * t) / u3;
    out[3] = (a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t) / u4;
    out[4] = (a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1) / u6;
    for (auto& x : out) x.canonicalize();
    return out;
}

bool kraus_conditions_hold(const Integer& c4, const Integer& c6) {
    if (c4 * c4 * c4 == c6 * c6) return false;
    return kraus_at_2(c4, c6) && kraus_at_3(c4, c6);
}

int minimal_scaling_exponent(const Integer& c4, const Integer& c6, const Integer& p) {
    Integer disc = c4 * c4 * c4 - c6 * c6;
    int bound = std::min({valuation(c4, p) / 4, valuation(c6, p) / 6, valuation(disc, p) / 12});
    if (p > 3) return bound;
    for (int e = bound; e > 0; --e) {
        Integer s4 = power(p, 4 * e), s6 = power(p, 6 * e);
        if (!mpz_divisible_p(c4.get_mpz_t(), s4.get_mpz_t()) ||
            !mpz_divisible_p(c6.get_mpz_t(), s6.get_mpz_t()))
            continue;
        Integer c4s = c4 / s4, c6s = c6 / s6;
        if (p == 2 ? kraus_at_2(c4s, c6s) : kraus_at_3(c4s, c6s)) return e;
    }
    return 0;
}

MinimalModelResult minimal_model_with_transformation(const CurveModel& model) {
    const Invariants inv = compute_invariants(model);
    Integer g = gcd(inv.c4, inv.c6);
    Integer u = 1;
    if (g != 1 && g != -1) {
        for (const PrimePower& pp : factor(g)) {
            int e = minimal_scaling_exponent(inv.c4, inv.c6, pp.prime);
            u *= power(pp.prime, e);
        }
    }
    const Integer c4 = inv.c4 / power(u, 4);
    const Integer c6 = inv.c6 / power(u, 6);

    const Integer b2 = centered_mod(-c6, 12);
    const Integer b4 = (b2 * b2 - c4) / 24;
    const Integer b6 = (-b2 * b2 * b2 + 36 * b2 * b4 - c6) / 216;
    const Integer a1 = mod(b2, Integer(2));
    const Integer a3 = mod(b6, Integer(2));
    const Integer a2 = (b2 - a1) / 4;
    const Integer a4 = (b4 - a1 * a3) / 2;
    const Integer a6 = (b6 - a3) / 4;
    CurveModel reduced(a1, a2, a3, a4, a6);

    const auto& in = model.coefficients();
    Transformation w;
    w.u = u;
    w.s = Rational(u * a1 - in[0], 2);
    w.r = (Rational(u * u * a2 - in[1]) + w.s * in[0] + w.s * w.s) / 3;
    w.t = (Rational(u * u * u * a3 - in[2]) - w.r * in[0]) / 2;
    w.r.canonicalize();
    w.s.canonicalize();
    w.t.canonicalize();
    return {reduced, w};
}

CurveModel minimal_model(const CurveModel& model) { return minimal_model_with_transformation(model).model; }

int minimal_discriminant_valuation(const CurveModel& model, const Integer& p) {
    const Invariants inv = compute_invariants(model);
    return valuation(inv.discriminant, p) - 12 * minimal_scaling_exponent(inv.c4, inv.c6, p);
}

bool has_good_reduction(const CurveModel& model, unsigned long p) {
    return minimal_discriminant_valuation(model, Integer(p)) == 0;
}

long trace_of_frobenius_unchecked(const CurveModel& model, unsigned long p) {
    if (p == 2) {
        std::array<unsigned long, 5> a;
        for (int i = 0; i < 5; ++i) a[i] = mod(model.coefficients()[i], 2UL);
        long affine = 0;
        for (unsigned long x = 0; x < 2; ++x)
            for (unsigned long y = 0; y < 2; ++y) {
                unsigned long lhs = y * y + a[0] * x * y + a[2] * y;
                unsigned long rhs = x * x * x + a[1] * x * x + a[3] * x + a[4];
                if ((lhs + rhs) % 2 == 0) ++affine;
            }
        return 2 + 1 - (affine + 1);
    }
    // (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6
    const Invariants inv = compute_invariants(model);
    const unsigned long b2 = mod(inv.b2, p), b4 = mod(inv.b4, p), b6 = mod(inv.b6, p);
    std::vector<signed char> chi(p, -1);
    chi[0] = 0;
    for (unsigned long y = 1; y <= p / 2; ++y) chi[(y * y) % p] = 1;
    long sum = 0;
    using u128 = unsigned __int128;
    for (unsigned long x = 0; x < p; ++x) {
        u128 v = (4 * (u128)x % p * x % p * x + (u128)b2 * x % p * x + 2 * (u128)b4 * x + b6) % p;
        sum += chi[(unsigned long)v];
    }
    return -sum;
}

long trace_of_frobenius(const CurveModel& model, unsigned long p) {
    const Invariants inv = compute_invariants(model);
    if (!mpz_divisible_ui_p(inv.discriminant.get_mpz_t(), p)) return trace_of_frobenius_unchecked(model, p);
    if (minimal_discriminant_valuation(model, Integer(p)) > 0)
        throw Error(ErrorKind::BadReductionAtP, "p = " + std::to_string(p) + " divides the minimal discriminant");
    return trace_of_frobenius_unchecked(minimal_model(model), p);
}

std::string_view to_string(ReductionKind kind) {
    return kind == ReductionKind::Ordinary ? "Ordinary" : "Supersingular";
}

GoodPrimeProfile classify_good_prime(const CurveModel& model, unsigned long p) {
    GoodPrimeProfile profile;
    profile.p = p;
    profile.a_p = trace_of_frobenius(model, p);
    long residue = ((profile.a_p % (long)p) + (long)p) % (long)p;
    if (residue == 0) {
        profile.reduction_kind = ReductionKind::Supersingular;
    } else {
        profile.reduction_kind = ReductionKind::Ordinary;
        // the unit root satisfies alpha (a_p - alpha) = p, so alpha = a_p mod p
        profile.alpha_p_mod_p = static_cast<unsigned long>(residue);
    }
    profile.cm_discriminant = detect_cm(compute_invariants(model).j);
    return profile;
}

std::optional<long> detect_cm(const Rational& j) {
    struct Entry {
        const char* j;
        long disc;
    };
    static constexpr Entry kTable[] = {
        {"0", -3},
        {"54000", -12},
        {"-12288000", -27},
        {"1728", -4},
        {"287496", -16},
        {"-3375", -7},
        {"16581375", -28},
        {"8000", -8},
        {"-32768", -11},
        {"-884736", -19},
        {"-884736000", -43},
        {"-147197952000", -67},
        {"-262537412640768000", -163},
    };
    for (const Entry& e : kTable)
        if (j == Rational(e.j)) return e.disc;
    return std::nullopt;
}

}  // namespace shaclass
