#include "shaclass/galrep.hpp"

#include "shaclass/error.hpp"
#include "shaclass/polynomial.hpp"

#include <algorithm>

namespace shaclass {

std::string_view to_string(ImageStatus s) {
    switch (s) {
        case ImageStatus::SurjectiveCertified: return "SurjectiveCertified";
        case ImageStatus::SmallImageCertified: return "SmallImageCertified";
        case ImageStatus::Inconclusive: return "Inconclusive";
    }
    return "?";
}

std::string_view to_string(MaximalSubgroup m) {
    switch (m) {
        case MaximalSubgroup::Borel: return "Borel";
        case MaximalSubgroup::SplitCartanNormalizer: return "SplitCartanNormalizer";
        case MaximalSubgroup::NonsplitCartanNormalizer: return "NonsplitCartanNormalizer";
        case MaximalSubgroup::Exceptional: return "Exceptional";
    }
    return "?";
}

std::string_view to_string(TriState s) {
    switch (s) {
        case TriState::True: return "True";
        case TriState::False: return "False";
        case TriState::Unknown: return "Unknown";
    }
    return "?";
}

std::string_view to_string(WildRamificationStatus s) {
    switch (s) {
        case WildRamificationStatus::Vacuous: return "Vacuous";
        case WildRamificationStatus::CMCase: return "CMCase";
        case WildRamificationStatus::AssumedByUser: return "AssumedByUser";
        case WildRamificationStatus::Unknown: return "Unknown";
    }
    return "?";
}

std::optional<unsigned long> projective_order(unsigned long t, unsigned long d, unsigned long p) {
    t %= p;
    d %= p;
    if (d == 0) throw Error(ErrorKind::InvalidInput, "singular matrix");
    const unsigned long disc = (t * t % p + p * 4 - 4 * d % p) % p;
    if (disc == 0) return std::nullopt;
    // Eigenvalue ratio -1: the ratio polynomial below degenerates to (Z + 1)^2.
    if (t == 0) return 2;
    // The eigenvalue ratio z is a root of Z^2 - (t^2/d - 2) Z + 1; work in F_p[Z]/(Z^2 - m Z + 1).
    const unsigned long dinv = inverse_mod(Integer(d), Integer(p)).get_ui();
    const unsigned long m = (t * t % p * dinv % p + p - 2) % p;
    // (x0 + x1 Z)(y0 + y1 Z) with Z^2 = m Z - 1
    auto mul = [&](std::pair<unsigned long, unsigned long> x, std::pair<unsigned long, unsigned long> y) {
        unsigned long c0 = x.first * y.first % p;
        unsigned long c1 = (x.first * y.second + x.second * y.first) % p;
        unsigned long c2 = x.second * y.second % p;
        return std::pair<unsigned long, unsigned long>{(c0 + p - c2) % p, (c1 + c2 * m) % p};
    };
    std::pair<unsigned long, unsigned long> z{0, 1}, acc = z;
    for (unsigned long k = 1; k <= 2 * p + 2; ++k) {
        if (acc.first == 1 && acc.second == 0) return k;
        acc = mul(acc, z);
    }
    throw Error(ErrorKind::InvalidInput, "projective order search failed");
}

namespace {

std::optional<Rational> rational_torsion_abscissa(const Invariants& inv, unsigned long p) {
    const Integer A = -27 * inv.c4, B = -54 * inv.c6;
    Invariants shortinv = compute_invariants(std::array<Integer, 5>{0, 0, 0, A, B});
    const Polynomial f = division_polynomial(shortinv, static_cast<unsigned>(p));
    const int d = f.degree();
    std::vector<Integer> g(d + 1);
    // p^(d-1) f(X/p) is monic because the leading coefficient of f is p.
    for (int i = 0; i < d; ++i) g[i] = f.coefficient(i) * power(Integer(p), static_cast<unsigned long>(d - 1 - i));
    g[d] = 1;
    for (const Integer& root : integer_roots(Polynomial(std::move(g)))) {
        Rational x(root, Integer(p));
        x.canonicalize();
        return x;
    }
    return std::nullopt;
}

}  // namespace

ImageCertificate certify_image(const CurveModel& model, unsigned long p, unsigned long sample_bound) {
    if (p < 3 || !is_small_prime(p)) throw Error(ErrorKind::InvalidInput, "p must be an odd prime");
    if (sample_bound < kMinimumSampleBound)
        throw Error(ErrorKind::InvalidInput, "sample bound must be at least " + std::to_string(kMinimumSampleBound));
    const CurveModel minimal = minimal_model(model);
    const Invariants inv = compute_invariants(minimal);
    if (mpz_divisible_ui_p(inv.discriminant.get_mpz_t(), p))
        throw Error(ErrorKind::BadReductionAtP, "p = " + std::to_string(p) + " is a prime of bad reduction");

    ImageCertificate cert;
    cert.curve = minimal.to_string();
    cert.p = p;
    cert.sample_bound = sample_bound;
    if (p == 3) cert.ruled_out.insert(MaximalSubgroup::Exceptional);  // PGL_2(F_3) is S_4 itself

    std::vector<bool> in_det_group(p, false);
    in_det_group[1] = true;
    unsigned long det_size = 1;

    auto all_ruled = [&] { return cert.ruled_out.size() == 4; };
    for (unsigned long ell : primes_up_to(sample_bound)) {
        if (all_ruled() && det_size == p - 1) break;
        if (ell == p || mpz_divisible_ui_p(inv.discriminant.get_mpz_t(), ell)) continue;
        const long a = trace_of_frobenius_unchecked(minimal, ell);
        FrobeniusWitness w;
        w.ell = ell;
        w.a_ell = a;
        w.trace_mod_p = static_cast<unsigned long>(((a % (long)p) + (long)p) % (long)p);
        w.ell_mod_p = ell % p;
        const unsigned long t = w.trace_mod_p, d = w.ell_mod_p;
        const Integer disc = Integer(t) * t - 4 * Integer(d);
        const int chi = legendre(disc, Integer(p));
        auto rule = [&](MaximalSubgroup m) {
            if (cert.ruled_out.insert(m).second) w.rules_out.push_back(m);
        };
        if (t != 0 && chi == -1) {
            rule(MaximalSubgroup::Borel);
            rule(MaximalSubgroup::SplitCartanNormalizer);
        }
        if (t != 0 && chi == 1) rule(MaximalSubgroup::NonsplitCartanNormalizer);
        if (auto order = projective_order(t, d, p); order && *order > 5) rule(MaximalSubgroup::Exceptional);
        if (!in_det_group[d]) {
            // close the subgroup generated so far under multiplication by d
            for (bool grew = true; grew;) {
                grew = false;
                for (unsigned long x = 1; x < p; ++x) {
                    if (!in_det_group[x]) continue;
                    unsigned long y = x * d % p;
                    if (!in_det_group[y]) in_det_group[y] = grew = true;
                }
            }
            det_size = static_cast<unsigned long>(std::count(in_det_group.begin(), in_det_group.end(), true));
            w.extends_determinant = true;
        }
        if (!w.rules_out.empty() || w.extends_determinant) cert.witnesses.push_back(std::move(w));
    }
    cert.determinant_surjective = det_size == p - 1;
    if (all_ruled() && cert.determinant_surjective) {
        cert.status = ImageStatus::SurjectiveCertified;
        return cert;
    }
    for (MaximalSubgroup m : {MaximalSubgroup::Borel, MaximalSubgroup::SplitCartanNormalizer,
                              MaximalSubgroup::NonsplitCartanNormalizer, MaximalSubgroup::Exceptional}) {
        if (!cert.ruled_out.count(m)) {
            cert.first_unruled = m;
            break;
        }
    }
    if (p <= kReducibilityWitnessBound) {
        if (auto x = rational_torsion_abscissa(inv, p)) {
            cert.reducibility_witness = *x;
            cert.status = ImageStatus::SmallImageCertified;
        }
    }
    return cert;
}

OrdinaryShape ordinary_shape(const GoodPrimeProfile& profile, TriState star_nonzero) {
    if (profile.reduction_kind != ReductionKind::Ordinary || !profile.alpha_p_mod_p)
        throw Error(ErrorKind::NotOrdinary, "reduction at p = " + std::to_string(profile.p) + " is supersingular");
    OrdinaryShape shape;
    shape.p = profile.p;
    shape.psi_frobenius_eigenvalue = *profile.alpha_p_mod_p;
    shape.star_nonzero = star_nonzero;
    return shape;
}

WildRamificationStatus wild_ramification_status(const GoodPrimeProfile& profile,
                                                std::optional<long> cm_discriminant, bool assumed_by_user) {
    const long p = static_cast<long>(profile.p);
    const bool ap_is_one = ((profile.a_p % p) + p) % p == 1 % p;
    if (profile.reduction_kind == ReductionKind::Supersingular || !ap_is_one) return WildRamificationStatus::Vacuous;
    if (cm_discriminant) return WildRamificationStatus::CMCase;
    if (assumed_by_user) return WildRamificationStatus::AssumedByUser;
    return WildRamificationStatus::Unknown;
}

}  // namespace shaclass
