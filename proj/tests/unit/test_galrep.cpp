#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "shaclass/error.hpp"
#include "shaclass/galrep.hpp"
#include "shaclass/localred.hpp"
#include "support.hpp"

#include <set>

using namespace shaclass;
using namespace shaclass::testing;

namespace {

struct ImageCase {
    CurveModel model;
    unsigned long p;
    bool full;
};

std::vector<ImageCase> image_corpus() {
    std::vector<ImageCase> out;
    for (const auto& row : read_corpus("image_corpus.txt"))
        out.push_back({CurveModel(parse_ainvs(row[0])), std::stoul(row[1]), row[2] == "full"});
    return out;
}

// Order of [[0, -d], [1, t]] modulo scalars.
unsigned long brute_projective_order(unsigned long t, unsigned long d, unsigned long p) {
    Mat2 g{{0, std::uint32_t((p - d % p) % p), 1, std::uint32_t(t % p)}};
    Mat2 x = g;
    for (unsigned long k = 1;; ++k) {
        if (x.m[1] == 0 && x.m[2] == 0 && x.m[0] == x.m[3]) return k;
        x = multiply(x, g, p);
    }
}

}  // namespace

TEST_CASE("projective order against matrix powers") {
    for (unsigned long p : {3ul, 5ul, 7ul, 11ul, 13ul}) {
        for (unsigned long t = 0; t < p; ++t) {
            for (unsigned long d = 1; d < p; ++d) {
                auto order = projective_order(t, d, p);
                long disc = (long(t * t) - 4 * long(d)) % long(p);
                if (disc == 0) {
                    CHECK_FALSE(order);
                    continue;
                }
                REQUIRE(order);
                CHECK_MESSAGE(*order == brute_projective_order(t, d, p), "p=" << p << " t=" << t << " d=" << d);
            }
        }
    }
}

TEST_CASE("worked examples are surjective at 5") {
    for (const auto& model : {CurveModel(1, -1, 0, -332311, -73733731),
                              CurveModel(0, 0, 1, Integer("-17034726259173"), Integer("-27061436852750306309")),
                              CurveModel(1, 0, 1, 0, 2)}) {
        auto cert = certify_image(model, 5);
        CHECK(cert.status == ImageStatus::SurjectiveCertified);
        CHECK(cert.determinant_surjective);
        CHECK(cert.ruled_out.size() == 4);
        CHECK_FALSE(cert.first_unruled);
        CHECK(cert.curve == minimal_model(model).to_string());
    }
}

TEST_CASE("rational 5-torsion is certified small") {
    auto cert = certify_image(CurveModel(0, -1, 1, -10, -20), 5);
    CHECK(cert.status == ImageStatus::SmallImageCertified);
    REQUIRE(cert.reducibility_witness);
    // The witness is an X-coordinate on Y^2 = X^3 - 27 c4 X - 54 c6, i.e. X = 36 x + 3 b2.
    auto inv = compute_invariants(CurveModel(0, -1, 1, -10, -20));
    Rational x = (*cert.reducibility_witness - 3 * Rational(inv.b2)) / 36;
    CHECK((x == 5 || x == 16));
}

TEST_CASE("witnesses are genuine Frobenius data") {
    for (const auto& c : image_corpus()) {
        auto cert = certify_image(c.model, c.p);
        auto conductor_primes = bad_primes(c.model);
        std::set<unsigned long> generated{1};
        std::set<MaximalSubgroup> ruled;
        for (const auto& w : cert.witnesses) {
            CHECK(w.ell <= cert.sample_bound);
            CHECK(w.ell != c.p);
            for (const auto& v : conductor_primes) CHECK(v != w.ell);
            CHECK(w.a_ell == brute_force_trace(minimal_model(c.model).coefficients(), w.ell));
            CHECK(w.trace_mod_p == ((w.a_ell % long(c.p)) + long(c.p)) % long(c.p));
            CHECK(w.ell_mod_p == w.ell % c.p);
            long t = long(w.trace_mod_p);
            long disc = ((t * t - 4 * long(w.ell_mod_p)) % long(c.p) + long(c.p)) % long(c.p);
            int chi = legendre(Integer(disc), Integer(c.p));
            for (auto m : w.rules_out) {
                CHECK_FALSE(ruled.count(m));
                ruled.insert(m);
                if (m == MaximalSubgroup::Borel || m == MaximalSubgroup::SplitCartanNormalizer) {
                    CHECK(t != 0);
                    CHECK(chi == -1);
                }
                if (m == MaximalSubgroup::NonsplitCartanNormalizer) {
                    CHECK(t != 0);
                    CHECK(chi == 1);
                }
                if (m == MaximalSubgroup::Exceptional) {
                    auto order = projective_order(w.trace_mod_p, w.ell_mod_p, c.p);
                    REQUIRE(order);
                    CHECK(*order > 5);
                }
            }
            if (w.extends_determinant) {
                std::set<unsigned long> next = generated;
                bool grew = true;
                while (grew) {
                    grew = false;
                    for (unsigned long g : std::set<unsigned long>(next))
                        if (next.insert(g * w.ell_mod_p % c.p).second) grew = true;
                }
                CHECK(next.size() > generated.size());
                generated = next;
            }
        }
        if (c.p != 3) CHECK(ruled == cert.ruled_out);
        CHECK(cert.determinant_surjective == (generated.size() == c.p - 1));
    }
}

TEST_CASE("image certification is sound on the reference corpus") {
    int certified_full = 0;
    int proper = 0;
    for (const auto& c : image_corpus()) {
        auto cert = certify_image(c.model, c.p);
        if (!c.full) {
            ++proper;
            CHECK_MESSAGE(cert.status != ImageStatus::SurjectiveCertified, c.model.to_string() << " p=" << c.p);
        } else if (cert.status == ImageStatus::SurjectiveCertified) {
            ++certified_full;
        } else {
            CHECK_MESSAGE(cert.status != ImageStatus::SmallImageCertified, c.model.to_string() << " p=" << c.p);
        }
    }
    CHECK(proper >= 5);
    CHECK(certified_full >= 10);
}

TEST_CASE("certification is monotone in the sample bound") {
    for (const auto& c : image_corpus()) {
        bool certified = false;
        for (unsigned long bound : {10ul, 30ul, 100ul, 300ul, 1000ul}) {
            auto cert = certify_image(c.model, c.p, bound);
            bool now = cert.status == ImageStatus::SurjectiveCertified;
            if (certified) CHECK(now);
            certified = certified || now;
        }
    }
}

TEST_CASE("input validation") {
    CurveModel e1(1, -1, 0, -332311, -73733731);
    try {
        certify_image(e1, 23);
        FAIL("expected BadReductionAtP");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::BadReductionAtP);
    }
    CHECK_THROWS_AS(certify_image(e1, 4), Error);
    CHECK_THROWS_AS(certify_image(e1, 2), Error);
    CHECK_THROWS_AS(certify_image(e1, 5, 9), Error);
}

TEST_CASE("ordinary shape") {
    auto shape = ordinary_shape(classify_good_prime(CurveModel(1, -1, 0, -332311, -73733731), 5));
    CHECK(shape.psi_frobenius_eigenvalue == 2);
    CHECK(shape.star_nonzero == TriState::Unknown);
    auto shape2 = ordinary_shape(
        classify_good_prime(CurveModel(0, 0, 1, Integer("-17034726259173"), Integer("-27061436852750306309")), 5),
        TriState::True);
    CHECK(shape2.psi_frobenius_eigenvalue == 4);
    CHECK(shape2.star_nonzero == TriState::True);
    try {
        ordinary_shape(classify_good_prime(CurveModel::short_form(0, 1), 5));
        FAIL("expected NotOrdinary");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotOrdinary);
    }
}

TEST_CASE("wild ramification condition") {
    auto e1 = classify_good_prime(CurveModel(1, -1, 0, -332311, -73733731), 5);
    CHECK(wild_ramification_status(e1, std::nullopt, false) == WildRamificationStatus::Vacuous);
    CHECK(wild_ramification_status(e1, std::nullopt, true) == WildRamificationStatus::Vacuous);

    auto e11 = classify_good_prime(CurveModel(0, -1, 1, -10, -20), 5);
    REQUIRE(e11.a_p == 1);
    CHECK(wild_ramification_status(e11, std::nullopt, false) == WildRamificationStatus::Unknown);
    CHECK(wild_ramification_status(e11, std::nullopt, true) == WildRamificationStatus::AssumedByUser);

    bool found = false;
    for (long k = 2; k < 40 && !found; ++k) {
        CurveModel cm = CurveModel::short_form(0, k);
        for (unsigned long p : primes_up_to(500)) {
            if (p < 5 || !has_good_reduction(cm, p)) continue;
            auto profile = classify_good_prime(cm, p);
            if (profile.reduction_kind != ReductionKind::Ordinary) continue;
            if (((profile.a_p % long(p)) + long(p)) % long(p) != 1) continue;
            found = true;
            CHECK(profile.cm_discriminant == -3);
            CHECK(wild_ramification_status(profile, profile.cm_discriminant, false) == WildRamificationStatus::CMCase);
            break;
        }
    }
    CHECK(found);
}
