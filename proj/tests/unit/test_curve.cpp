#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "shaclass/curve.hpp"
#include "shaclass/error.hpp"
#include "support.hpp"

#include <random>

using namespace shaclass;
using namespace shaclass::testing;

namespace {

const std::vector<std::array<Integer, 5>> kCurves = {
    {1, -1, 0, -332311, -73733731},
    {1, 0, 1, 0, 2},
    {0, 0, 1, Integer("-17034726259173"), Integer("-27061436852750306309")},
    {0, -1, 1, -10, -20},
    {0, 0, 1, -1, 0},
    {0, 1, 1, -2, 0},
    {0, 0, 1, -7, 6},
    {1, 0, 1, 4, -6},
    {0, 0, 0, 0, 1},
    {0, 0, 0, -1, 0},
};

Integer cubic_discriminant(const Integer& a, const Integer& b, const Integer& c, const Integer& d) {
    return b * b * c * c - 4 * a * c * c * c - 4 * b * b * b * d - 27 * a * a * d * d + 18 * a * b * c * d;
}

std::array<Integer, 5> random_model(std::mt19937_64& rng, long range) {
    std::uniform_int_distribution<long> d(-range, range);
    return {d(rng) % 2, d(rng) % 2, d(rng) % 2, d(rng), d(rng)};
}

std::array<Rational, 5> to_rational(const std::array<Integer, 5>& a) {
    return {Rational(a[0]), Rational(a[1]), Rational(a[2]), Rational(a[3]), Rational(a[4])};
}

std::array<Integer, 5> to_integer(const std::array<Rational, 5>& a) {
    std::array<Integer, 5> out;
    for (int i = 0; i < 5; ++i) {
        REQUIRE(a[i].get_den() == 1);
        out[i] = a[i].get_num();
    }
    return out;
}

}  // namespace

TEST_CASE("invariant identities on random models") {
    std::mt19937_64 rng(1);
    int checked = 0;
    while (checked < 1000) {
        auto a = random_model(rng, 500);
        Invariants inv;
        try {
            inv = compute_invariants(a);
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::SingularModel);
            continue;
        }
        ++checked;
        CHECK(1728 * inv.discriminant == inv.c4 * inv.c4 * inv.c4 - inv.c6 * inv.c6);
        CHECK(4 * inv.b8 == inv.b2 * inv.b6 - inv.b4 * inv.b4);
        CHECK(inv.c4 == inv.b2 * inv.b2 - 24 * inv.b4);
        CHECK(inv.j == Rational(inv.c4 * inv.c4 * inv.c4) / Rational(inv.discriminant));
        CHECK(16 * inv.discriminant == cubic_discriminant(4, inv.b2, 2 * inv.b4, inv.b6));
    }
}

TEST_CASE("singular models are rejected") {
    CHECK_THROWS_AS(CurveModel(0, 0, 0, 0, 0), Error);
    try {
        CurveModel(0, 0, 0, -3, 2);
        FAIL("expected SingularModel");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::SingularModel);
    }
}

TEST_CASE("parsing") {
    CHECK(CurveModel::parse("1,-1,0,-332311,-73733731") == CurveModel(1, -1, 0, -332311, -73733731));
    CHECK(CurveModel::parse("[1, -1, 0, -332311, -73733731]") == CurveModel(1, -1, 0, -332311, -73733731));
    CHECK(CurveModel::parse("[-1,0]") == CurveModel(0, 0, 0, -1, 0));
    CHECK(CurveModel(1, -1, 0, -332311, -73733731).to_string() == "[1,-1,0,-332311,-73733731]");
    CHECK_THROWS_AS(CurveModel::parse("1,2,3"), Error);
    CHECK_THROWS_AS(CurveModel::parse("a,b"), Error);
    CHECK_THROWS_AS(CurveModel::parse(""), Error);
}

TEST_CASE("j is invariant under changes of variables") {
    std::mt19937_64 rng(2);
    std::uniform_int_distribution<long> d(-20, 20);
    int checked = 0;
    while (checked < 200) {
        auto a = random_model(rng, 200);
        Invariants inv;
        try {
            inv = compute_invariants(a);
        } catch (const Error&) {
            continue;
        }
        ++checked;
        Transformation w;
        w.u = Rational(1, 1 + checked % 3);
        w.r = d(rng);
        w.s = d(rng);
        w.t = d(rng);
        auto b = to_integer(apply_transformation(to_rational(a), w));
        auto inv2 = compute_invariants(b);
        CHECK(inv2.j == inv.j);
        Integer u = w.u.get_den();
        CHECK(inv2.discriminant == inv.discriminant * power(u, 12));
    }
}

TEST_CASE("minimal models against the reference corpus") {
    auto rows = read_corpus("minimal_models.txt");
    REQUIRE(rows.size() >= 20);
    for (const auto& row : rows) {
        CurveModel input(parse_ainvs(row[0]));
        CurveModel expected(parse_ainvs(row[1]));
        auto result = minimal_model_with_transformation(input);
        CHECK_MESSAGE(result.model == expected, row[0]);
        CHECK(compute_invariants(result.model).discriminant == Integer(row[2]));
        CHECK(compute_invariants(result.model).j == Rational(row[3]));
        CHECK(minimal_model(result.model) == result.model);
        auto mapped = apply_transformation(to_rational(input.coefficients()), result.transformation);
        CHECK(to_integer(mapped) == result.model.coefficients());
    }
}

TEST_CASE("minimal model undoes integral scalings") {
    std::mt19937_64 rng(3);
    int checked = 0;
    while (checked < 100) {
        auto a = random_model(rng, 300);
        CurveModel base(0, 0, 1, -1, 0);
        try {
            base = CurveModel(a);
        } catch (const Error&) {
            continue;
        }
        ++checked;
        CurveModel minimal = minimal_model(base);
        for (long u : {2l, 3l, 6l}) {
            std::array<Integer, 5> scaled = a;
            const int weights[5] = {1, 2, 3, 4, 6};
            for (int i = 0; i < 5; ++i) scaled[i] *= power(Integer(u), weights[i]);
            CHECK(minimal_model(CurveModel(scaled)) == minimal);
        }
        auto inv = compute_invariants(minimal);
        for (unsigned long p : {2ul, 3ul, 5ul, 7ul})
            CHECK(minimal_discriminant_valuation(base, Integer(p)) == valuation(inv.discriminant, p));
    }
}

TEST_CASE("trace of Frobenius matches point enumeration") {
    for (const auto& a : kCurves) {
        CurveModel model(a);
        CurveModel minimal = minimal_model(model);
        for (unsigned long p : primes_up_to(97)) {
            if (!brute_force_good(minimal.coefficients(), p)) {
                CHECK_THROWS_AS(trace_of_frobenius(model, p), Error);
                continue;
            }
            long expected = brute_force_trace(minimal.coefficients(), p);
            long a_p = trace_of_frobenius(model, p);
            CHECK_MESSAGE(a_p == expected, model.to_string() << " p=" << p);
            CHECK(a_p * a_p <= 4 * long(p));
        }
    }
}

TEST_CASE("trace of Frobenius on random models obeys Hasse") {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 200; ++trial) {
        auto a = random_model(rng, 1000);
        CurveModel model(0, 0, 1, -1, 0);
        try {
            model = CurveModel(a);
        } catch (const Error&) {
            continue;
        }
        for (unsigned long p : {2ul, 3ul, 5ul, 13ul, 101ul, 211ul}) {
            if (!has_good_reduction(model, p)) continue;
            long a_p = trace_of_frobenius(model, p);
            CHECK(a_p * a_p <= 4 * long(p));
            CHECK(a_p == brute_force_trace(minimal_model(model).coefficients(), p));
        }
    }
}

TEST_CASE("good prime classification") {
    CurveModel e1(1, -1, 0, -332311, -73733731);
    auto profile = classify_good_prime(e1, 5);
    CHECK(profile.a_p == brute_force_trace(minimal_model(e1).coefficients(), 5));
    CHECK(profile.a_p == 2);
    CHECK(profile.reduction_kind == ReductionKind::Ordinary);
    REQUIRE(profile.alpha_p_mod_p);
    CHECK(*profile.alpha_p_mod_p == 2);
    CHECK_FALSE(profile.cm_discriminant);

    CurveModel e2(0, 0, 1, Integer("-17034726259173"), Integer("-27061436852750306309"));
    CHECK(classify_good_prime(e2, 5).a_p == 4);

    auto ss = classify_good_prime(CurveModel::short_form(0, 1), 5);
    CHECK(ss.a_p == 0);
    CHECK(ss.reduction_kind == ReductionKind::Supersingular);
    CHECK_FALSE(ss.alpha_p_mod_p);
    CHECK(ss.cm_discriminant == -3);

    CHECK_THROWS_AS(classify_good_prime(e1, 23), Error);
}

TEST_CASE("CM table: every listed j has a_p = 0 at inert primes") {
    const std::pair<const char*, long> table[] = {
        {"0", -3},          {"1728", -4},        {"-3375", -7},           {"8000", -8},
        {"-32768", -11},    {"54000", -12},      {"287496", -16},         {"-884736", -19},
        {"-12288000", -27}, {"16581375", -28},   {"-884736000", -43},     {"-147197952000", -67},
        {"-262537412640768000", -163},
    };
    for (const auto& [jtext, disc] : table) {
        Integer j(jtext);
        CHECK(detect_cm(Rational(j)) == disc);
        CurveModel model(0, 0, 0, 0, 1);
        if (j == 0) {
            model = CurveModel::short_form(0, 1);
        } else if (j == 1728) {
            model = CurveModel::short_form(1, 0);
        } else {
            Integer k = j - 1728;
            model = CurveModel(k, 0, 0, -36 * k * k * k, -k * k * k * k * k);
        }
        CHECK(compute_invariants(model).j == Rational(j));
        int inert = 0;
        for (unsigned long p : primes_up_to(200)) {
            if (p < 5 || !has_good_reduction(model, p)) continue;
            if (legendre(Integer(disc), Integer(p)) != -1) continue;
            ++inert;
            CHECK_MESSAGE(trace_of_frobenius(model, p) == 0, jtext << " p=" << p);
        }
        CHECK(inert > 5);
    }
    CHECK_FALSE(detect_cm(Rational(1)));
    CHECK_FALSE(detect_cm(compute_invariants(CurveModel(1, -1, 0, -332311, -73733731)).j));
}
