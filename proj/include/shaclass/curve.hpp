#pragma once

// Weierstrass models over Q: invariants, minimal models, reduction mod p.

#include "shaclass/arith.hpp"

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace shaclass {

/// Integral long Weierstrass model
///   y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6
/// with nonzero discriminant.
class CurveModel {
public:
    /// Throws SingularModel when the discriminant vanishes.
    CurveModel(Integer a1, Integer a2, Integer a3, Integer a4, Integer a6);
    explicit CurveModel(const std::array<Integer, 5>& a);

    /// y^2 = x^3 + A x + B.
    static CurveModel short_form(const Integer& A, const Integer& B);

    /// Accepts "a1,a2,a3,a4,a6" (optionally bracketed) or the short form "[A,B]".
    static CurveModel parse(std::string_view text);

    const Integer& a1() const { return a_[0]; }
    const Integer& a2() const { return a_[1]; }
    const Integer& a3() const { return a_[2]; }
    const Integer& a4() const { return a_[3]; }
    const Integer& a6() const { return a_[4]; }
    const std::array<Integer, 5>& coefficients() const { return a_; }

    /// "[a1,a2,a3,a4,a6]"
    std::string to_string() const;

    friend bool operator==(const CurveModel& x, const CurveModel& y) { return x.a_ == y.a_; }

private:
    std::array<Integer, 5> a_;
};

struct Invariants {
    Integer b2, b4, b6, b8;
    Integer c4, c6;
    Integer discriminant;
    Rational j;
};

/// Throws SingularModel for a vanishing discriminant.
Invariants compute_invariants(const std::array<Integer, 5>& a);
Invariants compute_invariants(const CurveModel& model);

/// Change of variables x = u^2 x' + r, y = u^3 y' + s u^2 x' + t.
struct Transformation {
    Rational u{1}, r{0}, s{0}, t{0};
};

/// Coefficients of the model obtained from `a` by the change of variables.
std::array<Rational, 5> apply_transformation(const std::array<Rational, 5>& a,
                                             const Transformation& w);

struct MinimalModelResult {
    CurveModel model;
    /// Maps the input model onto `model`.
    Transformation transformation;
};

/// Globally minimal model in reduced form (a1, a3 in {0, 1}, a2 in {-1, 0, 1}).
///
/// Laska-Kraus-Connell: the scaling u is the largest integer whose powers
/// divide (c4, c6) such that (c4/u^4, c6/u^6) still satisfy Kraus's
/// integrality conditions at 2 and 3; the reduced model is then rebuilt from
/// the scaled invariants.
MinimalModelResult minimal_model_with_transformation(const CurveModel& model);
CurveModel minimal_model(const CurveModel& model);

/// Kraus's conditions: (c4, c6) are the invariants of some integral model.
bool kraus_conditions_hold(const Integer& c4, const Integer& c6);

/// Exponent e of the largest p^e dividing the minimal scaling at p.
int minimal_scaling_exponent(const Integer& c4, const Integer& c6, const Integer& p);

/// Valuation at p of the minimal discriminant.
int minimal_discriminant_valuation(const CurveModel& model, const Integer& p);

bool has_good_reduction(const CurveModel& model, unsigned long p);

/// a_p = p + 1 - #E(F_p) for a prime of good reduction.
/// Throws BadReductionAtP when p divides the minimal discriminant.
long trace_of_frobenius(const CurveModel& model, unsigned long p);

/// Point count of the reduction of a model whose discriminant is a unit at p.
/// No reduction check: callers guarantee good reduction of this model.
long trace_of_frobenius_unchecked(const CurveModel& model, unsigned long p);

enum class ReductionKind { Ordinary, Supersingular };

std::string_view to_string(ReductionKind kind);

struct GoodPrimeProfile {
    unsigned long p = 0;
    long a_p = 0;
    ReductionKind reduction_kind = ReductionKind::Ordinary;
    /// Residue of the unit root of X^2 - a_p X + p; only set when ordinary.
    std::optional<unsigned long> alpha_p_mod_p;
    std::optional<long> cm_discriminant;
};

GoodPrimeProfile classify_good_prime(const CurveModel& model, unsigned long p);

/// Discriminant of the CM order when j is one of the 13 rational CM j-invariants.
std::optional<long> detect_cm(const Rational& j);

}  // namespace shaclass
