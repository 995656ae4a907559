#pragma once

// The mod-p Galois representation: image certification from Frobenius traces,
// ordinary local shape at p, and the wild-ramification condition.

#include "shaclass/curve.hpp"

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace shaclass {

enum class ImageStatus { SurjectiveCertified, SmallImageCertified, Inconclusive };

enum class MaximalSubgroup { Borel, SplitCartanNormalizer, NonsplitCartanNormalizer, Exceptional };

std::string_view to_string(ImageStatus s);
std::string_view to_string(MaximalSubgroup m);

inline constexpr unsigned long kDefaultSampleBound = 1000;
inline constexpr unsigned long kMinimumSampleBound = 10;
/// Largest p for which a division-polynomial reducibility witness is attempted.
inline constexpr unsigned long kReducibilityWitnessBound = 13;

struct FrobeniusWitness {
    unsigned long ell = 0;
    long a_ell = 0;
    unsigned long trace_mod_p = 0;
    unsigned long ell_mod_p = 0;
    /// Classes this element newly rules out.
    std::vector<MaximalSubgroup> rules_out;
    /// True when ell mod p enlarged the subgroup of (Z/p)^x generated so far.
    bool extends_determinant = false;
};

struct ImageCertificate {
    std::string curve;  ///< minimal model, "[a1,a2,a3,a4,a6]"
    unsigned long p = 0;
    unsigned long sample_bound = kDefaultSampleBound;
    ImageStatus status = ImageStatus::Inconclusive;
    std::vector<FrobeniusWitness> witnesses;
    std::set<MaximalSubgroup> ruled_out;
    bool determinant_surjective = false;
    /// Smallest class not ruled out (diagnostic when inconclusive).
    std::optional<MaximalSubgroup> first_unruled;
    /// X-coordinate of a rational p-torsion point on Y^2 = X^3 - 27 c4 X - 54 c6.
    std::optional<Rational> reducibility_witness;
};

/// Throws BadReductionAtP when p divides the minimal discriminant and
/// InvalidInput for an even or composite p or a sample bound below the minimum.
ImageCertificate certify_image(const CurveModel& model, unsigned long p,
                               unsigned long sample_bound = kDefaultSampleBound);

/// Order in PGL_2(F_p) of a semisimple element with trace t and determinant d,
/// or nullopt when t^2 - 4d = 0 mod p.
std::optional<unsigned long> projective_order(unsigned long t, unsigned long d, unsigned long p);

enum class TriState { True, False, Unknown };
std::string_view to_string(TriState s);

struct OrdinaryShape {
    unsigned long p = 0;
    /// Frobenius eigenvalue on the reduction's p-torsion, alpha_p mod p.
    unsigned long psi_frobenius_eigenvalue = 0;
    std::string kernel_character_note = "omega_p psi^-1 on C_p";
    TriState star_nonzero = TriState::Unknown;
};

/// Throws NotOrdinary for a supersingular profile.
OrdinaryShape ordinary_shape(const GoodPrimeProfile& profile, TriState star_nonzero = TriState::Unknown);

enum class WildRamificationStatus { Vacuous, CMCase, AssumedByUser, Unknown };
std::string_view to_string(WildRamificationStatus s);

/// Status of "a_p = 1 mod p and no CM implies rho-bar wildly ramified at p".
WildRamificationStatus wild_ramification_status(const GoodPrimeProfile& profile,
                                                std::optional<long> cm_discriminant,
                                                bool assumed_by_user);

}  // namespace shaclass
