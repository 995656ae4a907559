#pragma once

// Local reduction data at bad primes via Tate's algorithm.

#include "shaclass/curve.hpp"

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace shaclass {

class KodairaSymbol {
public:
    enum class Family { I, Istar, II, III, IV, IVstar, IIIstar, IIstar };

    KodairaSymbol() = default;
    KodairaSymbol(Family family, int n = 0) : family_(family), n_(n) {}

    /// Parses "I0", "I7", "I3*", "II", "IV*", ...
    static KodairaSymbol parse(std::string_view text);

    Family family() const { return family_; }
    int n() const { return n_; }
    /// Number of irreducible components of the special fibre.
    int components() const;
    std::string to_string() const;

    friend bool operator==(const KodairaSymbol&, const KodairaSymbol&) = default;

private:
    Family family_ = Family::I;
    int n_ = 0;
};

enum class ReductionClass {
    Good,
    SplitMultiplicative,
    NonsplitMultiplicative,
    AdditivePotentiallyMultiplicative,
    AdditivePotentiallyGood,
};

std::string_view to_string(ReductionClass c);

struct LocalReductionData {
    Integer v;
    KodairaSymbol kodaira;
    ReductionClass reduction_class = ReductionClass::Good;
    int c_v = 1;
    int val_delta_min = 0;
    int val_j_denominator = 0;
    int conductor_exponent = 0;

    bool multiplicative() const {
        return reduction_class == ReductionClass::SplitMultiplicative ||
               reduction_class == ReductionClass::NonsplitMultiplicative;
    }
    bool additive() const {
        return reduction_class == ReductionClass::AdditivePotentiallyGood ||
               reduction_class == ReductionClass::AdditivePotentiallyMultiplicative;
    }
};

LocalReductionData tate_algorithm(const CurveModel& model, const Integer& v);

/// Primes dividing the minimal discriminant, ascending.
std::vector<Integer> bad_primes(const CurveModel& model);

/// Local data at every bad prime, ascending.
std::vector<LocalReductionData> local_data(const CurveModel& model);

/// For each bad prime v != p: true iff p does not divide c_v.
std::map<Integer, bool> tamagawa_unit_check(const CurveModel& model, unsigned long p);
std::map<Integer, bool> tamagawa_unit_check(const std::vector<LocalReductionData>& data, unsigned long p);

struct TSetEntry {
    Integer v;
    std::string reason;
};

/// Bad primes v != p where E(Q_v^ur)[p] has rank one.
struct TSet {
    unsigned long p = 0;
    std::set<Integer> members;
    /// p = 3 only: additive primes whose membership could not be decided.
    std::set<Integer> provisional_members;
    /// One line per bad prime v != p explaining the decision.
    std::vector<TSetEntry> decisions;

    std::size_t upper_count() const { return members.size() + provisional_members.size(); }
    bool fully_empty() const { return members.empty() && provisional_members.empty(); }
};

TSet compute_t_set(const CurveModel& model, unsigned long p);
TSet compute_t_set(const std::vector<LocalReductionData>& data, unsigned long p);

}  // namespace shaclass
