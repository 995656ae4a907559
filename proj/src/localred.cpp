#include "shaclass/localred.hpp"

#include "shaclass/error.hpp"
#include "shaclass/factor.hpp"
#include "shaclass/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

namespace shaclass {

KodairaSymbol KodairaSymbol::parse(std::string_view text) {
    using F = Family;
    if (text == "II") return {F::II};
    if (text == "III") return {F::III};
    if (text == "IV") return {F::IV};
    if (text == "II*") return {F::IIstar};
    if (text == "III*") return {F::IIIstar};
    if (text == "IV*") return {F::IVstar};
    if (text.size() >= 2 && text[0] == 'I') {
        std::string_view rest = text.substr(1);
        bool star = !rest.empty() && rest.back() == '*';
        if (star) rest.remove_suffix(1);
        if (!rest.empty() && std::all_of(rest.begin(), rest.end(), [](char c) { return std::isdigit(c); }))
            return {star ? F::Istar : F::I, std::stoi(std::string(rest))};
    }
    throw Error(ErrorKind::InvalidInput, "unknown Kodaira symbol '" + std::string(text) + "'");
}

int KodairaSymbol::components() const {
    switch (family_) {
        case Family::I: return n_ == 0 ? 1 : n_;
        case Family::Istar: return n_ + 5;
        case Family::II: return 1;
        case Family::III: return 2;
        case Family::IV: return 3;
        case Family::IVstar: return 7;
        case Family::IIIstar: return 8;
        case Family::IIstar: return 9;
    }
    return 1;
}

std::string KodairaSymbol::to_string() const {
    switch (family_) {
        case Family::I: return "I" + std::to_string(n_);
        case Family::Istar: return "I" + std::to_string(n_) + "*";
        case Family::II: return "II";
        case Family::III: return "III";
        case Family::IV: return "IV";
        case Family::IVstar: return "IV*";
        case Family::IIIstar: return "III*";
        case Family::IIstar: return "II*";
    }
    return "?";
}

std::string_view to_string(ReductionClass c) {
    switch (c) {
        case ReductionClass::Good: return "Good";
        case ReductionClass::SplitMultiplicative: return "SplitMultiplicative";
        case ReductionClass::NonsplitMultiplicative: return "NonsplitMultiplicative";
        case ReductionClass::AdditivePotentiallyMultiplicative: return "AdditivePotentiallyMultiplicative";
        case ReductionClass::AdditivePotentiallyGood: return "AdditivePotentiallyGood";
    }
    return "?";
}

namespace {

struct Coeffs {
    Integer a1, a2, a3, a4, a6;

    // x = x' + r, y = y' + s x' + t
    void rst(const Integer& r, const Integer& s, const Integer& t) {
        Integer n1 = a1 + 2 * s;
        Integer n2 = a2 - s * a1 + 3 * r - s * s;
        Integer n3 = a3 + r * a1 + 2 * t;
        Integer n4 = a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t;
        Integer n6 = a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1;
        a1 = n1, a2 = n2, a3 = n3, a4 = n4, a6 = n6;
    }
};

class Local {
public:
    explicit Local(const Integer& p) : p_(p) {}

    int val(const Integer& x) const { return valuation(x, p_); }
    bool divides(const Integer& x) const { return mpz_divisible_p(x.get_mpz_t(), p_.get_mpz_t()) != 0; }
    Integer red(const Integer& x) const { return mod(x, p_); }
    Integer inv(const Integer& x) const { return inverse_mod(x, p_); }

    /// a X^2 + b X + c has a root in F_p.
    bool quadroots(const Integer& a, const Integer& b, const Integer& c) const {
        Integer A = red(a), B = red(b), C = red(c);
        if (A == 0) return B != 0 || C == 0;
        if (p_ == 2) {
            // roots 0 or 1
            return C == 0 || mod(A + B + C, p_) == 0;
        }
        return is_square_mod(B * B - 4 * A * C, p_);
    }

    /// Distinct roots in F_p of X^3 + b X^2 + c X + d.
    int cubicroots(const Integer& b, const Integer& c, const Integer& d) const {
        return count_roots_mod(Polynomial{d, c, b, 1}, p_);
    }

    const Integer& p() const { return p_; }

private:
    Integer p_;
};

}  // namespace

LocalReductionData tate_algorithm(const CurveModel& model, const Integer& v) {
    if (v < 2 || !is_probable_prime(v)) throw Error(ErrorKind::InvalidInput, "not a prime: " + to_string(v));
    const Local L(v);
    const Integer& p = v;
    const Integer half = p == 2 ? Integer(0) : Integer((p + 1) / 2);
    const Integer p2 = p * p, p3 = p2 * p, p4 = p2 * p2, p6 = p3 * p3;
    const auto& a = model.coefficients();
    Coeffs C{a[0], a[1], a[2], a[3], a[4]};

    LocalReductionData out;
    out.v = v;
    {
        const Invariants inv = compute_invariants(model);
        const int vj = valuation(inv.j, v);
        out.val_j_denominator = inv.j == 0 ? 0 : std::max(0, -vj);
    }

    for (;;) {
        const Invariants inv = compute_invariants(std::array<Integer, 5>{C.a1, C.a2, C.a3, C.a4, C.a6});
        const int vD = L.val(inv.discriminant);
        out.val_delta_min = vD;

        if (vD == 0) {
            out.kodaira = {KodairaSymbol::Family::I, 0};
            out.reduction_class = ReductionClass::Good;
            out.c_v = 1;
            out.conductor_exponent = 0;
            return out;
        }

        // Move the singular point of the reduction to (0, 0).
        Integer r, t;
        if (p == 2) {
            if (L.divides(inv.b2)) {
                r = L.red(C.a4);
                t = L.red(r * (1 + C.a2 + C.a4) + C.a6);
            } else {
                r = L.red(C.a3);
                t = L.red(r + C.a4);
            }
        } else if (p == 3) {
            r = L.divides(inv.b2) ? L.red(-inv.b6) : L.red(-inv.b2 * inv.b4);
            t = L.red(C.a1 * r + C.a3);
        } else {
            if (L.divides(inv.c4))
                r = L.red(-L.inv(12) * inv.b2);
            else
                r = L.red(-L.inv(12 * inv.c4) * (inv.c6 + inv.b2 * inv.c4));
            t = L.red(-half * (C.a1 * r + C.a3));
        }
        C.rst(r, 0, t);

        if (!L.divides(inv.c4)) {
            const bool split = p == 2 ? L.quadroots(1, C.a1, -C.a2) : is_square_mod(-inv.c6, p);
            out.kodaira = {KodairaSymbol::Family::I, vD};
            out.reduction_class = split ? ReductionClass::SplitMultiplicative : ReductionClass::NonsplitMultiplicative;
            out.c_v = split ? vD : (vD % 2 == 0 ? 2 : 1);
            out.conductor_exponent = 1;
            return out;
        }

        out.reduction_class = out.val_j_denominator > 0 ? ReductionClass::AdditivePotentiallyMultiplicative
                                                        : ReductionClass::AdditivePotentiallyGood;
        if (!L.divides(C.a3) || !L.divides(C.a4) || !L.divides(C.a6))
            throw Error(ErrorKind::InvalidInput, "Tate's algorithm: singular point not at origin");

        const Invariants moved = compute_invariants(std::array<Integer, 5>{C.a1, C.a2, C.a3, C.a4, C.a6});
        auto finish = [&](KodairaSymbol k, int c) {
            out.kodaira = k;
            out.c_v = c;
            out.conductor_exponent = vD - (k.components() - 1);
            return out;
        };
        using F = KodairaSymbol::Family;

        if (L.val(C.a6) < 2) return finish({F::II}, 1);
        if (L.val(moved.b8) < 3) return finish({F::III}, 2);
        if (L.val(moved.b6) < 3) return finish({F::IV}, L.quadroots(1, C.a3 / p, -C.a6 / p2) ? 3 : 1);

        // Arrange p | a1, a2; p^2 | a3, a4; p^3 | a6.
        Integer s;
        if (p == 2) {
            s = L.red(C.a2);
            t = p * L.red(C.a6 / p2);
        } else if (p == 3) {
            s = C.a1;
            t = C.a3;
        } else {
            s = -C.a1 * half;
            t = -C.a3 * half;
        }
        C.rst(0, s, t);

        const Integer b = C.a2 / p, c = C.a4 / p2, d = C.a6 / p3;
        const Integer w = 27 * d * d - b * b * c * c + 4 * b * b * b * d - 18 * b * c * d + 4 * c * c * c;
        const Integer x = 3 * c - b * b;
        const int sw = L.divides(w) ? (L.divides(x) ? 3 : 2) : 1;

        if (sw == 1) return finish({F::Istar, 0}, 1 + L.cubicroots(b, c, d));

        if (sw == 2) {
            // Double root of the cubic moved to 0.
            Integer tau;
            if (p == 2)
                tau = L.red(c);
            else if (p == 3)
                tau = L.red(b * c);
            else
                tau = L.red((b * c - 9 * d) * L.inv(2 * x));
            C.rst(p * tau, 0, 0);
            int ix = 3, iy = 3;
            Integer mx = p2, my = p2;
            int cv = 0;
            for (;;) {
                Integer a2t = C.a2 / p, a3t = C.a3 / my, a4t = C.a4 / (p * mx), a6t = C.a6 / (mx * my);
                if (!L.divides(a3t * a3t + 4 * a6t)) {
                    cv = L.quadroots(1, a3t, -a6t) ? 4 : 2;
                    break;
                }
                t = p == 2 ? my * L.red(a6t) : my * L.red(-a3t * half);
                C.rst(0, 0, t);
                my *= p;
                ++iy;
                a2t = C.a2 / p, a3t = C.a3 / my, a4t = C.a4 / (p * mx), a6t = C.a6 / (mx * my);
                if (!L.divides(a4t * a4t - 4 * a6t * a2t)) {
                    cv = L.quadroots(a2t, a4t, a6t) ? 4 : 2;
                    break;
                }
                r = p == 2 ? mx * L.red(a6t * a2t) : mx * L.red(-a4t * L.inv(2 * a2t));
                C.rst(r, 0, 0);
                mx *= p;
                ++ix;
            }
            return finish({F::Istar, ix + iy - 5}, cv);
        }

        // Triple root of the cubic moved to 0.
        Integer tau;
        if (p == 2)
            tau = L.red(b);
        else if (p == 3)
            tau = L.red(-d);
        else
            tau = L.red(-b * L.inv(3));
        C.rst(p * tau, 0, 0);

        Integer a3t = C.a3 / p2, a6t = C.a6 / p4;
        if (!L.divides(a3t * a3t + 4 * a6t)) return finish({F::IVstar}, L.quadroots(1, a3t, -a6t) ? 3 : 1);

        t = p == 2 ? p2 * L.red(a6t) : p2 * L.red(-a3t * half);
        C.rst(0, 0, t);
        if (L.val(C.a4) < 4) return finish({F::IIIstar}, 2);
        if (L.val(C.a6) < 6) return finish({F::IIstar}, 1);

        // Not minimal at p: scale down and start again.
        C.a1 /= p;
        C.a2 /= p2;
        C.a3 /= p3;
        C.a4 /= p4;
        C.a6 /= p6;
    }
}

std::vector<Integer> bad_primes(const CurveModel& model) {
    const Invariants inv = compute_invariants(minimal_model(model));
    std::vector<Integer> out;
    for (const PrimePower& pp : factor(inv.discriminant)) out.push_back(pp.prime);
    return out;
}

std::vector<LocalReductionData> local_data(const CurveModel& model) {
    const CurveModel minimal = minimal_model(model);
    std::vector<LocalReductionData> out;
    for (const Integer& v : bad_primes(minimal)) out.push_back(tate_algorithm(minimal, v));
    return out;
}

std::map<Integer, bool> tamagawa_unit_check(const std::vector<LocalReductionData>& data, unsigned long p) {
    std::map<Integer, bool> out;
    for (const auto& d : data) {
        if (d.v == p) continue;
        out[d.v] = d.c_v % static_cast<long>(p) != 0;
    }
    return out;
}

std::map<Integer, bool> tamagawa_unit_check(const CurveModel& model, unsigned long p) {
    return tamagawa_unit_check(local_data(model), p);
}

TSet compute_t_set(const std::vector<LocalReductionData>& data, unsigned long p) {
    TSet t;
    t.p = p;
    const std::string ps = std::to_string(p);
    for (const auto& d : data) {
        if (d.v == p || d.reduction_class == ReductionClass::Good) continue;
        const std::string vd = std::to_string(d.val_delta_min);
        if (d.multiplicative()) {
            if (d.val_delta_min % static_cast<long>(p) != 0) {
                t.members.insert(d.v);
                t.decisions.push_back({d.v, "multiplicative, " + ps + " does not divide ord_v(q) = " + vd +
                                                 ": E(Q_v^ur)[p] has rank one"});
            } else {
                t.decisions.push_back({d.v, "multiplicative, " + ps + " divides ord_v(q) = " + vd +
                                                 ": E(Q_v^ur)[p] has rank two"});
            }
        } else if (d.reduction_class == ReductionClass::AdditivePotentiallyMultiplicative) {
            t.decisions.push_back({d.v, "additive, potentially multiplicative: E[p]^{I_v} = 0"});
        } else if (p != 3) {
            t.decisions.push_back({d.v, "additive, potentially good: inertia image has order prime to p"});
        } else if (d.v != 2) {
            // Tame inertia acts through a cyclic group of order e = 12 / gcd(12, v(Delta)) whose
            // generator has eigenvalues of exact order e; the fixed space mod 3 is a line iff e = 3.
            const int e = 12 / std::gcd(12, d.val_delta_min);
            if (e == 3) {
                t.members.insert(d.v);
                t.decisions.push_back({d.v, "additive, potentially good, inertia of order 3 (v(Delta) = " + vd +
                                                 "): E(Q_v^ur)[3] has rank one"});
            } else {
                t.decisions.push_back({d.v, "additive, potentially good, inertia of order " + std::to_string(e) +
                                                 ": E(Q_v^ur)[3] = 0"});
            }
        } else if (d.val_delta_min % 4 != 0) {
            // Rank one forces the inertia image into a unipotent subgroup of order 3, hence good
            // reduction over a tame cubic extension, hence 4 | v(Delta).
            t.decisions.push_back({d.v, "additive at 2, v(Delta) = " + vd +
                                             " not divisible by 4: E(Q_2^ur)[3] has rank zero"});
        } else {
            t.provisional_members.insert(d.v);
            t.decisions.push_back({d.v, "additive at 2, v(Delta) = " + vd +
                                             ": rank of E(Q_2^ur)[3] undecided, counted provisionally"});
        }
    }
    return t;
}

TSet compute_t_set(const CurveModel& model, unsigned long p) { return compute_t_set(local_data(model), p); }

}  // namespace shaclass
