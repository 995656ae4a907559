#include "shaclass/engine.hpp"

#include "shaclass/error.hpp"

#include <algorithm>

namespace shaclass {

std::string_view to_string(TheoremId t) {
    switch (t) {
        case TheoremId::Main: return "Main";
        case TheoremId::Corollary: return "Corollary";
        case TheoremId::LemmaFin: return "LemmaFin";
        case TheoremId::MainConv: return "MainConv";
    }
    return "?";
}

std::string_view to_string(ConditionStatus s) {
    switch (s) {
        case ConditionStatus::Holds: return "Holds";
        case ConditionStatus::Fails: return "Fails";
        case ConditionStatus::Unknown: return "Unknown";
        case ConditionStatus::Assumed: return "Assumed";
    }
    return "?";
}

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::Yes: return "Yes";
        case Verdict::No: return "No";
        case Verdict::Unknown: return "Unknown";
    }
    return "?";
}

bool HypothesisLedger::applicable() const {
    return std::all_of(conditions.begin(), conditions.end(), [](const Condition& c) {
        return c.status == ConditionStatus::Holds || c.status == ConditionStatus::Assumed;
    });
}

const Condition& HypothesisLedger::condition(std::string_view id) const {
    for (const auto& c : conditions)
        if (c.id == id) return c;
    throw Error(ErrorKind::InvalidInput, "ledger has no condition '" + std::string(id) + "'");
}

const HypothesisLedger& ConclusionCertificate::ledger(TheoremId id) const {
    for (const auto& l : ledgers)
        if (l.theorem == id) return l;
    throw Error(ErrorKind::InvalidInput, "certificate has no ledger " + std::string(to_string(id)));
}

namespace {

constexpr const char* kGoodStatement = "E has good reduction at p";
constexpr const char* kWildMainStatement =
    "If E has ordinary reduction at p, a_p(E) = 1 mod p and E has no CM then rho-bar is wildly ramified at p";
constexpr const char* kWildConvStatement =
    "If E has ordinary reduction at p and a_p(E) != 1 mod p then E[p] is wildly ramified at p";
constexpr const char* kTamagawaStatement = "c_v(E) is a p-adic unit for every finite prime v != p";
constexpr const char* kIrreducibleStatement = "E[p] is an irreducible Gal(Qbar/Q)-module";

constexpr const char* kWildDiscrepancy =
    "Condition (b) reads 'a_p(E) != 1 mod p' here but 'a_p(E) = 1 mod p' in Main. The local argument needs wild "
    "ramification only when a_p(E) = 1 mod p: for a_p(E) != 1 mod p or supersingular reduction the unramified "
    "local cohomology at p vanishes unconditionally. It is therefore evaluated with the a_p(E) = 1 mod p trigger; "
    "the stated text is kept verbatim above.";

std::string residue_text(long a, unsigned long p) {
    long r = ((a % (long)p) + (long)p) % (long)p;
    return std::to_string(r);
}

Condition good_condition(const CurveModel& minimal, unsigned long p) {
    Condition c{"a", kGoodStatement, ConditionStatus::Holds, "", ""};
    const int v = minimal_discriminant_valuation(minimal, Integer(p));
    if (v == 0) {
        c.evidence = "v_" + std::to_string(p) + "(Delta_min) = 0";
    } else {
        c.status = ConditionStatus::Fails;
        c.evidence = "v_" + std::to_string(p) + "(Delta_min) = " + std::to_string(v);
    }
    return c;
}

Condition wild_condition(bool main_form, const std::optional<GoodPrimeProfile>& profile,
                         std::optional<WildRamificationStatus> wild) {
    Condition c{"b", main_form ? kWildMainStatement : kWildConvStatement, ConditionStatus::Unknown, "", ""};
    if (!profile || !wild) {
        c.evidence = "no good reduction at p";
        return c;
    }
    const std::string ap = "a_p = " + std::to_string(profile->a_p) + " = " + residue_text(profile->a_p, profile->p) +
                           " mod " + std::to_string(profile->p);
    switch (*wild) {
        case WildRamificationStatus::Vacuous:
            c.status = ConditionStatus::Holds;
            c.evidence = profile->reduction_kind == ReductionKind::Supersingular
                             ? "supersingular reduction, " + ap + " (Vacuous)"
                             : ap + ", not 1 (Vacuous)";
            break;
        case WildRamificationStatus::CMCase:
            if (main_form) {
                c.status = ConditionStatus::Holds;
                c.evidence = ap + ", CM curve (CMCase)";
            } else {
                c.evidence = ap + ", CM curve; wild ramification not established (CMCase)";
            }
            break;
        case WildRamificationStatus::AssumedByUser:
            c.status = ConditionStatus::Assumed;
            c.evidence = ap + ", wild ramification asserted by the user";
            c.assumption_flag = "--assume-wild-ramification";
            break;
        case WildRamificationStatus::Unknown:
            c.evidence = ap + ", no CM; wild ramification at p not established";
            break;
    }
    return c;
}

Condition tamagawa_condition(const std::map<Integer, bool>& units, unsigned long p) {
    Condition c{"c", kTamagawaStatement, ConditionStatus::Holds, "", ""};
    std::string evidence;
    for (const auto& [v, ok] : units) {
        if (!evidence.empty()) evidence += ", ";
        evidence += "v = " + v.get_str() + (ok ? ": unit" : ": divisible by " + std::to_string(p));
        if (!ok) c.status = ConditionStatus::Fails;
    }
    c.evidence = evidence.empty() ? "no bad primes other than p" : evidence;
    return c;
}

Condition irreducible_condition(const std::optional<ImageCertificate>& image, bool assume) {
    Condition c{"d", kIrreducibleStatement, ConditionStatus::Unknown, "", ""};
    if (image && image->status == ImageStatus::SurjectiveCertified) {
        c.status = ConditionStatus::Holds;
        c.evidence = "image SurjectiveCertified (" + std::to_string(image->witnesses.size()) + " Frobenius witnesses)";
        return c;
    }
    if (image && image->status == ImageStatus::SmallImageCertified) {
        c.status = ConditionStatus::Fails;
        c.evidence = "rational " + std::to_string(image->p) + "-torsion point with X = " +
                     image->reducibility_witness->get_str() + " on the short model";
        return c;
    }
    c.evidence = image ? "image Inconclusive up to " + std::to_string(image->sample_bound)
                       : "image not computed (bad reduction at p)";
    if (assume) {
        c.status = ConditionStatus::Assumed;
        c.assumption_flag = "--assume-irreducible";
        c.evidence += "; irreducibility asserted by the user";
    }
    return c;
}

void require_applicable(const HypothesisLedger& ledger, TheoremId expected) {
    if (ledger.theorem != expected)
        throw Error(ErrorKind::InvalidInput, "expected the " + std::string(to_string(expected)) + " ledger");
    if (!ledger.applicable())
        throw Error(ErrorKind::LedgerNotApplicable,
                    "the " + std::string(to_string(expected)) + " ledger is not applicable");
}

ConditionStatus aggregate(const HypothesisLedger& ledger) {
    bool assumed = false, unknown = false;
    for (const auto& c : ledger.conditions) {
        if (c.status == ConditionStatus::Fails) return ConditionStatus::Fails;
        unknown |= c.status == ConditionStatus::Unknown;
        assumed |= c.status == ConditionStatus::Assumed;
    }
    if (unknown) return ConditionStatus::Unknown;
    return assumed ? ConditionStatus::Assumed : ConditionStatus::Holds;
}

CorollaryResult corollary(const HypothesisLedger& main, const ExternalCurveRecord* record,
                          const SelmerScenario* selmer, const std::optional<std::vector<int>>& upper) {
    CorollaryResult out;
    out.ledger.theorem = TheoremId::Corollary;
    Condition hyp{"hypotheses", "E satisfies the hypotheses of Main", aggregate(main), "Main ledger", ""};
    if (hyp.status == ConditionStatus::Assumed) hyp.assumption_flag = "see Main ledger";
    out.ledger.conditions.push_back(hyp);

    Condition trigger{"trigger",
                      "rank Sha(E)[p] > 1, or Sha(E)[p] != 0 and Sha(E)[p^inf] is finite, or the Mordell-Weil rank "
                      "of E over Q is >= 2",
                      ConditionStatus::Unknown, "", ""};
    if (record && selmer) {
        int fired = 0;
        bool used_finiteness = false;
        std::string evidence;
        for (std::size_t i = 0; i < selmer->sha_ranks.size(); ++i) {
            const int r = selmer->sha_ranks[i];
            std::string why;
            if (record->mw_rank >= 2) {
                why = "mw_rank " + std::to_string(record->mw_rank) + " >= 2";
            } else if (r > 1) {
                why = "dim Sha[p] = " + std::to_string(r) + " > 1";
            } else if (r > 0 && selmer->sha_finite_assumed) {
                why = "Sha[p] != 0 with Sha[p^inf] finite";
                used_finiteness = true;
            }
            if (!evidence.empty()) evidence += "; ";
            evidence += "scenario dim Sha[p] = " + std::to_string(r) + ": " + (why.empty() ? "no clause" : why);
            if (!why.empty()) ++fired;
        }
        trigger.evidence = evidence;
        const int total = static_cast<int>(selmer->sha_ranks.size());
        if (fired == total && total > 0) {
            trigger.status = used_finiteness ? ConditionStatus::Assumed : ConditionStatus::Holds;
            if (used_finiteness) trigger.assumption_flag = "--sha-finite";
        } else if (fired == 0) {
            trigger.status = ConditionStatus::Fails;
        }
    } else {
        trigger.evidence = "no Mordell-Weil or Sha data";
    }
    out.ledger.conditions.push_back(trigger);

    if (out.ledger.applicable()) {
        out.verdict = Verdict::Yes;
        out.reason = "an unramified abelian extension of Q(E[p]) with Galois group E[p], Galois over Q, exists";
    } else if (upper && !upper->empty() &&
               std::all_of(upper->begin(), upper->end(), [](int u) { return u == 0; })) {
        out.verdict = Verdict::No;
        out.reason = "Hom_G(Cl_K/pCl_K, E[p]) = 0 in every scenario, so no such extension exists";
    } else {
        out.verdict = Verdict::Unknown;
        out.reason = "no clause of the statement applies";
    }
    return out;
}

}  // namespace

std::vector<HypothesisLedger> evaluate_hypotheses(const CurveModel& minimal, unsigned long p,
                                                  const std::optional<ImageCertificate>& image,
                                                  const std::optional<GoodPrimeProfile>& profile,
                                                  std::optional<WildRamificationStatus> wild,
                                                  const std::map<Integer, bool>& tamagawa_units,
                                                  const AnalysisOptions& options) {
    if (image && (image->curve != minimal.to_string() || image->p != p))
        throw Error(ErrorKind::InconsistentInputs,
                    "image certificate is for " + image->curve + " at p = " + std::to_string(image->p));
    if (profile && profile->p != p)
        throw Error(ErrorKind::InconsistentInputs, "good-prime profile is for p = " + std::to_string(profile->p));
    if (tamagawa_units.count(Integer(p)))
        throw Error(ErrorKind::InconsistentInputs, "Tamagawa check includes v = p");

    const Condition a = good_condition(minimal, p);
    const Condition c = tamagawa_condition(tamagawa_units, p);
    const Condition d = irreducible_condition(image, options.assume_irreducible);

    HypothesisLedger main{TheoremId::Main, {a, wild_condition(true, profile, wild), c, d}, {}};
    HypothesisLedger fin{TheoremId::LemmaFin, {a, wild_condition(false, profile, wild), c}, {kWildDiscrepancy}};
    HypothesisLedger conv{TheoremId::MainConv, {a, wild_condition(false, profile, wild), c, d}, {kWildDiscrepancy}};
    return {main, fin, conv};
}

std::vector<int> apply_lower_bound(const HypothesisLedger& main, const SelmerScenario& selmer) {
    require_applicable(main, TheoremId::Main);
    std::vector<int> out;
    for (int d : selmer.possible_dims) out.push_back(std::max(0, d - 1));
    return out;
}

std::vector<int> apply_upper_bound(const HypothesisLedger& mainconv, const SelmerScenario& selmer, const TSet& t_set) {
    require_applicable(mainconv, TheoremId::MainConv);
    std::vector<int> out;
    for (int d : selmer.possible_dims) out.push_back(d + static_cast<int>(t_set.upper_count()));
    return out;
}

CorollaryResult apply_corollary(const HypothesisLedger& main, const ExternalCurveRecord& record,
                                const SelmerScenario& selmer, const std::optional<std::vector<int>>& upper_bounds) {
    require_applicable(main, TheoremId::Main);
    return corollary(main, &record, &selmer, upper_bounds);
}

ConclusionCertificate emit_certificate(const AnalysisInput& input, const AnalysisOptions& options) {
    const unsigned long p = options.p;
    if (p < 3 || !is_small_prime(p)) throw Error(ErrorKind::InvalidInput, "p must be an odd prime");

    ConclusionCertificate cert;
    cert.label = input.label;
    cert.p = p;
    cert.input_model = input.model.to_string();
    const CurveModel minimal = minimal_model(input.model);
    cert.minimal_model = minimal.to_string();
    cert.invariants = compute_invariants(input.model);
    cert.minimal_discriminant = compute_invariants(minimal).discriminant;
    cert.cm_discriminant = detect_cm(cert.invariants.j);

    cert.local.data = local_data(minimal);
    cert.local.tamagawa_units = tamagawa_unit_check(cert.local.data, p);
    cert.local.t_set = compute_t_set(cert.local.data, p);
    cert.conductor = 1;
    for (const auto& d : cert.local.data) cert.conductor *= power(d.v, static_cast<unsigned long>(d.conductor_exponent));

    cert.good_reduction_at_p = !mpz_divisible_ui_p(cert.minimal_discriminant.get_mpz_t(), p);
    if (cert.good_reduction_at_p) {
        cert.profile = classify_good_prime(minimal, p);
        if (cert.profile->reduction_kind == ReductionKind::Ordinary)
            cert.shape = ordinary_shape(*cert.profile, options.star_nonzero);
        cert.image = certify_image(minimal, p, options.sample_bound);
        cert.wild = wild_ramification_status(*cert.profile, cert.cm_discriminant, options.assume_wild_ramification);
    }

    auto ledgers = evaluate_hypotheses(minimal, p, cert.image, cert.profile, cert.wild, cert.local.tamagawa_units,
                                       options);
    const HypothesisLedger& main = ledgers[0];
    const HypothesisLedger& conv = ledgers[2];

    cert.record = input.record;
    if (!cert.record && !input.record_note.empty()) cert.notes.push_back(input.record_note);
    if (cert.record) {
        const bool irreducible = main.condition("d").status == ConditionStatus::Holds ||
                                 main.condition("d").status == ConditionStatus::Assumed;
        try {
            cert.selmer = selmer_rank_scenarios(*cert.record, p, irreducible, options.assume_sha_finite);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::InsufficientData && e.kind() != ErrorKind::InconsistentInputs) throw;
            cert.notes.push_back(std::string("Selmer scenarios unavailable: ") + e.what());
        }
        if (cert.selmer && cert.selmer->torsion_dim > 0)
            cert.notes.push_back("E(Q)[p] contributes to the Selmer dimension because irreducibility is not established");
    }

    std::optional<std::vector<int>> lower, upper;
    if (cert.selmer) {
        if (main.applicable()) lower = apply_lower_bound(main, *cert.selmer);
        if (conv.applicable()) upper = apply_upper_bound(conv, *cert.selmer, cert.local.t_set);
        for (std::size_t i = 0; i < cert.selmer->possible_dims.size(); ++i) {
            ScenarioBound b;
            b.selmer_dim = cert.selmer->possible_dims[i];
            if (lower) b.lower_bound_hom = (*lower)[i];
            if (upper) b.upper_bound_hom = (*upper)[i];
            cert.bounds.push_back(b);
        }
        if (lower)
            cert.notes.push_back("lower bound: rank Ker(res_p^ur) >= dim Sel_p(E/Q) - 1, and res_K embeds "
                                 "Ker(res_p^ur) into Hom_G(Cl_K, E[p])");
        if (upper) {
            cert.notes.push_back("upper bound: rank Hom_G(Cl_K/pCl_K, E[p]) <= dim Sel_p(E/Q) + #T, provisional "
                                 "members of T included");
            cert.equality_note = cert.local.t_set.fully_empty();
            if (cert.equality_note)
                cert.notes.push_back("T is empty: Hom_G(Cl_K/pCl_K, E[p]) is isomorphic to R_p(E/Q), a subgroup of "
                                     "Sel_p(E/Q)");
        }
    }

    CorollaryResult cor = corollary(main, cert.record ? &*cert.record : nullptr, cert.selmer ? &*cert.selmer : nullptr,
                                    upper);
    cert.unramified_extension_exists = cor.verdict;
    cor.ledger.notes.push_back(cor.reason);

    cert.ledgers = {ledgers[0], cor.ledger, ledgers[1], ledgers[2]};

    if (options.assume_sha_finite && cert.selmer) cert.assumptions.push_back("Sha(E)[p^inf] is finite (--sha-finite)");
    if (cert.wild == WildRamificationStatus::AssumedByUser)
        cert.assumptions.push_back("rho-bar is wildly ramified at p (--assume-wild-ramification)");
    if (options.assume_irreducible && main.condition("d").status == ConditionStatus::Assumed)
        cert.assumptions.push_back("E[p] is irreducible (--assume-irreducible)");
    if (options.star_nonzero != TriState::Unknown)
        cert.assumptions.push_back(std::string("local extension class star nonzero: ") +
                                   std::string(to_string(options.star_nonzero)) + " (configuration)");
    if (cert.record)
        for (const auto& f : cert.record->overridden) cert.assumptions.push_back("user-supplied " + f);
    return cert;
}

}  // namespace shaclass
