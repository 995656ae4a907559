#pragma once

// Hypothesis ledgers and the conclusion certificate.

#include "shaclass/curve.hpp"
#include "shaclass/galrep.hpp"
#include "shaclass/localred.hpp"
#include "shaclass/selmerdata.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace shaclass {

enum class TheoremId { Main, Corollary, LemmaFin, MainConv };
enum class ConditionStatus { Holds, Fails, Unknown, Assumed };

std::string_view to_string(TheoremId t);
std::string_view to_string(ConditionStatus s);

struct Condition {
    std::string id;
    std::string statement;
    ConditionStatus status = ConditionStatus::Unknown;
    std::string evidence;
    /// Source flag of an Assumed status.
    std::string assumption_flag;
};

struct HypothesisLedger {
    TheoremId theorem = TheoremId::Main;
    std::vector<Condition> conditions;
    std::vector<std::string> notes;

    bool applicable() const;
    const Condition& condition(std::string_view id) const;
};

/// Per-prime local facts the ledgers consume.
struct LocalSummary {
    std::vector<LocalReductionData> data;
    std::map<Integer, bool> tamagawa_units;
    TSet t_set;
};

struct AnalysisOptions {
    unsigned long p = 5;
    bool assume_wild_ramification = false;
    bool assume_irreducible = false;
    bool assume_sha_finite = true;
    unsigned long sample_bound = kDefaultSampleBound;
    TriState star_nonzero = TriState::Unknown;
};

/// Main, LemmaFin and MainConv ledgers. Throws InconsistentInputs when the
/// certificates were computed for a different curve or prime.
std::vector<HypothesisLedger> evaluate_hypotheses(const CurveModel& minimal, unsigned long p,
                                                  const std::optional<ImageCertificate>& image,
                                                  const std::optional<GoodPrimeProfile>& profile,
                                                  std::optional<WildRamificationStatus> wild,
                                                  const std::map<Integer, bool>& tamagawa_units,
                                                  const AnalysisOptions& options);

struct ScenarioBound {
    int selmer_dim = 0;
    std::optional<int> lower_bound_hom;
    std::optional<int> upper_bound_hom;
};

/// max(0, d - 1) per scenario; throws LedgerNotApplicable.
std::vector<int> apply_lower_bound(const HypothesisLedger& main, const SelmerScenario& selmer);

/// d + #members + #provisional per scenario; throws LedgerNotApplicable.
std::vector<int> apply_upper_bound(const HypothesisLedger& mainconv, const SelmerScenario& selmer, const TSet& t_set);

enum class Verdict { Yes, No, Unknown };
std::string_view to_string(Verdict v);

struct CorollaryResult {
    Verdict verdict = Verdict::Unknown;
    HypothesisLedger ledger;
    std::string reason;
};

/// Yes when every scenario has dim Sha[p] > 1, or Sha[p] != 0 with Sha[p^inf]
/// finite, or mw_rank >= 2. No only when every upper bound is 0.
/// Throws LedgerNotApplicable when the Main ledger is not applicable.
CorollaryResult apply_corollary(const HypothesisLedger& main, const ExternalCurveRecord& record,
                                const SelmerScenario& selmer,
                                const std::optional<std::vector<int>>& upper_bounds = std::nullopt);

struct ConclusionCertificate {
    std::optional<std::string> label;
    std::string input_model;
    std::string minimal_model;
    unsigned long p = 0;
    Invariants invariants;
    Integer minimal_discriminant;
    Integer conductor;
    std::optional<long> cm_discriminant;
    LocalSummary local;
    bool good_reduction_at_p = false;
    std::optional<GoodPrimeProfile> profile;
    std::optional<OrdinaryShape> shape;
    std::optional<ImageCertificate> image;
    std::optional<WildRamificationStatus> wild;
    std::vector<HypothesisLedger> ledgers;  // Main, Corollary, LemmaFin, MainConv
    std::optional<ExternalCurveRecord> record;
    std::optional<SelmerScenario> selmer;
    std::vector<ScenarioBound> bounds;
    Verdict unramified_extension_exists = Verdict::Unknown;
    bool equality_note = false;
    std::vector<std::string> assumptions;
    std::vector<std::string> notes;

    const HypothesisLedger& ledger(TheoremId id) const;
};

inline constexpr std::string_view kCertificateSchema = "shaclass.certificate/1";

struct AnalysisInput {
    std::optional<std::string> label;
    CurveModel model;
    std::optional<ExternalCurveRecord> record;
    /// Why the record is absent, when it is.
    std::string record_note;
};

/// Runs the whole pipeline; partial results stay absent rather than failing.
ConclusionCertificate emit_certificate(const AnalysisInput& input, const AnalysisOptions& options);

nlohmann::ordered_json to_json(const ConclusionCertificate& certificate);
std::string render_json(const ConclusionCertificate& certificate);
std::string render_text(const ConclusionCertificate& certificate);

}  // namespace shaclass
