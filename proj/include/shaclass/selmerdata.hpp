#pragma once

// External arithmetic data (Mordell-Weil rank, Sha, torsion) and the
// resulting possible dimensions of the p-Selmer group.

#include "shaclass/curve.hpp"

#include <chrono>
#include <filesystem>
#include <map>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

namespace shaclass {

enum class Provenance { RemoteDatabase, LocalFixture, UserSupplied };
std::string_view to_string(Provenance p);
Provenance parse_provenance(std::string_view text);

struct ExternalCurveRecord {
    std::string label;
    std::optional<CurveModel> model;
    int mw_rank = 0;
    std::optional<Integer> sha_order;
    /// Explicitly recorded F_p-ranks of Sha[p], keyed by p.
    std::map<unsigned long, int> sha_p_ranks;
    std::vector<long> torsion_structure;
    Provenance provenance = Provenance::LocalFixture;
    std::string retrieved_at;
    std::string source;
    /// Fields replaced by user input.
    std::vector<std::string> overridden;

    /// Recorded rank, or 0 when the recorded Sha order is prime to p.
    std::optional<int> sha_p_rank(unsigned long p) const;
    /// dim E(Q)[p] from the torsion structure.
    int rational_p_torsion_dim(unsigned long p) const;

    friend bool operator==(const ExternalCurveRecord&, const ExternalCurveRecord&) = default;
};

/// Flat key-value form, keys sorted.
std::string serialize_record(const ExternalCurveRecord& record);
/// Throws SchemaDrift when required fields are missing or malformed.
ExternalCurveRecord parse_record(std::string_view text);

/// Cremona labels (11a1) and LMFDB labels (11.a2, also accepted as 11.a.2).
bool is_valid_label(std::string_view label);
bool is_lmfdb_label(std::string_view label);

enum class FetchMode { RemoteFirst, OfflineOnly };

/// OfflineOnly when SHACLASS_OFFLINE=1 is set, otherwise the requested mode.
FetchMode effective_mode(FetchMode requested);

/// Directory of "<label>.rec" files; concurrent readers, exclusive writer,
/// writes land through an atomic rename.
class CacheStore {
public:
    explicit CacheStore(std::filesystem::path directory);

    const std::filesystem::path& directory() const { return directory_; }
    std::optional<ExternalCurveRecord> load(const std::string& label) const;
    void store(const ExternalCurveRecord& record) const;
    /// Every record in the directory, sorted by label.
    std::vector<ExternalCurveRecord> load_all() const;

private:
    std::filesystem::path directory_;
    mutable std::shared_mutex mutex_;
};

struct RemoteConfig {
    std::string base_url = "https://www.lmfdb.org";
    std::chrono::seconds timeout{10};
    int retries = 1;
    std::chrono::milliseconds backoff{500};
};

struct SourceConfig {
    std::filesystem::path fixture_dir;
    std::optional<std::filesystem::path> cache_dir;
    RemoteConfig remote;
};

/// Fixture directory compiled into the library.
std::filesystem::path default_fixture_dir();
/// SHACLASS_CACHE_DIR, else $XDG_CACHE_HOME/shaclass, else $HOME/.cache/shaclass.
std::optional<std::filesystem::path> default_cache_dir();

/// One HTTPS GET against the curve database; throws NetworkError, NotFound or SchemaDrift.
ExternalCurveRecord fetch_remote(const std::string& label, const RemoteConfig& config);

class CurveDataSource {
public:
    explicit CurveDataSource(SourceConfig config);

    /// RemoteFirst queries the database and caches the answer; OfflineOnly reads
    /// the fixture directory, then the cache, and never opens a socket.
    ExternalCurveRecord fetch(const std::string& label, FetchMode mode) const;

    /// Local record whose model has the given minimal model.
    std::optional<ExternalCurveRecord> find_by_minimal_model(const CurveModel& minimal) const;

    const SourceConfig& config() const { return config_; }

private:
    SourceConfig config_;
    CacheStore fixtures_;
    std::optional<CacheStore> cache_;
};

ExternalCurveRecord fetch_curve_record(const std::string& label, FetchMode mode,
                                       const SourceConfig& config);

struct UserOverrides {
    std::optional<int> mw_rank;
    std::optional<Integer> sha_order;
    std::map<unsigned long, int> sha_p_ranks;

    bool empty() const { return !mw_rank && !sha_order && sha_p_ranks.empty(); }
};

/// User values win; each replaced field is listed in `overridden`.
ExternalCurveRecord apply_overrides(ExternalCurveRecord record, const UserOverrides& overrides);
/// Record built only from user input; requires mw_rank.
ExternalCurveRecord user_record(const std::string& label, const UserOverrides& overrides);

struct SelmerScenario {
    unsigned long p = 0;
    std::vector<int> possible_dims;
    /// One line per entry of possible_dims.
    std::vector<std::string> reasoning;
    /// Candidate F_p-ranks of Sha[p], aligned with possible_dims.
    std::vector<int> sha_ranks;
    int torsion_dim = 0;
    bool sha_finite_assumed = true;
};

/// Throws InsufficientData when neither a Sha order nor a Sha[p]-rank is known.
SelmerScenario selmer_rank_scenarios(const ExternalCurveRecord& record, unsigned long p, bool irreducible,
                                     bool sha_finite = true);

}  // namespace shaclass
