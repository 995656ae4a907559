#include "shaclass/selmerdata.hpp"

#include "shaclass/error.hpp"
#include "shaclass/keyvalue.hpp"

#include <httplib.h>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <mutex>
#include <regex>
#include <sstream>
#include <thread>
#include <unistd.h>

#ifndef SHACLASS_DEFAULT_FIXTURE_DIR
#define SHACLASS_DEFAULT_FIXTURE_DIR "data/fixtures"
#endif

namespace shaclass {

namespace fs = std::filesystem;
using nlohmann::json;

std::string_view to_string(Provenance p) {
    switch (p) {
        case Provenance::RemoteDatabase: return "RemoteDatabase";
        case Provenance::LocalFixture: return "LocalFixture";
        case Provenance::UserSupplied: return "UserSupplied";
    }
    return "?";
}

Provenance parse_provenance(std::string_view text) {
    if (text == "RemoteDatabase") return Provenance::RemoteDatabase;
    if (text == "LocalFixture") return Provenance::LocalFixture;
    if (text == "UserSupplied") return Provenance::UserSupplied;
    throw Error(ErrorKind::SchemaDrift, "unknown provenance '" + std::string(text) + "'");
}

std::optional<int> ExternalCurveRecord::sha_p_rank(unsigned long p) const {
    if (auto it = sha_p_ranks.find(p); it != sha_p_ranks.end()) return it->second;
    if (sha_order && valuation(*sha_order, p) == 0) return 0;
    return std::nullopt;
}

int ExternalCurveRecord::rational_p_torsion_dim(unsigned long p) const {
    return static_cast<int>(std::count_if(torsion_structure.begin(), torsion_structure.end(),
                                          [p](long n) { return n % static_cast<long>(p) == 0; }));
}

namespace {

std::string join(const std::vector<long>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) out += (i ? "," : "") + std::to_string(values[i]);
    return out;
}

std::vector<long> split_longs(const std::string& text) {
    std::vector<long> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
        if (item.empty()) continue;
        try {
            std::size_t used = 0;
            long v = std::stol(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
            out.push_back(v);
        } catch (const std::exception&) {
            throw Error(ErrorKind::SchemaDrift, "malformed integer list '" + text + "'");
        }
    }
    return out;
}

int parse_small(const std::string& key, const std::string& text) {
    try {
        std::size_t used = 0;
        int v = std::stoi(text, &used);
        if (used == text.size() && v >= 0) return v;
    } catch (const std::exception&) {
    }
    throw Error(ErrorKind::SchemaDrift, "field '" + key + "' is not a nonnegative integer: '" + text + "'");
}

std::string utc_now() {
    std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string normalized_lmfdb_label(std::string_view label) {
    // 11.a.2 -> 11.a2
    static const std::regex three(R"((\d+)\.([a-z]+)\.(\d+))");
    std::string s(label);
    std::smatch m;
    if (std::regex_match(s, m, three)) return m[1].str() + "." + m[2].str() + m[3].str();
    return s;
}

Integer json_integer(const json& v, const std::string& field) {
    if (v.is_number_integer() || v.is_number_unsigned()) return Integer(v.dump());
    if (v.is_string()) {
        try {
            return parse_integer(v.get<std::string>());
        } catch (const Error&) {
        }
    }
    throw Error(ErrorKind::SchemaDrift, "field '" + field + "' is not an integer");
}

}  // namespace

std::string serialize_record(const ExternalCurveRecord& r) {
    KeyValueDocument doc;
    doc.set("label", r.label);
    if (r.model) {
        std::string a = r.model->to_string();
        doc.set("ainvs", a.substr(1, a.size() - 2));
    }
    doc.set("mw_rank", std::to_string(r.mw_rank));
    if (r.sha_order) doc.set("sha_order", r.sha_order->get_str());
    for (const auto& [p, rank] : r.sha_p_ranks) doc.set("sha_p_rank." + std::to_string(p), std::to_string(rank));
    doc.set("torsion_structure", join(r.torsion_structure));
    doc.set("provenance", std::string(to_string(r.provenance)));
    doc.set("retrieved_at", r.retrieved_at);
    if (!r.source.empty()) doc.set("source", r.source);
    if (!r.overridden.empty()) {
        std::string o;
        for (std::size_t i = 0; i < r.overridden.size(); ++i) o += (i ? "," : "") + r.overridden[i];
        doc.set("overridden", o);
    }
    return doc.serialize();
}

ExternalCurveRecord parse_record(std::string_view text) {
    KeyValueDocument doc;
    try {
        doc = KeyValueDocument::parse(text);
    } catch (const Error& e) {
        throw Error(ErrorKind::SchemaDrift, e.what());
    }
    auto need = [&](const std::string& key) {
        auto v = doc.get(key);
        if (!v) throw Error(ErrorKind::SchemaDrift, "record lacks field '" + key + "'");
        return *v;
    };
    ExternalCurveRecord r;
    r.label = need("label");
    r.mw_rank = parse_small("mw_rank", need("mw_rank"));
    if (auto a = doc.get("ainvs")) {
        try {
            r.model = CurveModel::parse(*a);
        } catch (const Error& e) {
            throw Error(ErrorKind::SchemaDrift, std::string("field 'ainvs': ") + e.what());
        }
    }
    if (auto s = doc.get("sha_order")) {
        try {
            r.sha_order = parse_integer(*s);
        } catch (const Error&) {
            throw Error(ErrorKind::SchemaDrift, "field 'sha_order' is not an integer");
        }
        if (*r.sha_order <= 0) throw Error(ErrorKind::SchemaDrift, "field 'sha_order' must be positive");
    }
    for (const auto& [key, value] : doc.values()) {
        static const std::string prefix = "sha_p_rank.";
        if (key.rfind(prefix, 0) != 0) continue;
        const int p = parse_small(key, key.substr(prefix.size()));
        r.sha_p_ranks[static_cast<unsigned long>(p)] = parse_small(key, value);
    }
    r.torsion_structure = split_longs(doc.get("torsion_structure").value_or(""));
    r.provenance = parse_provenance(need("provenance"));
    r.retrieved_at = need("retrieved_at");
    r.source = doc.get("source").value_or("");
    if (auto o = doc.get("overridden")) {
        std::stringstream in(*o);
        std::string item;
        while (std::getline(in, item, ',')) r.overridden.push_back(item);
    }
    for (const auto& [p, rank] : r.sha_p_ranks) {
        if (r.sha_order && rank > 0 && valuation(*r.sha_order, p) < rank)
            throw Error(ErrorKind::SchemaDrift, "Sha[" + std::to_string(p) + "] rank " + std::to_string(rank) +
                                                    " is incompatible with Sha order " + r.sha_order->get_str());
    }
    return r;
}

bool is_lmfdb_label(std::string_view label) {
    static const std::regex lmfdb(R"(\d+\.[a-z]+\.?\d+)");
    return std::regex_match(label.begin(), label.end(), lmfdb);
}

bool is_valid_label(std::string_view label) {
    static const std::regex cremona(R"([1-9]\d*[a-z]+\d+)");
    return std::regex_match(label.begin(), label.end(), cremona) || is_lmfdb_label(label);
}

FetchMode effective_mode(FetchMode requested) {
    if (const char* v = std::getenv("SHACLASS_OFFLINE"); v && std::string_view(v) == "1")
        return FetchMode::OfflineOnly;
    return requested;
}

CacheStore::CacheStore(fs::path directory) : directory_(std::move(directory)) {}

std::optional<ExternalCurveRecord> CacheStore::load(const std::string& label) const {
    if (!is_valid_label(label)) throw Error(ErrorKind::InvalidInput, "invalid curve label '" + label + "'");
    std::shared_lock lock(mutex_);
    const fs::path path = directory_ / (label + ".rec");
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_record(buffer.str());
}

void CacheStore::store(const ExternalCurveRecord& record) const {
    if (!is_valid_label(record.label))
        throw Error(ErrorKind::InvalidInput, "invalid curve label '" + record.label + "'");
    std::unique_lock lock(mutex_);
    std::error_code ec;
    fs::create_directories(directory_, ec);
    const fs::path target = directory_ / (record.label + ".rec");
    const fs::path temp = directory_ / (record.label + ".rec.tmp." + std::to_string(::getpid()));
    {
        std::ofstream out(temp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(ErrorKind::IoError, "cannot write " + temp.string());
        out << serialize_record(record);
        if (!out.flush()) throw Error(ErrorKind::IoError, "cannot write " + temp.string());
    }
    fs::rename(temp, target, ec);
    if (ec) throw Error(ErrorKind::IoError, "cannot move " + temp.string() + " into place: " + ec.message());
}

std::vector<ExternalCurveRecord> CacheStore::load_all() const {
    std::vector<std::string> labels;
    {
        std::shared_lock lock(mutex_);
        std::error_code ec;
        for (fs::directory_iterator it(directory_, ec), end; !ec && it != end; it.increment(ec)) {
            if (it->path().extension() != ".rec") continue;
            std::string label = it->path().stem().string();
            if (is_valid_label(label)) labels.push_back(label);
        }
    }
    std::sort(labels.begin(), labels.end());
    std::vector<ExternalCurveRecord> out;
    for (const auto& label : labels)
        if (auto r = load(label)) out.push_back(std::move(*r));
    return out;
}

fs::path default_fixture_dir() { return SHACLASS_DEFAULT_FIXTURE_DIR; }

std::optional<fs::path> default_cache_dir() {
    if (const char* v = std::getenv("SHACLASS_CACHE_DIR"); v && *v) return fs::path(v);
    if (const char* v = std::getenv("XDG_CACHE_HOME"); v && *v) return fs::path(v) / "shaclass";
    if (const char* v = std::getenv("HOME"); v && *v) return fs::path(v) / ".cache" / "shaclass";
    return std::nullopt;
}

ExternalCurveRecord fetch_remote(const std::string& label, const RemoteConfig& config) {
    if (!is_valid_label(label)) throw Error(ErrorKind::InvalidInput, "invalid curve label '" + label + "'");
    const bool lmfdb = is_lmfdb_label(label);
    const std::string field = lmfdb ? "lmfdb_label" : "Clabel";
    const std::string value = lmfdb ? normalized_lmfdb_label(label) : label;
    const std::string path = "/api/ec_curvedata/?" + field + "=" + value +
                             "&_format=json&_fields=Clabel,lmfdb_label,ainvs,rank,sha,torsion_structure";

    httplib::Client client(config.base_url);
    client.set_connection_timeout(config.timeout);
    client.set_read_timeout(config.timeout);
    client.set_follow_location(true);

    httplib::Result response;
    std::string failure;
    auto delay = config.backoff;
    for (int attempt = 0; attempt <= config.retries; ++attempt) {
        if (attempt > 0) {
            std::this_thread::sleep_for(delay);
            delay *= 2;
        }
        response = client.Get(path);
        if (!response) {
            failure = httplib::to_string(response.error());
            continue;
        }
        if (response->status == 404) throw Error(ErrorKind::NotFound, "no record for '" + label + "'");
        if (response->status >= 500) {
            failure = "HTTP status " + std::to_string(response->status);
            continue;
        }
        break;
    }
    if (!response || response->status >= 500)
        throw Error(ErrorKind::NetworkError, "curve database unreachable at " + config.base_url + ": " + failure);
    if (response->status != 200)
        throw Error(ErrorKind::NetworkError, "curve database answered HTTP " + std::to_string(response->status));

    json body;
    try {
        body = json::parse(response->body);
    } catch (const json::exception& e) {
        throw Error(ErrorKind::SchemaDrift, std::string("response is not JSON: ") + e.what());
    }
    if (!body.is_object() || !body.contains("data") || !body["data"].is_array())
        throw Error(ErrorKind::SchemaDrift, "response lacks a 'data' array");
    if (body["data"].empty()) throw Error(ErrorKind::NotFound, "no record for '" + label + "'");
    const json& row = body["data"][0];
    for (const char* f : {"ainvs", "rank", "sha", "torsion_structure"})
        if (!row.contains(f) || row[f].is_null())
            throw Error(ErrorKind::SchemaDrift, std::string("response lacks field '") + f + "'");
    if (!row["ainvs"].is_array() || row["ainvs"].size() != 5 || !row["torsion_structure"].is_array())
        throw Error(ErrorKind::SchemaDrift, "malformed 'ainvs' or 'torsion_structure'");

    ExternalCurveRecord r;
    r.label = label;
    std::array<Integer, 5> a;
    for (int i = 0; i < 5; ++i) a[i] = json_integer(row["ainvs"][i], "ainvs");
    try {
        r.model = CurveModel(a);
    } catch (const Error& e) {
        throw Error(ErrorKind::SchemaDrift, std::string("field 'ainvs': ") + e.what());
    }
    const Integer rank = json_integer(row["rank"], "rank");
    if (rank < 0 || rank > 1000) throw Error(ErrorKind::SchemaDrift, "field 'rank' out of range");
    r.mw_rank = static_cast<int>(rank.get_si());
    r.sha_order = json_integer(row["sha"], "sha");
    if (*r.sha_order <= 0) throw Error(ErrorKind::SchemaDrift, "field 'sha' must be positive");
    for (const auto& t : row["torsion_structure"]) r.torsion_structure.push_back(json_integer(t, "torsion_structure").get_si());
    r.provenance = Provenance::RemoteDatabase;
    r.retrieved_at = utc_now();
    r.source = config.base_url + "/api/ec_curvedata " + field + "=" + value;
    return r;
}

CurveDataSource::CurveDataSource(SourceConfig config) : config_(std::move(config)), fixtures_(config_.fixture_dir) {
    if (config_.cache_dir) cache_.emplace(*config_.cache_dir);
}

ExternalCurveRecord CurveDataSource::fetch(const std::string& label, FetchMode mode) const {
    if (!is_valid_label(label)) throw Error(ErrorKind::InvalidInput, "invalid curve label '" + label + "'");
    if (effective_mode(mode) == FetchMode::OfflineOnly) {
        if (auto r = fixtures_.load(label)) {
            r->provenance = Provenance::LocalFixture;
            return *r;
        }
        if (cache_)
            if (auto r = cache_->load(label)) return *r;
        throw Error(ErrorKind::NotFound, "no fixture or cached record for '" + label + "' (offline mode)");
    }
    ExternalCurveRecord r = fetch_remote(label, config_.remote);
    if (cache_) cache_->store(r);
    return r;
}

std::optional<ExternalCurveRecord> CurveDataSource::find_by_minimal_model(const CurveModel& minimal) const {
    auto search = [&](const CacheStore& store) -> std::optional<ExternalCurveRecord> {
        for (auto& r : store.load_all())
            if (r.model && minimal_model(*r.model) == minimal) return r;
        return std::nullopt;
    };
    if (auto r = search(fixtures_)) {
        r->provenance = Provenance::LocalFixture;
        return r;
    }
    if (cache_) return search(*cache_);
    return std::nullopt;
}

ExternalCurveRecord fetch_curve_record(const std::string& label, FetchMode mode, const SourceConfig& config) {
    return CurveDataSource(config).fetch(label, mode);
}

ExternalCurveRecord apply_overrides(ExternalCurveRecord record, const UserOverrides& o) {
    auto mark = [&](const std::string& field) {
        if (std::find(record.overridden.begin(), record.overridden.end(), field) == record.overridden.end())
            record.overridden.push_back(field);
    };
    if (o.mw_rank) {
        record.mw_rank = *o.mw_rank;
        mark("mw_rank");
    }
    if (o.sha_order) {
        record.sha_order = *o.sha_order;
        mark("sha_order");
    }
    for (const auto& [p, rank] : o.sha_p_ranks) {
        record.sha_p_ranks[p] = rank;
        mark("sha_p_rank." + std::to_string(p));
    }
    return record;
}

ExternalCurveRecord user_record(const std::string& label, const UserOverrides& overrides) {
    if (!overrides.mw_rank)
        throw Error(ErrorKind::InsufficientData, "a user-supplied record needs the Mordell-Weil rank");
    ExternalCurveRecord r;
    r.label = label;
    r.provenance = Provenance::UserSupplied;
    r.retrieved_at = "user";
    r.source = "command line";
    return apply_overrides(std::move(r), overrides);
}

SelmerScenario selmer_rank_scenarios(const ExternalCurveRecord& record, unsigned long p, bool irreducible,
                                     bool sha_finite) {
    SelmerScenario s;
    s.p = p;
    s.sha_finite_assumed = sha_finite;
    s.torsion_dim = irreducible ? 0 : record.rational_p_torsion_dim(p);
    const std::string ps = std::to_string(p);
    const std::string torsion_note =
        irreducible ? "" : " + dim E(Q)[" + ps + "] = " + std::to_string(s.torsion_dim) + " (irreducibility not certified)";
    auto add = [&](int r, const std::string& why) {
        s.sha_ranks.push_back(r);
        s.possible_dims.push_back(record.mw_rank + r + s.torsion_dim);
        s.reasoning.push_back("mw_rank " + std::to_string(record.mw_rank) + " + dim Sha[" + ps + "] " +
                              std::to_string(r) + torsion_note + ": " + why);
    };
    if (auto it = record.sha_p_ranks.find(p); it != record.sha_p_ranks.end()) {
        add(it->second, "Sha[" + ps + "] rank recorded");
        return s;
    }
    if (!record.sha_order)
        throw Error(ErrorKind::InsufficientData, "neither the order of Sha nor its " + ps + "-rank is known");
    const int k = valuation(*record.sha_order, p);
    if (k == 0) {
        add(0, ps + " does not divide #Sha = " + record.sha_order->get_str());
        return s;
    }
    for (int r = 1; r <= k; ++r) {
        if (sha_finite && r % 2 != 0) continue;
        std::string why = "v_" + ps + "(#Sha) = " + std::to_string(k) + " allows Sha[" + ps + "] of rank " +
                          std::to_string(r);
        if (sha_finite) why += " (even, Sha[" + ps + "^inf] finite)";
        add(r, why);
    }
    if (s.possible_dims.empty())
        throw Error(ErrorKind::InconsistentInputs, "an odd " + ps + "-adic valuation of #Sha contradicts finiteness");
    return s;
}

}  // namespace shaclass
