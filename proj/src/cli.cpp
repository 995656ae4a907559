#include "shaclass/cli.hpp"

#include "shaclass/cohom.hpp"
#include "shaclass/engine.hpp"
#include "shaclass/error.hpp"
#include "shaclass/keyvalue.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <fstream>
#include <sstream>
#include <thread>

namespace shaclass {
namespace {

using nlohmann::ordered_json;

struct CommonOptions {
    std::string label;
    std::string curve;
    bool offline = false;
    std::string fixtures;
    std::string cache_dir;
    std::string endpoint;
};

struct AnalyzeOptions {
    CommonOptions common;
    std::vector<std::string> labels;
    std::string label_file;
    unsigned jobs = 4;
    unsigned long p = 0;
    bool assume_wild = false;
    bool assume_irreducible = false;
    bool sha_finite = true;
    unsigned long sample_bound = kDefaultSampleBound;
    std::string star_nonzero;
    std::string format = "text";
    std::string config_file;
    std::optional<int> mw_rank;
    std::string sha_order;
    std::optional<int> sha_p_rank;
};

void add_source_options(CLI::App* cmd, CommonOptions& o, bool with_inputs) {
    if (with_inputs) {
        auto* label = cmd->add_option("--label", o.label, "Cremona or LMFDB curve label");
        auto* curve = cmd->add_option("--curve", o.curve, "a1,a2,a3,a4,a6 or [A,B]");
        label->excludes(curve);
        curve->excludes(label);
    }
    cmd->add_flag("--offline", o.offline, "never contact the curve database");
    cmd->add_option("--fixtures", o.fixtures, "fixture directory");
    cmd->add_option("--cache-dir", o.cache_dir, "record cache directory");
    cmd->add_option("--endpoint", o.endpoint, "curve database base URL");
}

SourceConfig source_config(const CommonOptions& o) {
    SourceConfig config;
    config.fixture_dir = o.fixtures.empty() ? default_fixture_dir() : std::filesystem::path(o.fixtures);
    if (!o.cache_dir.empty())
        config.cache_dir = o.cache_dir;
    else
        config.cache_dir = default_cache_dir();
    if (!o.endpoint.empty()) config.remote.base_url = o.endpoint;
    return config;
}

FetchMode fetch_mode(const CommonOptions& o) {
    return effective_mode(o.offline ? FetchMode::OfflineOnly : FetchMode::RemoteFirst);
}

struct ResolvedCurve {
    AnalysisInput input;
};

UserOverrides overrides_of(const AnalyzeOptions& o) {
    UserOverrides u;
    u.mw_rank = o.mw_rank;
    if (!o.sha_order.empty()) u.sha_order = parse_integer(o.sha_order);
    if (o.sha_p_rank) u.sha_p_ranks[o.p] = *o.sha_p_rank;
    if (u.mw_rank && *u.mw_rank < 0) throw Error(ErrorKind::InvalidInput, "--mw-rank must be nonnegative");
    if (u.sha_order && *u.sha_order <= 0) throw Error(ErrorKind::InvalidInput, "--sha-order must be positive");
    if (o.sha_p_rank && *o.sha_p_rank < 0) throw Error(ErrorKind::InvalidInput, "--sha-p-rank must be nonnegative");
    return u;
}

AnalysisInput resolve(const std::string& label, const std::string& curve, const CommonOptions& common,
                      const UserOverrides& overrides) {
    const CurveDataSource source(source_config(common));
    if (!label.empty()) {
        ExternalCurveRecord record = source.fetch(label, fetch_mode(common));
        if (!record.model) throw Error(ErrorKind::SchemaDrift, "record for '" + label + "' has no model");
        CurveModel model = *record.model;
        if (!overrides.empty()) record = apply_overrides(std::move(record), overrides);
        return {label, model, record, ""};
    }
    if (curve.empty()) throw Error(ErrorKind::InvalidInput, "one of --label or --curve is required");
    CurveModel model = CurveModel::parse(curve);
    std::optional<ExternalCurveRecord> record = source.find_by_minimal_model(minimal_model(model));
    std::optional<std::string> found_label;
    std::string note;
    if (record) {
        found_label = record->label;
        if (!overrides.empty()) record = apply_overrides(std::move(*record), overrides);
    } else if (overrides.mw_rank) {
        record = user_record("user", overrides);
    } else {
        note = "no Mordell-Weil or Sha record for this model in the local stores; Selmer scenarios and bounds omitted";
    }
    return {found_label, model, record, note};
}

int exit_code_for(const Error& e, bool offline) {
    switch (e.kind()) {
        case ErrorKind::NetworkError:
        case ErrorKind::SchemaDrift: return kExitNetwork;
        case ErrorKind::NotFound: return offline ? kExitMissingFixture : kExitInvalidInput;
        case ErrorKind::IoError:
        case ErrorKind::FactorizationTooHard:
        case ErrorKind::LedgerNotApplicable: return kExitOther;
        default: return kExitInvalidInput;
    }
}

void apply_config(AnalyzeOptions& o, CLI::App* cmd) {
    if (o.config_file.empty()) return;
    std::ifstream in(o.config_file);
    if (!in) throw Error(ErrorKind::IoError, "cannot read config file " + o.config_file);
    std::stringstream buffer;
    buffer << in.rdbuf();
    const KeyValueDocument doc = KeyValueDocument::parse(buffer.str());
    for (const auto& [key, value] : doc.values()) {
        if (key == "galrep.sample_bound") {
            if (cmd->count("--sample-bound") == 0) {
                try {
                    o.sample_bound = std::stoul(value);
                } catch (const std::exception&) {
                    throw Error(ErrorKind::InvalidInput, "galrep.sample_bound must be a positive integer");
                }
            }
        } else if (key == "galrep.assume_wild_ramification") {
            if (cmd->count("--assume-wild-ramification") == 0) o.assume_wild = parse_bool(value);
        } else {
            throw Error(ErrorKind::InvalidInput, "unknown configuration key '" + key + "'");
        }
    }
}

AnalysisOptions analysis_options(const AnalyzeOptions& o) {
    AnalysisOptions a;
    a.p = o.p;
    a.assume_wild_ramification = o.assume_wild;
    a.assume_irreducible = o.assume_irreducible;
    a.assume_sha_finite = o.sha_finite;
    a.sample_bound = o.sample_bound;
    if (o.star_nonzero.empty())
        a.star_nonzero = TriState::Unknown;
    else
        a.star_nonzero = parse_bool(o.star_nonzero) ? TriState::True : TriState::False;
    return a;
}

void add_analysis_options(CLI::App* cmd, AnalyzeOptions& o) {
    cmd->add_option("-p,--p", o.p, "odd prime")->required();
    cmd->add_flag("--assume-wild-ramification", o.assume_wild, "assert that rho-bar is wildly ramified at p");
    cmd->add_flag("--assume-irreducible", o.assume_irreducible, "assert that E[p] is irreducible");
    cmd->add_flag("--sha-finite,!--no-sha-finite", o.sha_finite, "assume Sha[p^inf] finite (default on)");
    cmd->add_option("--sample-bound", o.sample_bound, "largest prime sampled by the image certifier");
    cmd->add_option("--star-nonzero", o.star_nonzero, "true|false: the local extension class at p");
    cmd->add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    cmd->add_option("--config", o.config_file, "key = value configuration file");
    cmd->add_option("--mw-rank", o.mw_rank, "override the Mordell-Weil rank");
    cmd->add_option("--sha-order", o.sha_order, "override the order of Sha");
    cmd->add_option("--sha-p-rank", o.sha_p_rank, "override the F_p-rank of Sha[p]");
}

std::string render(const ConclusionCertificate& c, const std::string& format) {
    return format == "json" ? render_json(c) : render_text(c);
}

int cmd_analyze(const AnalyzeOptions& o, std::ostream& out) {
    const UserOverrides overrides = overrides_of(o);
    const AnalysisInput input = resolve(o.common.label, o.common.curve, o.common, overrides);
    out << render(emit_certificate(input, analysis_options(o)), o.format);
    return kExitOk;
}

int cmd_batch(const AnalyzeOptions& o, std::ostream& out, std::ostream& err) {
    std::vector<std::string> labels = o.labels;
    if (!o.label_file.empty()) {
        std::ifstream in(o.label_file);
        if (!in) throw Error(ErrorKind::IoError, "cannot read " + o.label_file);
        for (std::string line; std::getline(in, line);) {
            line.erase(std::remove_if(line.begin(), line.end(), ::isspace), line.end());
            if (!line.empty() && line[0] != '#') labels.push_back(line);
        }
    }
    if (labels.empty()) throw Error(ErrorKind::InvalidInput, "batch needs --labels or --label-file");
    const UserOverrides overrides = overrides_of(o);
    const AnalysisOptions options = analysis_options(o);
    const bool offline = fetch_mode(o.common) == FetchMode::OfflineOnly;

    struct Slot {
        std::string rendered;
        std::string error;
        int code = kExitOk;
    };
    std::vector<Slot> slots(labels.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < labels.size();) {
            try {
                const AnalysisInput input = resolve(labels[i], "", o.common, overrides);
                slots[i].rendered = render(emit_certificate(input, options), o.format);
            } catch (const Error& e) {
                slots[i].error = e.what();
                slots[i].code = exit_code_for(e, offline);
            } catch (const std::exception& e) {
                slots[i].error = e.what();
                slots[i].code = kExitOther;
            }
        }
    };
    const unsigned jobs = std::max(1u, std::min<unsigned>(o.jobs, static_cast<unsigned>(labels.size())));
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    int code = kExitOk;
    if (o.format == "json") {
        ordered_json all = ordered_json::array();
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (slots[i].error.empty())
                all.push_back(ordered_json::parse(slots[i].rendered));
            else
                all.push_back({{"label", labels[i]}, {"error", slots[i].error}});
        }
        out << all.dump(2) << "\n";
    } else {
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (slots[i].error.empty())
                out << slots[i].rendered << "\n";
            else
                out << "Curve " << labels[i] << ": error: " << slots[i].error << "\n\n";
        }
    }
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (slots[i].error.empty()) continue;
        err << "shaclass: " << labels[i] << ": " << slots[i].error << "\n";
        if (code == kExitOk) code = slots[i].code;
    }
    return code;
}

int cmd_invariants(const CommonOptions& o, std::optional<unsigned long> p, std::ostream& out) {
    const AnalysisInput input = resolve(o.label, o.curve, o, {});
    const Invariants inv = compute_invariants(input.model);
    const MinimalModelResult min = minimal_model_with_transformation(input.model);
    out << "model: " << input.model.to_string() << "\n";
    out << "b2 = " << inv.b2 << "\nb4 = " << inv.b4 << "\nb6 = " << inv.b6 << "\nb8 = " << inv.b8 << "\n";
    out << "c4 = " << inv.c4 << "\nc6 = " << inv.c6 << "\ndiscriminant = " << inv.discriminant << "\n";
    out << "j = " << inv.j << "\n";
    out << "minimal model: " << min.model.to_string() << "\n";
    out << "transformation: u = " << min.transformation.u << ", r = " << min.transformation.r
        << ", s = " << min.transformation.s << ", t = " << min.transformation.t << "\n";
    out << "minimal discriminant = " << compute_invariants(min.model).discriminant << "\n";
    out << "bad primes:";
    for (const auto& v : bad_primes(min.model)) out << " " << v;
    out << "\n";
    const auto cm = detect_cm(inv.j);
    out << "CM: " << (cm ? "discriminant " + std::to_string(*cm) : std::string("none")) << "\n";
    if (p) {
        const GoodPrimeProfile profile = classify_good_prime(min.model, *p);
        out << "a_" << *p << " = " << profile.a_p << " (" << to_string(profile.reduction_kind) << ")\n";
        if (profile.alpha_p_mod_p) out << "alpha_p mod p = " << *profile.alpha_p_mod_p << "\n";
    }
    return kExitOk;
}

int cmd_tate(const CommonOptions& o, std::ostream& out) {
    const AnalysisInput input = resolve(o.label, o.curve, o, {});
    const CurveModel minimal = minimal_model(input.model);
    out << "minimal model: " << minimal.to_string() << "\n";
    out << "v\tkodaira\tclass\tc_v\tv(Delta)\tv(den j)\tf_v\n";
    Integer conductor = 1;
    for (const auto& d : local_data(minimal)) {
        out << d.v << "\t" << d.kodaira.to_string() << "\t" << to_string(d.reduction_class) << "\t" << d.c_v << "\t"
            << d.val_delta_min << "\t" << d.val_j_denominator << "\t" << d.conductor_exponent << "\n";
        conductor *= power(d.v, static_cast<unsigned long>(d.conductor_exponent));
    }
    out << "conductor = " << conductor << "\n";
    return kExitOk;
}

Mat2 parse_matrix(const std::string& text, std::uint32_t p) {
    std::array<long, 4> e{};
    std::stringstream in(text);
    std::string item;
    int n = 0;
    while (std::getline(in, item, ',')) {
        if (n == 4) break;
        e[n++] = parse_integer(item).get_si();
    }
    if (n != 4 || std::getline(in, item, ','))
        throw Error(ErrorKind::InvalidInput, "a matrix is four comma-separated residues a,b,c,d, got '" + text + "'");
    return reduce(e, p);
}

int cmd_cohomology(std::uint32_t p, const std::vector<std::string>& generator_text, int twist, bool shortcut,
                   std::optional<std::uint64_t> cyclic_order, std::size_t cap, std::ostream& out) {
    std::vector<Mat2> generators;
    for (const auto& chunk : generator_text) {
        std::stringstream in(chunk);
        std::string one;
        while (std::getline(in, one, ';'))
            if (!one.empty()) generators.push_back(parse_matrix(one, p));
    }
    const MatrixGroup group = close_group(generators, p, cap);
    const CohomologyResult r = compute_cohomology(group, Twist{twist}, shortcut);
    out << "p = " << p << "\n";
    out << "module: " << r.module_descriptor << "\n";
    out << "group order = " << group.order() << "\n";
    if (r.shortcut_scalar) out << "central scalar " << *r.shortcut_scalar << " acts nontrivially\n";
    out << "h0 = " << r.h0_dim << "\n";
    out << "h1 = " << r.h1_dim << "\n";
    if (cyclic_order) {
        if (generators.size() != 1) throw Error(ErrorKind::InvalidInput, "--cyclic-order needs exactly one generator");
        out << "h1 (cyclic formula) = " << h1_cyclic(generators[0], *cyclic_order, p) << "\n";
    }
    return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Hypothesis checks and class-group bounds for elliptic curves over Q"};
    app.require_subcommand(1);

    AnalyzeOptions analyze;
    auto* analyze_cmd = app.add_subcommand("analyze", "full certificate for one curve");
    add_source_options(analyze_cmd, analyze.common, true);
    add_analysis_options(analyze_cmd, analyze);

    AnalyzeOptions batch;
    auto* batch_cmd = app.add_subcommand("batch", "certificates for a list of labels");
    add_source_options(batch_cmd, batch.common, false);
    add_analysis_options(batch_cmd, batch);
    batch_cmd->add_option("--labels", batch.labels, "curve labels")->delimiter(',');
    batch_cmd->add_option("--label-file", batch.label_file, "file with one label per line");
    batch_cmd->add_option("--jobs", batch.jobs, "worker threads")->check(CLI::Range(1u, 256u));

    CommonOptions inv_opts;
    std::optional<unsigned long> inv_p;
    auto* inv_cmd = app.add_subcommand("invariants", "invariants, minimal model and a_p");
    add_source_options(inv_cmd, inv_opts, true);
    inv_cmd->add_option("-p,--p", inv_p, "prime for a_p");

    CommonOptions tate_opts;
    auto* tate_cmd = app.add_subcommand("tate", "Tate's algorithm at every bad prime");
    add_source_options(tate_cmd, tate_opts, true);

    std::uint32_t coh_p = 0;
    std::vector<std::string> coh_generators;
    int coh_twist = 0;
    bool coh_no_shortcut = false;
    std::optional<std::uint64_t> coh_order;
    std::size_t coh_cap = kDefaultGroupCap;
    auto* coh_cmd = app.add_subcommand("cohomology", "H^0 and H^1 of a matrix group on F_p^2");
    coh_cmd->add_option("-p,--p", coh_p, "prime")->required();
    coh_cmd->add_option("--generators", coh_generators, "matrices a,b,c,d separated by ';' or repeated")->required();
    coh_cmd->add_option("--det-twist", coh_twist, "twist the module by det^k");
    coh_cmd->add_flag("--no-shortcut", coh_no_shortcut, "always solve the cocycle system");
    coh_cmd->add_option("--cyclic-order", coh_order, "also apply the cyclic formula with this order");
    coh_cmd->add_option("--cap", coh_cap, "largest group order accepted");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInvalidInput;
    }

    bool offline = false;
    try {
        if (*analyze_cmd) {
            offline = fetch_mode(analyze.common) == FetchMode::OfflineOnly;
            if (analyze.common.label.empty() && analyze.common.curve.empty())
                throw Error(ErrorKind::InvalidInput, "one of --label or --curve is required");
            apply_config(analyze, analyze_cmd);
            return cmd_analyze(analyze, out);
        }
        if (*batch_cmd) {
            apply_config(batch, batch_cmd);
            return cmd_batch(batch, out, err);
        }
        if (*inv_cmd) {
            offline = fetch_mode(inv_opts) == FetchMode::OfflineOnly;
            return cmd_invariants(inv_opts, inv_p, out);
        }
        if (*tate_cmd) {
            offline = fetch_mode(tate_opts) == FetchMode::OfflineOnly;
            return cmd_tate(tate_opts, out);
        }
        if (*coh_cmd) return cmd_cohomology(coh_p, coh_generators, coh_twist, !coh_no_shortcut, coh_order, coh_cap, out);
    } catch (const Error& e) {
        err << "shaclass: " << e.what() << "\n";
        return exit_code_for(e, offline);
    } catch (const std::exception& e) {
        err << "shaclass: " << e.what() << "\n";
        return kExitOther;
    }
    return kExitOther;
}

}  // namespace shaclass
