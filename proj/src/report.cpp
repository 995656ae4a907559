#include "shaclass/engine.hpp"

#include <sstream>

namespace shaclass {

using nlohmann::ordered_json;

namespace {

ordered_json optional_string(const std::optional<std::string>& s) { return s ? ordered_json(*s) : ordered_json(); }

ordered_json integers(const std::set<Integer>& values) {
    ordered_json out = ordered_json::array();
    for (const auto& v : values) out.push_back(v.get_str());
    return out;
}

ordered_json ledger_json(const HypothesisLedger& l) {
    ordered_json out;
    out["theorem"] = to_string(l.theorem);
    out["applicable"] = l.applicable();
    out["conditions"] = ordered_json::array();
    for (const auto& c : l.conditions) {
        ordered_json j;
        j["id"] = c.id;
        j["statement"] = c.statement;
        j["status"] = to_string(c.status);
        j["evidence"] = c.evidence;
        if (!c.assumption_flag.empty()) j["assumption_flag"] = c.assumption_flag;
        out["conditions"].push_back(std::move(j));
    }
    out["notes"] = l.notes;
    return out;
}

ordered_json record_json(const ExternalCurveRecord& r) {
    ordered_json out;
    out["label"] = r.label;
    out["model"] = r.model ? ordered_json(r.model->to_string()) : ordered_json();
    out["mw_rank"] = r.mw_rank;
    out["sha_order"] = r.sha_order ? ordered_json(r.sha_order->get_str()) : ordered_json();
    ordered_json ranks = ordered_json::object();
    for (const auto& [p, rank] : r.sha_p_ranks) ranks[std::to_string(p)] = rank;
    out["sha_p_ranks"] = ranks;
    out["torsion_structure"] = r.torsion_structure;
    out["provenance"] = to_string(r.provenance);
    out["retrieved_at"] = r.retrieved_at;
    out["source"] = r.source;
    out["overridden"] = r.overridden;
    return out;
}

ordered_json image_json(const ImageCertificate& c) {
    ordered_json out;
    out["status"] = to_string(c.status);
    out["sample_bound"] = c.sample_bound;
    ordered_json ruled = ordered_json::array();
    for (auto m : c.ruled_out) ruled.push_back(to_string(m));
    out["ruled_out"] = ruled;
    out["determinant_surjective"] = c.determinant_surjective;
    out["first_unruled"] = c.first_unruled ? ordered_json(to_string(*c.first_unruled)) : ordered_json();
    out["reducibility_witness"] =
        c.reducibility_witness ? ordered_json("X = " + c.reducibility_witness->get_str()) : ordered_json();
    out["witnesses"] = ordered_json::array();
    for (const auto& w : c.witnesses) {
        ordered_json j;
        j["ell"] = w.ell;
        j["a_ell"] = w.a_ell;
        j["a_ell_mod_p"] = w.trace_mod_p;
        j["ell_mod_p"] = w.ell_mod_p;
        ordered_json rules = ordered_json::array();
        for (auto m : w.rules_out) rules.push_back(to_string(m));
        j["rules_out"] = rules;
        j["extends_determinant"] = w.extends_determinant;
        out["witnesses"].push_back(std::move(j));
    }
    return out;
}

}  // namespace

ordered_json to_json(const ConclusionCertificate& c) {
    ordered_json out;
    out["schema"] = kCertificateSchema;

    ordered_json input;
    input["label"] = optional_string(c.label);
    input["model"] = c.input_model;
    input["p"] = c.p;
    out["input"] = input;

    ordered_json curve;
    curve["minimal_model"] = c.minimal_model;
    curve["discriminant"] = c.invariants.discriminant.get_str();
    curve["minimal_discriminant"] = c.minimal_discriminant.get_str();
    curve["c4"] = c.invariants.c4.get_str();
    curve["c6"] = c.invariants.c6.get_str();
    curve["j"] = c.invariants.j.get_str();
    curve["conductor"] = c.conductor.get_str();
    curve["cm_discriminant"] = c.cm_discriminant ? ordered_json(*c.cm_discriminant) : ordered_json();
    out["curve"] = curve;

    ordered_json local = ordered_json::array();
    for (const auto& d : c.local.data) {
        ordered_json j;
        j["v"] = d.v.get_str();
        j["kodaira"] = d.kodaira.to_string();
        j["reduction_class"] = to_string(d.reduction_class);
        j["c_v"] = d.c_v;
        j["val_delta_min"] = d.val_delta_min;
        j["val_j_denominator"] = d.val_j_denominator;
        j["conductor_exponent"] = d.conductor_exponent;
        if (d.v != c.p) j["c_v_is_p_unit"] = c.local.tamagawa_units.at(d.v);
        local.push_back(std::move(j));
    }
    out["local_data"] = local;

    ordered_json at_p;
    at_p["good_reduction"] = c.good_reduction_at_p;
    if (c.profile) {
        at_p["a_p"] = c.profile->a_p;
        at_p["reduction_kind"] = to_string(c.profile->reduction_kind);
        at_p["alpha_p_mod_p"] = c.profile->alpha_p_mod_p ? ordered_json(*c.profile->alpha_p_mod_p) : ordered_json();
    }
    if (c.shape) {
        ordered_json s;
        s["psi_frobenius_eigenvalue"] = c.shape->psi_frobenius_eigenvalue;
        s["kernel_character"] = c.shape->kernel_character_note;
        s["star_nonzero"] = to_string(c.shape->star_nonzero);
        at_p["ordinary_shape"] = s;
    }
    at_p["wild_ramification"] = c.wild ? ordered_json(to_string(*c.wild)) : ordered_json();
    out["prime_p"] = at_p;

    out["image"] = c.image ? image_json(*c.image) : ordered_json();

    out["ledgers"] = ordered_json::array();
    for (const auto& l : c.ledgers) out["ledgers"].push_back(ledger_json(l));

    ordered_json t;
    t["members"] = integers(c.local.t_set.members);
    t["provisional_members"] = integers(c.local.t_set.provisional_members);
    t["count_for_bound"] = c.local.t_set.upper_count();
    t["decisions"] = ordered_json::array();
    for (const auto& d : c.local.t_set.decisions) t["decisions"].push_back({{"v", d.v.get_str()}, {"reason", d.reason}});
    out["t_set"] = t;

    out["record"] = c.record ? record_json(*c.record) : ordered_json();

    if (c.selmer) {
        ordered_json s;
        s["possible_dims"] = c.selmer->possible_dims;
        s["sha_p_ranks"] = c.selmer->sha_ranks;
        s["torsion_dim"] = c.selmer->torsion_dim;
        s["sha_finite_assumed"] = c.selmer->sha_finite_assumed;
        s["reasoning"] = c.selmer->reasoning;
        out["selmer"] = s;
    } else {
        out["selmer"] = nullptr;
    }

    out["bounds"] = ordered_json::array();
    for (const auto& b : c.bounds) {
        ordered_json j;
        j["selmer_dim"] = b.selmer_dim;
        j["lower_bound_hom"] = b.lower_bound_hom ? ordered_json(*b.lower_bound_hom) : ordered_json();
        j["upper_bound_hom"] = b.upper_bound_hom ? ordered_json(*b.upper_bound_hom) : ordered_json();
        out["bounds"].push_back(std::move(j));
    }
    out["unramified_extension_exists"] = to_string(c.unramified_extension_exists);
    out["equality_note"] = c.equality_note;
    out["assumptions"] = c.assumptions;
    out["notes"] = c.notes;
    return out;
}

std::string render_json(const ConclusionCertificate& c) { return to_json(c).dump(2) + "\n"; }

namespace {

std::string scalar_text(const ordered_json& v) {
    if (v.is_null()) return "-";
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

bool is_flat(const ordered_json& v) {
    if (!v.is_array()) return !v.is_object();
    for (const auto& x : v)
        if (x.is_array() || x.is_object()) return false;
    return true;
}

void walk(std::ostringstream& out, const ordered_json& node, int depth) {
    const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
    for (auto it = node.begin(); it != node.end(); ++it) {
        const ordered_json& v = it.value();
        if (is_flat(v)) {
            out << pad << it.key() << ": ";
            if (v.is_array()) {
                out << "[";
                for (std::size_t i = 0; i < v.size(); ++i) out << (i ? ", " : "") << scalar_text(v[i]);
                out << "]";
            } else {
                out << scalar_text(v);
            }
            out << "\n";
        } else if (v.is_object()) {
            out << pad << it.key() << ":\n";
            walk(out, v, depth + 1);
        } else {
            out << pad << it.key() << ":\n";
            for (const auto& item : v) {
                if (item.is_object()) {
                    out << pad << "  -\n";
                    walk(out, item, depth + 2);
                } else {
                    out << pad << "  - " << scalar_text(item) << "\n";
                }
            }
        }
    }
}

}  // namespace

std::string render_text(const ConclusionCertificate& c) {
    std::ostringstream out;
    out << "Curve " << (c.label ? *c.label + " " : "") << c.minimal_model << ", p = " << c.p << "\n";
    for (const auto& l : c.ledgers)
        out << "  " << to_string(l.theorem) << ": " << (l.applicable() ? "applicable" : "not applicable") << "\n";
    for (const auto& b : c.bounds) {
        out << "  dim Sel_p = " << b.selmer_dim << ": ";
        out << (b.lower_bound_hom ? std::to_string(*b.lower_bound_hom) : "?") << " <= rank Hom_G(Cl_K/pCl_K, E[p]) <= "
            << (b.upper_bound_hom ? std::to_string(*b.upper_bound_hom) : "?") << "\n";
    }
    out << "  unramified extension with group E[p]: " << to_string(c.unramified_extension_exists) << "\n\n";
    walk(out, to_json(c), 0);
    return out.str();
}

}  // namespace shaclass
