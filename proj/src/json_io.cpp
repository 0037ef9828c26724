#include "zsum/json_io.hpp"

#include <fstream>
#include <sstream>

#include "zsum/errors.hpp"

namespace zsum {

std::string format_name(OutputFormat f) {
    switch (f) {
        case OutputFormat::Json: return "json";
        case OutputFormat::Csv: return "csv";
        case OutputFormat::Text: return "text";
    }
    return "?";
}

OutputFormat format_from_name(const std::string& name) {
    if (name == "json") return OutputFormat::Json;
    if (name == "csv") return OutputFormat::Csv;
    if (name == "text") return OutputFormat::Text;
    throw SchemaError("unknown output format: " + name);
}

json group_spec_to_json(const GroupSpec& spec) {
    json j{{"family", family_name(spec.family)}, {"n", spec.n}};
    if (spec.family == Family::ModifiedDicyclic) j["s"] = spec.s;
    return j;
}

GroupSpec group_spec_from_json(const json& j) {
    if (!j.is_object() || !j.contains("family") || !j.contains("n"))
        throw SchemaError("group spec needs \"family\" and \"n\"");
    if (!j["family"].is_string() || !j["n"].is_number_integer())
        throw SchemaError("group spec: \"family\" must be a string, \"n\" an integer");
    GroupSpec spec;
    spec.family = family_from_name(j["family"].get<std::string>());
    spec.n = j["n"].get<int>();
    if (spec.family == Family::ModifiedDicyclic) {
        if (!j.contains("s") || !j["s"].is_number_integer())
            throw SchemaError("mdic group spec needs an integer \"s\"");
        spec.s = j["s"].get<int>();
    }
    return spec;
}

namespace {

// Groups built from raw tables carry no family spec; serialize what exists.
json group_field(const GroupTable& g) {
    return g.spec() ? group_spec_to_json(*g.spec()) : json();
}

}  // namespace

json sequence_to_json(const Sequence& s) {
    json terms = json::array();
    for (ElementId e = 0; e < static_cast<ElementId>(s.mult.size()); ++e)
        if (s.mult[e] > 0)
            terms.push_back(json{{"label", s.group->label(e)}, {"mult", s.mult[e]}});
    return json{{"group", group_field(*s.group)}, {"terms", terms}};
}

namespace {

// One factor of a '*'-separated label: a known single-character generator
// label, optionally raised via "^k".
ElementId parse_factor(const GroupTable& g, const std::string& factor) {
    auto caret = factor.find('^');
    std::string base = factor.substr(0, caret);
    ElementId base_id = g.element_by_label(base);  // UnknownLabel on miss
    if (caret == std::string::npos) return base_id;
    std::string expo = factor.substr(caret + 1);
    size_t used = 0;
    int k = 0;
    try {
        k = std::stoi(expo, &used);
    } catch (const std::exception&) {
        throw UnknownLabel("bad exponent in label factor: " + factor);
    }
    if (used != expo.size()) throw UnknownLabel("bad exponent in label factor: " + factor);
    return g.power(base_id, k);
}

}  // namespace

ElementId parse_label(const GroupTable& g, const std::string& label,
                      std::vector<std::string>* warnings) {
    ElementId e = 0;
    bool first = true;
    size_t pos = 0;
    while (pos <= label.size()) {
        size_t next = label.find('*', pos);
        std::string factor = label.substr(pos, next == std::string::npos ? next : next - pos);
        if (factor.empty()) throw UnknownLabel("empty factor in label: " + label);
        ElementId f = parse_factor(g, factor);
        e = first ? f : g.mul(e, f);
        first = false;
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    if (warnings && g.label(e) != label)
        warnings->push_back("label \"" + label + "\" normalized to \"" + g.label(e) + "\"");
    return e;
}

Sequence sequence_from_json(const json& j, const GroupTable& g,
                            std::vector<std::string>* warnings) {
    if (!j.is_object() || !j.contains("terms") || !j["terms"].is_array())
        throw SchemaError("sequence needs a \"terms\" array");
    if (j.contains("group") && !j["group"].is_null() && g.spec()) {
        GroupSpec file_spec = group_spec_from_json(j["group"]);
        const GroupSpec& want = *g.spec();
        if (file_spec.family != want.family || file_spec.n != want.n ||
            (want.family == Family::ModifiedDicyclic && file_spec.s != want.s))
            throw GroupMismatch("sequence group " + family_name(file_spec.family) + "(n=" +
                                std::to_string(file_spec.n) + ") does not match " +
                                family_name(want.family) + "(n=" + std::to_string(want.n) + ")");
    }
    Sequence s(g);
    for (const json& term : j["terms"]) {
        if (!term.is_object() || !term.contains("label") || !term["label"].is_string())
            throw SchemaError("each term needs a string \"label\"");
        int mult = 1;
        if (term.contains("mult")) {
            if (!term["mult"].is_number_integer())
                throw SchemaError("term \"mult\" must be an integer");
            mult = term["mult"].get<int>();
        }
        if (mult < 1) throw SchemaError("term \"mult\" must be >= 1");
        s.add(parse_label(g, term["label"].get<std::string>(), warnings), mult);
    }
    return s;
}

Sequence parse_sequence_file(const std::string& path, const GroupTable& g,
                             std::vector<std::string>* warnings) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw SchemaError(path + ": " + e.what());
    }
    return sequence_from_json(j, g, warnings);
}

json certificate_to_json(const Certificate& c) {
    json labels = json::array();
    for (ElementId e : c.terms) labels.push_back(c.group->label(e));
    return json{{"certificate", labels}, {"length", c.length()}};
}

json search_stats_to_json(const SearchStats& st) {
    return json{{"max_depth", st.max_depth},
                {"nodes", st.nodes},
                {"prunes", st.prunes},
                {"seed", st.seed}};
}

json invariant_report_to_json(const GroupTable& g, const InvariantReport& r) {
    json j{{"group", group_field(g)},
           {"kind", invariant_name(r.kind)},
           {"mode", mode_name(r.mode)},
           {"stats", search_stats_to_json(r.stats)}};
    j["computed"] = r.computed ? json(*r.computed) : json();
    j["predicted"] = r.predicted ? json(*r.predicted) : json();
    if (r.witness) j["witness"] = sequence_to_json(*r.witness)["terms"];
    if (r.universal_check_length) j["universal_check_length"] = *r.universal_check_length;
    if (r.mode == ComputeMode::Sampled) {
        j["samples"] = r.samples;
        j["counterexamples_found"] = r.counterexamples_found;
        j["unresolved"] = r.unresolved;
    }
    return j;
}

json inequality_report_to_json(const InequalityReport& r) {
    return json{{"egz_equality", r.egz_equality},
                {"egz_lower_ok", r.egz_lower_ok},
                {"equalities_apply", r.equalities_apply},
                {"gao_equality", r.gao_equality},
                {"gao_lower_ok", r.gao_lower_ok},
                {"have_all", r.have_all},
                {"ok", r.ok}};
}

json inverse_report_to_json(const GroupTable& g, const InverseReport& r) {
    auto seq_list = [](const std::vector<Sequence>& v) {
        json arr = json::array();
        for (const Sequence& s : v) arr.push_back(sequence_to_json(s)["terms"]);
        return arr;
    };
    json matched = json::array();
    for (const auto& [seq, w] : r.matched) {
        matched.push_back(json{{"sequence", sequence_to_json(seq)["terms"]},
                               {"witness",
                                json{{"alpha", g.label(w.alpha)},
                                     {"beta", g.label(w.beta)},
                                     {"t1", w.t1},
                                     {"t2", w.t2},
                                     {"t3", w.t3}}}});
    }
    return json{{"group", group_field(g)},
                {"which", normal_form_name(r.which)},
                {"forward_complete", r.forward_complete},
                {"enumerated", static_cast<long>(r.enumerated_orbit_reps.size())},
                {"matched", matched},
                {"unmatched_enumerated", seq_list(r.unmatched_enumerated)},
                {"characterized_but_not_free", seq_list(r.characterized_but_not_free)},
                {"backward_instances", r.backward_instances},
                {"stats", search_stats_to_json(r.stats)},
                {"verified", r.verified()}};
}

json extraction_result_to_json(const ExtractionResult& r) {
    json j = certificate_to_json(r.certificate);
    j["method"] = extract_method_name(r.method_used);
    j["branch_trace"] = r.branch_trace;
    return j;
}

namespace {

std::string scalar_to_csv(const json& v) {
    if (v.is_string()) {
        std::string s = v.get<std::string>();
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string out = "\"";
        for (char c : s) {
            if (c == '"') out += '"';
            out += c;
        }
        return out + "\"";
    }
    return v.dump();
}

}  // namespace

std::string emit_report(const json& report, OutputFormat f) {
    switch (f) {
        case OutputFormat::Json: return report.dump(2) + "\n";
        case OutputFormat::Csv: {
            std::string header, row;
            for (auto it = report.begin(); it != report.end(); ++it) {
                if (it->is_object() || it->is_array()) continue;
                if (!header.empty()) {
                    header += ',';
                    row += ',';
                }
                header += it.key();
                row += scalar_to_csv(*it);
            }
            return header + "\n" + row + "\n";
        }
        case OutputFormat::Text: {
            std::ostringstream out;
            for (auto it = report.begin(); it != report.end(); ++it)
                out << it.key() << ": " << (it->is_string() ? it->get<std::string>() : it->dump())
                    << "\n";
            return out.str();
        }
    }
    return {};
}

}  // namespace zsum
