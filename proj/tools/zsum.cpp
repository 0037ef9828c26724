#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>
#include <random>

#include "zsum/json_io.hpp"
#include "zsum/subproduct.hpp"

using namespace zsum;

namespace {

// Exit codes: 0 verified, 1 mismatch/counterexample, 2 budget exhausted,
// 3 input error.
constexpr int kOk = 0;
constexpr int kMismatch = 1;
constexpr int kBudget = 2;
constexpr int kInputError = 3;

struct Config {
    std::string family = "mdic";
    int n = 8;
    int s = 0;
    std::string mode = "exhaustive";
    int jobs = 1;
    uint64_t budget_nodes = 0;  // 0 = unlimited
    std::string checkpoint;
    uint64_t seed = 0;
    std::string format = "json";
    long samples = 100000;
};

void add_common_flags(CLI::App* cmd, Config& cfg) {
    cmd->add_option("--family", cfg.family, "group family: mdic|cyclic|dicyclic|c2xc2n");
    cmd->add_option("--n", cfg.n, "family parameter n");
    cmd->add_option("--s", cfg.s, "mdic parameter s (s^2 = 1 mod n, s != +-1)");
    cmd->add_option("--jobs", cfg.jobs, "worker threads");
    cmd->add_option("--budget-nodes", cfg.budget_nodes, "search node budget (0 = unlimited)");
    cmd->add_option("--checkpoint", cfg.checkpoint, "checkpoint file for long searches");
    cmd->add_option("--seed", cfg.seed, "RNG seed, recorded in the report");
    cmd->add_option("--format", cfg.format, "report format: json|csv|text");
}

void apply_env_overrides(Config& cfg, const CLI::App& cmd) {
    // Environment overrides apply only where no explicit flag was given.
    if (const char* v = std::getenv("ZSUM_BUDGET_NODES");
        v && cmd.count("--budget-nodes") == 0)
        cfg.budget_nodes = std::strtoull(v, nullptr, 10);
    if (const char* v = std::getenv("ZSUM_JOBS"); v && cmd.count("--jobs") == 0)
        cfg.jobs = std::atoi(v);
}

GroupSpec spec_of(const Config& cfg) {
    GroupSpec spec{family_from_name(cfg.family), cfg.n, cfg.s};
    if (spec.family == Family::ModifiedDicyclic && cfg.s == 0) {
        // pick the least valid s as a convenience default
        auto valid = GroupSpec::valid_s_values(spec.n);
        if (!valid.empty()) spec.s = valid.front();
    }
    return spec;
}

SearchOptions options_of(const Config& cfg) {
    SearchOptions opts;
    if (cfg.budget_nodes > 0) opts.node_budget = cfg.budget_nodes;
    opts.jobs = cfg.jobs;
    opts.seed = cfg.seed;
    opts.checkpoint_path = cfg.checkpoint;
    return opts;
}

json config_json(const Config& cfg, const GroupSpec& spec) {
    return json{{"budget_nodes", cfg.budget_nodes},
                {"group", group_spec_to_json(spec)},
                {"jobs", cfg.jobs},
                {"mode", cfg.mode},
                {"seed", cfg.seed}};
}

void print_report(json report, const Config& cfg, const GroupSpec& spec) {
    report["config"] = config_json(cfg, spec);
    std::cout << emit_report(report, format_from_name(cfg.format));
}

int run_group_info(const Config& cfg) {
    GroupSpec spec = spec_of(cfg);
    GroupTable g = GroupTable::build(spec);
    json labels = json::array();
    for (ElementId e = 0; e < g.order(); ++e) labels.push_back(g.label(e));
    json report{{"abelian", g.is_abelian()},
                {"exponent", g.exponent()},
                {"labels", labels},
                {"order", g.order()}};
    if (spec.family == Family::ModifiedDicyclic) {
        json valid = json::array();
        for (int s : GroupSpec::valid_s_values(spec.n)) valid.push_back(s);
        report["valid_s"] = valid;
        report["n1"] = spec.n1();
        report["n2"] = spec.n2();
    }
    print_report(std::move(report), cfg, spec);
    return kOk;
}

int run_invariant(const Config& cfg, const std::string& which) {
    GroupSpec spec = spec_of(cfg);
    GroupTable g = GroupTable::build(spec);
    InvariantKind kind = invariant_from_name(which);
    ComputeMode mode = mode_from_name(cfg.mode);
    std::cerr << "computing " << which << " over " << cfg.family << "(n=" << spec.n
              << ") in " << mode_name(mode) << " mode\n";
    InvariantReport r = compute_invariant(g, kind, mode, options_of(cfg), cfg.samples);
    std::cerr << "nodes " << r.stats.nodes << ", prunes " << r.stats.prunes << "\n";
    print_report(invariant_report_to_json(g, r), cfg, spec);
    if (r.mode == ComputeMode::Sampled && r.counterexamples_found > 0) return kMismatch;
    if (r.computed && r.predicted && *r.computed != *r.predicted) return kMismatch;
    return kOk;
}

int run_main_theorem(const Config& cfg) {
    GroupSpec spec = spec_of(cfg);
    if (spec.family != Family::ModifiedDicyclic)
        throw InvalidParams("verify main-theorem applies to --family mdic");
    GroupTable g = GroupTable::build(spec);
    ComputeMode mode = mode_from_name(cfg.mode);
    std::vector<InvariantReport> reports;
    json per_kind = json::object();
    bool all_match = true;
    for (InvariantKind kind : {InvariantKind::SmallDavenport, InvariantKind::Eta,
                               InvariantKind::EGZ, InvariantKind::Gao}) {
        std::cerr << "computing " << invariant_name(kind) << "...\n";
        InvariantReport r = compute_invariant(g, kind, mode, options_of(cfg), cfg.samples);
        bool match = r.mode == ComputeMode::Sampled
                         ? r.counterexamples_found == 0
                         : r.computed && r.predicted && *r.computed == *r.predicted;
        all_match = all_match && match;
        per_kind[invariant_name(kind)] = invariant_report_to_json(g, r);
        reports.push_back(std::move(r));
    }
    InequalityReport ineq = verify_inequalities(g, reports);
    bool verified = all_match && ineq.ok;
    print_report(json{{"inequalities", inequality_report_to_json(ineq)},
                      {"invariants", per_kind},
                      {"verified", verified}},
                 cfg, spec);
    return verified ? kOk : kMismatch;
}

int run_inverse(const Config& cfg, const std::string& which) {
    GroupSpec spec = spec_of(cfg);
    GroupTable g = GroupTable::build(spec);
    InverseReport r = verify_inverse_theorem(g, normal_form_from_name(which), options_of(cfg));
    std::cerr << "enumerated " << r.enumerated_orbit_reps.size() << " orbit reps, "
              << r.backward_instances << " characterized instances\n";
    print_report(inverse_report_to_json(g, r), cfg, spec);
    if (r.verified()) return kOk;
    if (!r.forward_complete && r.unmatched_enumerated.empty() &&
        r.characterized_but_not_free.empty())
        return kBudget;
    return kMismatch;
}

int run_extract(const Config& cfg, const std::string& method, const std::string& input,
                int random_length) {
    GroupSpec spec = spec_of(cfg);
    GroupTable g = GroupTable::build(spec);
    Sequence s(g);
    if (!input.empty()) {
        std::vector<std::string> warnings;
        s = parse_sequence_file(input, g, &warnings);
        for (const std::string& w : warnings) std::cerr << "warning: " << w << "\n";
    } else {
        int len = random_length > 0 ? random_length : 2 * spec.n;
        std::mt19937_64 rng(cfg.seed);
        for (int i = 0; i < len; ++i)
            s.add(static_cast<ElementId>(rng() % g.order()));
        std::cerr << "input: random length-" << len << " sequence, seed " << cfg.seed << "\n";
    }
    ExtractionResult r = extract_n_product_one(g, s, extract_method_from_name(method),
                                               1ull << 22, cfg.seed);
    json report = extraction_result_to_json(r);
    report["input"] = sequence_to_json(s)["terms"];
    print_report(std::move(report), cfg, spec);
    return kOk;
}

int run_baseline(const Config& cfg) {
    GroupSpec spec = spec_of(cfg);
    if (spec.family == Family::ModifiedDicyclic)
        throw InvalidParams("baseline verify covers cyclic, dicyclic, c2xc2n");
    GroupTable g = GroupTable::build(spec);
    auto predicted = predicted_invariants(spec);
    json per_kind = json::object();
    bool all_match = true;
    std::vector<InvariantReport> reports;
    // d and eta have no stated baseline value; computed exhaustively so the
    // inequality cross-check is non-vacuous.
    for (InvariantKind kind : {InvariantKind::SmallDavenport, InvariantKind::Eta,
                               InvariantKind::EGZ, InvariantKind::Gao}) {
        auto it = predicted.find(kind);
        std::cerr << "computing " << invariant_name(kind);
        if (it != predicted.end()) std::cerr << " (predicted " << it->second << ")";
        std::cerr << "\n";
        InvariantReport r =
            compute_invariant(g, kind, ComputeMode::Exhaustive, options_of(cfg), cfg.samples);
        if (it != predicted.end())
            all_match = all_match && r.computed && *r.computed == it->second;
        per_kind[invariant_name(kind)] = invariant_report_to_json(g, r);
        reports.push_back(std::move(r));
    }
    InequalityReport ineq = verify_inequalities(g, reports);
    print_report(json{{"inequalities", inequality_report_to_json(ineq)},
                      {"invariants", per_kind},
                      {"verified", all_match && ineq.ok}},
                 cfg, spec);
    return all_match && ineq.ok ? kOk : kMismatch;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"zero-sum constants and product-one certificates over small groups"};
    app.require_subcommand(1);
    Config cfg;

    CLI::App* group = app.add_subcommand("group", "group inspection");
    CLI::App* group_info = group->add_subcommand("info", "build a group and print its data");
    add_common_flags(group_info, cfg);
    group->require_subcommand(1);

    std::string which_inv = "d";
    CLI::App* invariant = app.add_subcommand("invariant", "zero-sum invariants");
    CLI::App* inv_compute = invariant->add_subcommand("compute", "compute one invariant");
    inv_compute->add_option("--which", which_inv, "d|eta|s|E")->required();
    inv_compute->add_option("--mode", cfg.mode, "exhaustive|witness|sampled");
    inv_compute->add_option("--samples", cfg.samples, "sample count for sampled mode");
    add_common_flags(inv_compute, cfg);
    invariant->require_subcommand(1);

    CLI::App* verify = app.add_subcommand("verify", "theorem verification");
    CLI::App* main_thm = verify->add_subcommand("main-theorem", "all four invariants + identities");
    main_thm->add_option("--mode", cfg.mode, "exhaustive|witness|sampled");
    main_thm->add_option("--samples", cfg.samples, "sample count for sampled mode");
    add_common_flags(main_thm, cfg);
    verify->require_subcommand(1);

    std::string which_form = "a";
    CLI::App* inverse = app.add_subcommand("inverse", "extremal sequence structure");
    CLI::App* inv_verify = inverse->add_subcommand("verify", "check one structure family");
    inv_verify->add_option("--which", which_form, "a|b|c")->required();
    add_common_flags(inv_verify, cfg);
    inverse->require_subcommand(1);

    std::string method = "proof", input;
    int random_length = 0;
    CLI::App* extract = app.add_subcommand("extract", "n-product-one certificate extraction");
    extract->add_option("--method", method, "proof|search");
    extract->add_option("--input", input, "sequence JSON file");
    extract->add_option("--random-length", random_length, "use a random input of this length");
    add_common_flags(extract, cfg);

    CLI::App* baseline = app.add_subcommand("baseline", "known-constant baselines");
    CLI::App* base_verify = baseline->add_subcommand("verify", "recompute and compare");
    add_common_flags(base_verify, cfg);
    baseline->require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kInputError;
    }

    try {
        if (*group_info) {
            apply_env_overrides(cfg, *group_info);
            return run_group_info(cfg);
        }
        if (*inv_compute) {
            apply_env_overrides(cfg, *inv_compute);
            return run_invariant(cfg, which_inv);
        }
        if (*main_thm) {
            apply_env_overrides(cfg, *main_thm);
            return run_main_theorem(cfg);
        }
        if (*inv_verify) {
            apply_env_overrides(cfg, *inv_verify);
            return run_inverse(cfg, which_form);
        }
        if (*extract) {
            apply_env_overrides(cfg, *extract);
            return run_extract(cfg, method, input, random_length);
        }
        if (*base_verify) {
            apply_env_overrides(cfg, *base_verify);
            return run_baseline(cfg);
        }
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exhausted: " << e.what() << "\n";
        if (!cfg.checkpoint.empty()) std::cerr << "checkpoint written to " << cfg.checkpoint << "\n";
        return kBudget;
    } catch (const ExtractionFailed& e) {
        std::cerr << "extraction failed: " << e.what() << "\n";
        return kMismatch;
    } catch (const SchemaError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    }
    return kInputError;
}
