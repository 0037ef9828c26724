#include "zsum/invariants.hpp"

#include <random>

namespace zsum {

std::string invariant_name(InvariantKind k) {
    switch (k) {
        case InvariantKind::SmallDavenport: return "d";
        case InvariantKind::Eta: return "eta";
        case InvariantKind::EGZ: return "s";
        case InvariantKind::Gao: return "E";
    }
    return "?";
}

InvariantKind invariant_from_name(const std::string& name) {
    if (name == "d") return InvariantKind::SmallDavenport;
    if (name == "eta") return InvariantKind::Eta;
    if (name == "s") return InvariantKind::EGZ;
    if (name == "E") return InvariantKind::Gao;
    throw InvalidParams("unknown invariant: " + name);
}

std::string mode_name(ComputeMode m) {
    switch (m) {
        case ComputeMode::Exhaustive: return "exhaustive";
        case ComputeMode::WitnessOnly: return "witness";
        case ComputeMode::Sampled: return "sampled";
    }
    return "?";
}

ComputeMode mode_from_name(const std::string& name) {
    if (name == "exhaustive") return ComputeMode::Exhaustive;
    if (name == "witness") return ComputeMode::WitnessOnly;
    if (name == "sampled") return ComputeMode::Sampled;
    throw InvalidParams("unknown mode: " + name);
}

std::map<InvariantKind, int> predicted_invariants(const GroupSpec& spec) {
    spec.validate();
    std::map<InvariantKind, int> out;
    const int n = spec.n;
    switch (spec.family) {
        case Family::ModifiedDicyclic:
            out[InvariantKind::SmallDavenport] = n;
            out[InvariantKind::Eta] = n + 1;
            out[InvariantKind::EGZ] = (n % 4 == 0) ? 2 * n : 3 * n;
            out[InvariantKind::Gao] = 3 * n;
            break;
        case Family::Cyclic:
            out[InvariantKind::EGZ] = 2 * n - 1;
            out[InvariantKind::Gao] = 2 * n - 1;
            break;
        case Family::Dicyclic:
            out[InvariantKind::Gao] = 6 * n;
            break;
        case Family::C2xC2n:
            out[InvariantKind::EGZ] = 4 * n + 1;
            out[InvariantKind::Gao] = 6 * n;
            break;
    }
    return out;
}

FreePredicate predicate_for(const GroupTable& g, InvariantKind kind, int target_len,
                            int verified_egz_value) {
    switch (kind) {
        case InvariantKind::SmallDavenport:
            return {FreePredicate::Kind::AllLengths, 0, 0};
        case InvariantKind::Eta:
            return {FreePredicate::Kind::UpTo, g.exponent(), 0};
        case InvariantKind::EGZ:
            return {FreePredicate::Kind::Exact, g.exponent(), 0};
        case InvariantKind::Gao: {
            const int k = g.order();
            const int gap = k - g.exponent();
            // Combination prune: if the target length leaves at least s(G)
            // terms outside any gap-length product-one subsequence, such a
            // subsequence forces a k-length one, so both lengths can be
            // treated as forbidden.
            if (verified_egz_value > 0 && gap > 0 &&
                target_len - gap >= verified_egz_value)
                return {FreePredicate::Kind::ExactPair, k, gap};
            return {FreePredicate::Kind::Exact, k, 0};
        }
    }
    return {FreePredicate::Kind::AllLengths, 0, 0};
}

std::optional<Sequence> universal_check(const GroupTable& g, int length, InvariantKind kind,
                                        const SearchOptions& opts, SearchStats* stats) {
    if (length < 1) throw InvalidParams("universal_check requires length >= 1");
    FreePredicate pred = predicate_for(g, kind, length, opts.verified_egz_value);
    FreeSearch search(g, pred, opts);
    SearchResult r = search.find_free(length);
    if (stats) {
        stats->nodes += r.stats.nodes;
        stats->prunes += r.stats.prunes;
        stats->wall_ms += r.stats.wall_ms;
    }
    if (r.budget_limited)
        throw BudgetExceeded("universal_check: node budget exhausted", r.checkpoint_json);
    return r.counterexample;
}

namespace {

// Closed-form extremal sequences to try before searching for one.
std::vector<Sequence> witness_candidates(const GroupTable& g, InvariantKind kind, int len) {
    std::vector<Sequence> out;
    if (!g.spec()) return out;
    const GroupSpec& spec = *g.spec();
    const int n = spec.n;
    if (spec.family == Family::ModifiedDicyclic) {
        const ElementId one = 0, y = 1, x = n;
        Sequence s(g);
        switch (kind) {
            case InvariantKind::SmallDavenport:
            case InvariantKind::Eta:
                if (len == n) {
                    s.add(y, n - 1);
                    s.add(x);
                    out.push_back(s);
                }
                break;
            case InvariantKind::EGZ:
                if (len == 2 * n - 1) {
                    s.add(one, n - 1);
                    s.add(y, n - 1);
                    s.add(x);
                    out.push_back(s);
                }
                break;
            case InvariantKind::Gao:
                if (len == 3 * n - 1) {
                    s.add(one, n - 1);
                    s.add(y, 2 * n - 1);
                    s.add(x);
                    out.push_back(s);
                }
                break;
        }
    } else if (spec.family == Family::Cyclic && n >= 2) {
        if ((kind == InvariantKind::EGZ || kind == InvariantKind::Gao) && len == 2 * n - 2) {
            Sequence s(g);
            s.add(0, n - 1);
            s.add(1, n - 1);
            out.push_back(s);
        }
    }
    return out;
}

Sequence random_sequence(const GroupTable& g, int len, std::mt19937_64& rng) {
    Sequence s(g);
    std::uniform_int_distribution<int> pick(0, g.order() - 1);
    for (int i = 0; i < len; ++i) s.add(pick(rng));
    return s;
}

// Does S contain the product-one subsequence the kind demands? Exact check;
// throws BudgetExceeded if the DP state cap blows.
bool kind_satisfied(const GroupTable& g, const Sequence& s, InvariantKind kind,
                    uint64_t state_cap) {
    FreePredicate pred = predicate_for(g, kind, s.length(), 0);
    return !pred.holds(g, s, state_cap);
}

// Sound one-sided confirmation via random fixed orderings, no state blowup.
bool kind_satisfied_heuristic(const GroupTable& g, const Sequence& s, InvariantKind kind,
                              int shuffles, uint64_t seed) {
    switch (kind) {
        case InvariantKind::SmallDavenport:
        case InvariantKind::Eta: {
            SubproductProfile p = subproduct_profile_sampled(g, s, shuffles, seed);
            int bound = kind == InvariantKind::Eta ? std::min(g.exponent(), s.length())
                                                   : s.length();
            for (int len = 1; len <= bound; ++len)
                if (p.contains(len, g.identity())) return true;
            return false;
        }
        case InvariantKind::EGZ:
            return find_k_product_one_heuristic(g, s, g.exponent(), shuffles, seed).has_value();
        case InvariantKind::Gao:
            return find_k_product_one_heuristic(g, s, g.order(), shuffles, seed).has_value();
    }
    return false;
}

}  // namespace

InvariantReport compute_invariant(const GroupTable& g, InvariantKind kind, ComputeMode mode,
                                  SearchOptions opts, long samples) {
    InvariantReport rep;
    rep.kind = kind;
    rep.mode = mode;
    rep.stats.seed = opts.seed;
    if (g.spec()) {
        auto pred = predicted_invariants(*g.spec());
        auto it = pred.find(kind);
        if (it != pred.end()) rep.predicted = it->second;
    }

    if (mode == ComputeMode::Exhaustive && kind == InvariantKind::Gao &&
        opts.verified_egz_value == 0 && g.order() > g.exponent()) {
        // the combination prune needs a trusted s(G); compute it first
        InvariantReport egz = compute_invariant(g, InvariantKind::EGZ, mode, opts, samples);
        opts.verified_egz_value = *egz.computed;
        rep.stats.nodes += egz.stats.nodes;
        rep.stats.prunes += egz.stats.prunes;
        rep.stats.wall_ms += egz.stats.wall_ms;
    }

    auto verified_witness = [&](int len) -> std::optional<Sequence> {
        FreePredicate pure = predicate_for(g, kind, len, 0);
        for (const Sequence& c : witness_candidates(g, kind, len))
            if (c.length() == len && pure.holds(g, c, opts.state_cap)) return c;
        return std::nullopt;
    };

    switch (mode) {
        case ComputeMode::Exhaustive: {
            if (kind == InvariantKind::SmallDavenport) {
                FreeSearch search(g, predicate_for(g, kind, 0, 0), opts);
                SearchResult r = search.max_free(2 * g.order() + 2);
                rep.stats.nodes += r.stats.nodes;
                rep.stats.prunes += r.stats.prunes;
                rep.stats.wall_ms += r.stats.wall_ms;
                if (r.budget_limited)
                    throw BudgetExceeded("d: node budget exhausted", r.checkpoint_json);
                rep.computed = r.max_free_length;
                rep.witness = r.deepest;
                rep.universal_check_length = r.max_free_length + 1;
                break;
            }
            int ell = rep.predicted ? *rep.predicted
                                    : (kind == InvariantKind::Eta ? 2 : g.exponent());
            std::optional<Sequence> below;
            for (;;) {
                auto cex = universal_check(g, ell, kind, opts, &rep.stats);
                if (cex) {
                    below = cex;
                    ++ell;
                    continue;
                }
                if (!below && ell > 1) {
                    below = verified_witness(ell - 1);
                    if (!below) {
                        SearchOptions wopts = opts;
                        wopts.verified_egz_value = 0;
                        below = universal_check(g, ell - 1, kind, wopts, &rep.stats);
                        if (!below) {
                            --ell;  // prediction was too high; keep descending
                            continue;
                        }
                    }
                }
                rep.computed = ell;
                rep.universal_check_length = ell;
                rep.witness = below;
                break;
            }
            break;
        }
        case ComputeMode::WitnessOnly: {
            if (!rep.predicted)
                throw InvalidParams("witness mode needs a stated value for this family");
            int len = kind == InvariantKind::SmallDavenport ? *rep.predicted : *rep.predicted - 1;
            rep.witness = verified_witness(len);
            if (!rep.witness) {
                FreePredicate pure = predicate_for(g, kind, len, 0);
                SearchOptions wopts = opts;
                wopts.verified_egz_value = 0;
                FreeSearch search(g, pure, wopts);
                SearchResult r = search.find_free(len);
                rep.stats.nodes += r.stats.nodes;
                rep.stats.prunes += r.stats.prunes;
                rep.stats.wall_ms += r.stats.wall_ms;
                if (r.budget_limited)
                    throw BudgetExceeded("witness search: node budget exhausted",
                                         r.checkpoint_json);
                rep.witness = r.counterexample;
            }
            break;
        }
        case ComputeMode::Sampled: {
            if (!rep.predicted)
                throw InvalidParams("sampled mode needs a stated value for this family");
            int len = kind == InvariantKind::SmallDavenport ? *rep.predicted + 1 : *rep.predicted;
            std::mt19937_64 rng(opts.seed);
            rep.samples = samples;
            for (long i = 0; i < samples; ++i) {
                Sequence s = random_sequence(g, len, rng);
                if (kind_satisfied_heuristic(g, s, kind, 16, rng())) continue;
                try {
                    if (!kind_satisfied(g, s, kind, opts.state_cap)) {
                        ++rep.counterexamples_found;
                        if (!rep.witness) rep.witness = s;
                    }
                } catch (const BudgetExceeded&) {
                    ++rep.unresolved;
                }
            }
            break;
        }
    }
    return rep;
}

InequalityReport verify_inequalities(const GroupTable& g,
                                     const std::vector<InvariantReport>& reports) {
    InequalityReport out;
    std::map<InvariantKind, int> v;
    for (const InvariantReport& r : reports) {
        if (r.computed)
            v[r.kind] = *r.computed;
        else if (r.predicted && !v.count(r.kind))
            v[r.kind] = *r.predicted;
    }
    out.have_all = v.count(InvariantKind::SmallDavenport) && v.count(InvariantKind::Eta) &&
                   v.count(InvariantKind::EGZ) && v.count(InvariantKind::Gao);
    if (!out.have_all) return out;
    int d = v[InvariantKind::SmallDavenport], eta = v[InvariantKind::Eta];
    int s = v[InvariantKind::EGZ], E = v[InvariantKind::Gao];
    out.gao_lower_ok = E >= d + g.order();
    out.egz_lower_ok = s >= eta + g.exponent() - 1;
    out.gao_equality = E == d + g.order();
    out.egz_equality = s == eta + g.exponent() - 1;
    out.equalities_apply = g.spec() && g.spec()->family == Family::ModifiedDicyclic;
    out.ok = out.gao_lower_ok && out.egz_lower_ok &&
             (!out.equalities_apply || (out.gao_equality && out.egz_equality));
    return out;
}

}  // namespace zsum
