#include "zsum/inverse.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace zsum {

std::string normal_form_name(NormalForm which) {
    switch (which) {
        case NormalForm::A: return "a";
        case NormalForm::B: return "b";
        case NormalForm::C: return "c";
    }
    return "?";
}

NormalForm normal_form_from_name(const std::string& name) {
    if (name == "a" || name == "A") return NormalForm::A;
    if (name == "b" || name == "B") return NormalForm::B;
    if (name == "c" || name == "C") return NormalForm::C;
    throw InvalidParams("unknown normal form: " + name);
}

namespace {

const GroupSpec& mdic_spec(const GroupTable& g) {
    if (!g.spec() || g.spec()->family != Family::ModifiedDicyclic)
        throw InvalidParams("inverse results apply to the ModifiedDicyclic family only");
    if (g.spec()->n % 4 != 0)
        throw InvalidParams("inverse results require n = 0 (mod 4)");
    return *g.spec();
}

}  // namespace

int extremal_length(const GroupTable& g, NormalForm which) {
    const int n = mdic_spec(g).n;
    switch (which) {
        case NormalForm::A: return 2 * n - 1;
        case NormalForm::B: return 3 * n - 1;
        case NormalForm::C: return n;
    }
    return 0;
}

FreePredicate extremal_predicate(const GroupTable& g, NormalForm which) {
    const int n = mdic_spec(g).n;
    switch (which) {
        case NormalForm::A: return {FreePredicate::Kind::Exact, n, 0};
        case NormalForm::B: return {FreePredicate::Kind::Exact, 2 * n, 0};
        case NormalForm::C: return {FreePredicate::Kind::AllLengths, 0, 0};
    }
    return {FreePredicate::Kind::AllLengths, 0, 0};
}

Sequence NormalFormWitness::instantiate(const GroupTable& g) const {
    const int n = mdic_spec(g).n;
    Sequence s(g);
    auto bpow = [&](int t) { return g.power(beta, t); };
    switch (which) {
        case NormalForm::A:
            s.add(bpow(t1), n - 1);
            s.add(bpow(t2), n - 1);
            s.add(g.mul(alpha, bpow(t3)));
            break;
        case NormalForm::B:
            s.add(bpow(t1), 2 * n - 1);
            s.add(bpow(t2), n - 1);
            s.add(g.mul(alpha, bpow(t3)));
            break;
        case NormalForm::C:
            s.add(beta, n - 1);
            s.add(g.mul(alpha, bpow(t3)));
            break;
    }
    return s;
}

std::vector<Sequence> enumerate_extremal(const GroupTable& g, NormalForm which,
                                         const SearchOptions& opts, SearchStats* stats) {
    FreeSearch search(g, extremal_predicate(g, which), opts);
    SearchResult r = search.collect_free(extremal_length(g, which));
    if (stats) {
        stats->nodes += r.stats.nodes;
        stats->prunes += r.stats.prunes;
        stats->wall_ms += r.stats.wall_ms;
    }
    if (r.budget_limited)
        throw BudgetExceeded("enumerate_extremal: node budget exhausted", r.checkpoint_json);
    return r.collected;
}

std::optional<NormalFormWitness> match_normal_form(const GroupTable& g, const Sequence& s,
                                                   NormalForm which) {
    const int n = mdic_spec(g).n;
    if (s.length() != extremal_length(g, which)) return std::nullopt;

    // quick shape test on the multiplicity profile
    std::vector<int> profile;
    for (int m : s.mult)
        if (m > 0) profile.push_back(m);
    std::sort(profile.begin(), profile.end());
    std::vector<int> want;
    switch (which) {
        case NormalForm::A: want = {1, n - 1, n - 1}; break;
        case NormalForm::B: want = {1, n - 1, 2 * n - 1}; break;
        case NormalForm::C: want = {1, n - 1}; break;
    }
    if (profile != want) return std::nullopt;

    for (auto [alpha, beta] : generator_pairs(g)) {
        if (which == NormalForm::C) {
            for (int t3 = 0; t3 < n; ++t3) {
                NormalFormWitness w{alpha, beta, 1, 0, t3, which};
                if (w.instantiate(g) == s) return w;
            }
            continue;
        }
        for (int t1 = 0; t1 < n; ++t1) {
            ElementId b1 = g.power(beta, t1);
            if (s.mult[b1] < n - 1) continue;
            for (int t2 = 0; t2 < n; ++t2) {
                if (std::gcd(t1 - t2 + n, n) != 1) continue;
                ElementId b2 = g.power(beta, t2);
                if (s.mult[b2] < n - 1) continue;
                for (int t3 = 0; t3 < n; ++t3) {
                    NormalFormWitness w{alpha, beta, t1, t2, t3, which};
                    if (w.instantiate(g) == s) return w;
                }
            }
        }
    }
    return std::nullopt;
}

std::vector<Sequence> normal_form_instances(const GroupTable& g, NormalForm which) {
    const int n = mdic_spec(g).n;
    std::set<std::vector<int>> seen;
    std::vector<Sequence> out;
    auto emit = [&](const NormalFormWitness& w) {
        Sequence s = w.instantiate(g);
        if (seen.insert(s.mult).second) out.push_back(std::move(s));
    };
    for (auto [alpha, beta] : generator_pairs(g)) {
        if (which == NormalForm::C) {
            for (int t3 = 0; t3 < n; ++t3) emit({alpha, beta, 1, 0, t3, which});
            continue;
        }
        for (int t1 = 0; t1 < n; ++t1)
            for (int t2 = 0; t2 < n; ++t2) {
                if (std::gcd(t1 - t2 + n, n) != 1) continue;
                for (int t3 = 0; t3 < n; ++t3) emit({alpha, beta, t1, t2, t3, which});
            }
    }
    return out;
}

InverseReport verify_inverse_theorem(const GroupTable& g, NormalForm which,
                                     const SearchOptions& opts) {
    InverseReport rep;
    rep.which = which;
    rep.stats.seed = opts.seed;

    try {
        rep.enumerated_orbit_reps = enumerate_extremal(g, which, opts, &rep.stats);
        rep.forward_complete = true;
    } catch (const BudgetExceeded&) {
        rep.forward_complete = false;
    }
    for (const Sequence& s : rep.enumerated_orbit_reps) {
        auto w = match_normal_form(g, s, which);
        if (w)
            rep.matched.emplace_back(s, *w);
        else
            rep.unmatched_enumerated.push_back(s);
    }

    FreePredicate pred = extremal_predicate(g, which);
    for (const Sequence& s : normal_form_instances(g, which)) {
        ++rep.backward_instances;
        if (!pred.holds(g, s, opts.state_cap)) rep.characterized_but_not_free.push_back(s);
    }
    return rep;
}

}  // namespace zsum
