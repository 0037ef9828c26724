// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure. Runs in a few minutes single-threaded.
#include <chrono>
#include <cstdio>
#include <random>
#include <sstream>
#include <vector>

#include "zsum/constructive.hpp"
#include "zsum/invariants.hpp"
#include "zsum/inverse.hpp"
#include "zsum/reference.hpp"
#include "zsum/subproduct.hpp"

using namespace zsum;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
    std::printf("criterion %d: %s  (%s)\n", criterion, pass ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

double since_ms(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

Sequence random_sequence(const GroupTable& g, int len, std::mt19937_64& rng) {
    Sequence s(g);
    for (int i = 0; i < len; ++i) s.add(static_cast<ElementId>(rng() % g.order()));
    return s;
}

// 1. Group engine: every valid (n, s) with n <= 64 builds with order 2n,
//    the stated exponent, and passing axioms; all of it under a second.
void criterion1() {
    auto t0 = Clock::now();
    int built = 0;
    bool ok = true;
    std::ostringstream why;
    for (int n = 2; n <= 64; n += 2) {
        for (int s : GroupSpec::valid_s_values(n)) {
            GroupTable g = GroupTable::build({Family::ModifiedDicyclic, n, s});
            ++built;
            int want_exp = n % 4 == 0 ? n : 2 * n;
            if (g.order() != 2 * n || g.exponent() != want_exp) {
                ok = false;
                why << "wrong order/exponent at (" << n << "," << s << "); ";
            }
            if (g.order() <= 128 && !g.check_axioms()) {
                ok = false;
                why << "axioms fail at (" << n << "," << s << "); ";
            }
        }
    }
    double ms = since_ms(t0);
    if (ms >= 1000.0) {
        ok = false;
        why << "too slow; ";
    }
    why << built << " groups in " << static_cast<int>(ms) << " ms";
    report(1, ok && built > 0, why.str());
}

// Shared by criteria 2 and 6.
std::vector<InvariantReport> g_n8_reports;

// 2. All four constants exhaustively at n = 8 for both valid s.
void criterion2() {
    auto t0 = Clock::now();
    bool ok = true;
    std::ostringstream why;
    for (int s : {3, 5}) {
        GroupTable g = GroupTable::build({Family::ModifiedDicyclic, 8, s});
        auto predicted = predicted_invariants(*g.spec());
        for (auto [kind, want] : predicted) {
            InvariantReport r = compute_invariant(g, kind, ComputeMode::Exhaustive);
            if (!r.computed || *r.computed != want) {
                ok = false;
                why << invariant_name(kind) << "(8," << s << ") = "
                    << (r.computed ? *r.computed : -1) << " != " << want << "; ";
            }
            if (s == 3) g_n8_reports.push_back(r);
        }
    }
    why << "d=8 eta=9 s=16 E=24 for s in {3,5}, " << static_cast<int>(since_ms(t0)) << " ms";
    report(2, ok, why.str());
}

// 3. n = 12: d and eta exhaustively; s and E by verified witness plus 1e5
//    clean samples for each valid s.
void criterion3() {
    auto t0 = Clock::now();
    bool ok = true;
    std::ostringstream why;
    for (int s : {5, 7}) {
        GroupTable g = GroupTable::build({Family::ModifiedDicyclic, 12, s});
        for (auto [kind, want] : {std::pair{InvariantKind::SmallDavenport, 12},
                                  {InvariantKind::Eta, 13}}) {
            InvariantReport r = compute_invariant(g, kind, ComputeMode::Exhaustive);
            if (!r.computed || *r.computed != want) {
                ok = false;
                why << invariant_name(kind) << "(12," << s << ") exhaustive mismatch; ";
            }
        }
        for (InvariantKind kind : {InvariantKind::EGZ, InvariantKind::Gao}) {
            InvariantReport w = compute_invariant(g, kind, ComputeMode::WitnessOnly);
            if (!w.witness || !w.predicted) {
                ok = false;
                why << invariant_name(kind) << "(12," << s << ") witness missing; ";
            }
            InvariantReport r = compute_invariant(g, kind, ComputeMode::Sampled, {}, 100000);
            if (r.counterexamples_found != 0 || r.unresolved != 0) {
                ok = false;
                why << invariant_name(kind) << "(12," << s << ") sampled: "
                    << r.counterexamples_found << " cex, " << r.unresolved << " unresolved; ";
            }
        }
    }
    why << "d=12 eta=13 exhaustive, s=24 E=36 witnessed + 1e5 samples each, "
        << static_cast<int>(since_ms(t0)) << " ms";
    report(3, ok, why.str());
}

// 4. Extremal structure at n = 8: forms A and C verified in both directions
//    exhaustively; form B backward exhaustively, forward within a declared
//    budget or honestly reported budget-limited.
void criterion4() {
    auto t0 = Clock::now();
    GroupTable g = GroupTable::build({Family::ModifiedDicyclic, 8, 3});
    bool ok = true;
    std::ostringstream why;
    for (NormalForm which : {NormalForm::A, NormalForm::C}) {
        InverseReport r = verify_inverse_theorem(g, which);
        if (!r.verified()) {
            ok = false;
            why << "form " << normal_form_name(which) << " not verified; ";
        }
    }
    SearchOptions opts;
    opts.node_budget = 2'000'000;
    InverseReport b = verify_inverse_theorem(g, NormalForm::B, opts);
    bool b_backward = b.characterized_but_not_free.empty() && b.backward_instances > 0;
    bool b_forward_honest =
        b.forward_complete ? b.unmatched_enumerated.empty() : b.enumerated_orbit_reps.empty();
    if (!b_backward || !b_forward_honest) {
        ok = false;
        why << "form b backward=" << b_backward << " forward_complete=" << b.forward_complete
            << "; ";
    }
    why << "a, c verified; b backward over " << b.backward_instances
        << " instances, forward " << (b.forward_complete ? "complete" : "budget-limited")
        << ", " << static_cast<int>(since_ms(t0)) << " ms";
    report(4, ok, why.str());
}

std::vector<std::pair<const GroupTable*, std::vector<InvariantReport>>> g_baseline_reports;
std::vector<GroupTable> g_baseline_groups;

// 5. Known baselines recomputed exhaustively.
void criterion5() {
    auto t0 = Clock::now();
    bool ok = true;
    std::ostringstream why;
    auto check = [&](GroupSpec spec, const char* name) {
        g_baseline_groups.push_back(GroupTable::build(spec));
        const GroupTable& g = g_baseline_groups.back();
        std::vector<InvariantReport> reports;
        for (auto [kind, want] : predicted_invariants(spec)) {
            InvariantReport r = compute_invariant(g, kind, ComputeMode::Exhaustive);
            if (!r.computed || *r.computed != want) {
                ok = false;
                why << invariant_name(kind) << "(" << name << ") = "
                    << (r.computed ? *r.computed : -1) << " != " << want << "; ";
            }
            reports.push_back(std::move(r));
        }
        g_baseline_reports.emplace_back(&g, std::move(reports));
    };
    g_baseline_groups.reserve(16);
    for (int n = 2; n <= 12; ++n)
        check({Family::Cyclic, n, 0}, ("C" + std::to_string(n)).c_str());
    check({Family::Dicyclic, 2, 0}, "Q8");
    check({Family::Dicyclic, 3, 0}, "Q12");
    check({Family::C2xC2n, 1, 0}, "C2xC2");
    check({Family::C2xC2n, 2, 0}, "C2xC4");
    why << "s/E cyclic n<=12, E(Q8)=12 E(Q12)=18, C2xC2 (5,6), C2xC4 (9,12), "
        << static_cast<int>(since_ms(t0)) << " ms";
    report(5, ok, why.str());
}

// 6. The two lower-bound inequalities (with equality for this family) hold on
//    every report computed above.
void criterion6() {
    bool ok = true;
    std::ostringstream why;
    GroupTable g8 = GroupTable::build({Family::ModifiedDicyclic, 8, 3});
    InequalityReport main = verify_inequalities(g8, g_n8_reports);
    if (!main.have_all || !main.ok || !main.gao_equality || !main.egz_equality) {
        ok = false;
        why << "family equalities fail at (8,3); ";
    }
    int checked = 1;
    for (auto& [g, reports] : g_baseline_reports) {
        // complete the picture exhaustively where no stated value exists
        // (d and eta everywhere, also s for the dicyclic baselines)
        std::vector<InvariantReport> full = reports;
        for (InvariantKind kind : {InvariantKind::SmallDavenport, InvariantKind::Eta,
                                   InvariantKind::EGZ, InvariantKind::Gao}) {
            bool have = false;
            for (auto& r : full) have = have || r.kind == kind;
            if (!have) full.push_back(compute_invariant(*g, kind, ComputeMode::Exhaustive));
        }
        InequalityReport r = verify_inequalities(*g, full);
        ++checked;
        if (!r.have_all || !r.ok) {
            ok = false;
            why << "inequalities fail on baseline of order " << g->order() << "; ";
        }
    }
    why << "E >= d+|G| and s >= eta+exp-1 on " << checked
        << " report sets, equalities at (8,3)";
    report(6, ok, why.str());
}

// 7. Proof-mode extraction over 1e4 random length-2n inputs per group; every
//    certificate re-verified term by term, a deterministic subsample
//    cross-checked against the exact DP oracle (each certificate is itself a
//    witness for the oracle's positive answer; the full oracle sweep at
//    n = 12 would not fit the time budget).
void criterion7() {
    auto t0 = Clock::now();
    bool ok = true;
    std::ostringstream why;
    for (auto [n, s] : {std::pair{8, 3}, {12, 5}}) {
        GroupTable g = GroupTable::build({Family::ModifiedDicyclic, n, s});
        std::mt19937_64 rng(2026);
        int verified = 0, proof_used = 0, oracle_checked = 0;
        for (int t = 0; t < 10000; ++t) {
            Sequence seq = random_sequence(g, 2 * n, rng);
            ExtractionResult r = extract_n_product_one(g, seq, ExtractMethod::Proof);
            bool good = r.certificate.length() == n &&
                        evaluate_word(g, r.certificate.terms) == g.identity() &&
                        r.certificate.verify(&seq);
            if (t % 20 == 0) {
                good = good && has_k_product_one(g, seq, n);
                ++oracle_checked;
            }
            verified += good;
            proof_used += r.method_used == ExtractMethod::Proof;
        }
        if (verified != 10000) {
            ok = false;
            why << "(" << n << "," << s << "): only " << verified << "/10000 verified; ";
        }
        why << "(" << n << "," << s << "): 10000 verified, " << proof_used
            << " via proof path, " << oracle_checked << " oracle-checked; ";
    }
    double ms = since_ms(t0);
    if (ms > 600000.0) {
        ok = false;
        why << "over 10 min; ";
    }
    why << static_cast<int>(ms) << " ms";
    report(7, ok, why.str());
}

// 8. n = 30 (the n = 2 mod 4 case, beyond exhaustive reach): exact freeness
//    of the lower-bound witness, stated values reported, and 1e4 sampled
//    heuristic certificates at the Gao length.
void criterion8() {
    auto t0 = Clock::now();
    GroupTable g = GroupTable::build({Family::ModifiedDicyclic, 30, 11});
    bool ok = true;
    std::ostringstream why;

    Sequence witness(g);
    witness.add(1, 29);  // y^[29]
    witness.add(30);     // x
    if (!is_product_one_free(g, witness)) {
        ok = false;
        why << "y^[29].x is not product-one free; ";
    }

    auto predicted = predicted_invariants(*g.spec());
    bool stated = predicted[InvariantKind::SmallDavenport] == 30 &&
                  predicted[InvariantKind::Eta] == 31 &&
                  predicted[InvariantKind::EGZ] == 90 && predicted[InvariantKind::Gao] == 90;
    if (!stated) {
        ok = false;
        why << "stated values wrong; ";
    }

    std::mt19937_64 rng(30);
    int found = 0;
    for (int t = 0; t < 10000; ++t) {
        Sequence s = random_sequence(g, 90, rng);
        auto cert = find_k_product_one_heuristic(g, s, 60, 256, rng());
        if (cert && cert->verify(&s)) ++found;
    }
    if (found != 10000) {
        ok = false;
        why << "only " << found << "/10000 heuristic certificates; ";
    }
    why << "witness free, d=30 eta=31 s=90 E=90 reported, " << found
        << " certificates, " << static_cast<int>(since_ms(t0)) << " ms";
    report(8, ok, why.str());
}

// 9. Property suites at full scale.
void criterion9() {
    auto t0 = Clock::now();
    bool ok = true;
    std::ostringstream why;
    std::mt19937_64 rng(9);

    std::vector<GroupTable> small;
    small.push_back(GroupTable::build({Family::ModifiedDicyclic, 8, 3}));
    small.push_back(GroupTable::build({Family::Cyclic, 9, 0}));
    small.push_back(GroupTable::build({Family::Dicyclic, 2, 0}));
    small.push_back(GroupTable::build({Family::C2xC2n, 2, 0}));

    // DP agrees with the brute-force permutation oracle
    int dp_fail = 0;
    for (int t = 0; t < 10000; ++t) {
        const GroupTable& g = small[rng() % small.size()];
        int len = 1 + static_cast<int>(rng() % 7);
        Sequence s = random_sequence(g, len, rng);
        SubproductDp dp(g);
        dp.push_all(s);
        for (int j = 1; j <= len; ++j) {
            std::vector<char> expect(g.order(), 0);
            for (ElementId e : subproducts_naive(g, s, j)) expect[e] = 1;
            for (ElementId e = 0; e < g.order(); ++e)
                if (dp.row_contains(j, e) != static_cast<bool>(expect[e])) ++dp_fail;
        }
    }
    if (dp_fail) {
        ok = false;
        why << dp_fail << " dp/oracle cell mismatches; ";
    }

    // O(1) append criterion matches recomputation from scratch
    int append_fail = 0;
    for (int t = 0; t < 10000; ++t) {
        const GroupTable& g = small[rng() % small.size()];
        Sequence s = random_sequence(g, 1 + static_cast<int>(rng() % 6), rng);
        ElementId e = static_cast<ElementId>(rng() % g.order());
        SubproductDp dp(g);
        dp.push_all(s);
        int j = 1 + static_cast<int>(rng() % (s.length() + 1));
        bool fast = dp.creates_product_one_at(j, e);
        Sequence bigger = s;
        bigger.add(e);
        SubproductDp dp2(g);
        dp2.push_all(bigger);
        bool slow = dp2.row_contains(j, g.identity());
        if (fast != slow) ++append_fail;
    }
    if (append_fail) {
        ok = false;
        why << append_fail << " append-criterion mismatches; ";
    }

    // freeness is monotone under removal
    int mono_fail = 0;
    for (int t = 0; t < 2000; ++t) {
        const GroupTable& g = small[rng() % small.size()];
        Sequence s = random_sequence(g, 2 + static_cast<int>(rng() % 6), rng);
        if (!is_product_one_free(g, s)) continue;
        Sequence sub = s;
        auto supp = s.support();
        sub.remove(supp[rng() % supp.size()]);
        if (!is_product_one_free(g, sub)) ++mono_fail;
    }
    if (mono_fail) {
        ok = false;
        why << mono_fail << " monotonicity violations; ";
    }

    // canonical form is idempotent and orbit-constant
    int canon_fail = 0;
    {
        const GroupTable& g = small[0];
        auto auts = automorphisms(g);
        for (int t = 0; t < 2000; ++t) {
            Sequence s = random_sequence(g, 1 + static_cast<int>(rng() % 8), rng);
            Sequence c = canonical_form(s, auts);
            if (!(canonical_form(c, auts) == c)) ++canon_fail;
            const Permutation& sigma = auts[rng() % auts.size()];
            Sequence mapped(g);
            for (ElementId e = 0; e < g.order(); ++e) mapped.mult[sigma[e]] += s.mult[e];
            if (!(canonical_form(mapped, auts) == c)) ++canon_fail;
        }
    }
    if (canon_fail) {
        ok = false;
        why << canon_fail << " canonical-form failures; ";
    }

    // identical results regardless of worker count
    bool det_ok = true;
    {
        GroupTable g = GroupTable::build({Family::ModifiedDicyclic, 8, 3});
        FreePredicate pred{FreePredicate::Kind::UpTo, 8, 0};
        SearchResult results[2];
        for (int i = 0; i < 2; ++i) {
            SearchOptions opts;
            opts.jobs = i == 0 ? 1 : 4;
            FreeSearch search(g, pred, opts);
            results[i] = search.max_free(40);
        }
        det_ok = results[0].max_free_length == results[1].max_free_length &&
                 results[0].stats.nodes == results[1].stats.nodes &&
                 results[0].stats.prunes == results[1].stats.prunes &&
                 results[0].deepest.has_value() == results[1].deepest.has_value() &&
                 (!results[0].deepest || *results[0].deepest == *results[1].deepest);
    }
    if (!det_ok) {
        ok = false;
        why << "worker-count nondeterminism; ";
    }

    why << "dp oracle 1e4, append 1e4, monotone, canonical, determinism, "
        << static_cast<int>(since_ms(t0)) << " ms";
    report(9, ok, why.str());
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    std::printf("%s: %d of 9 criteria passed\n", g_failures == 0 ? "ACCEPTED" : "REJECTED",
                9 - g_failures);
    return g_failures == 0 ? 0 : 1;
}
