#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "zsum/invariants.hpp"
#include "zsum/reference.hpp"

using namespace zsum;

namespace {

GroupTable mdic(int n, int s) { return GroupTable::build({Family::ModifiedDicyclic, n, s}); }
GroupTable cyclic(int n) { return GroupTable::build({Family::Cyclic, n, 0}); }

int value(const std::map<InvariantKind, int>& m, InvariantKind k) { return m.at(k); }

}  // namespace

TEST_CASE("stated closed forms") {
    auto m8 = predicted_invariants({Family::ModifiedDicyclic, 8, 3});
    CHECK(value(m8, InvariantKind::SmallDavenport) == 8);
    CHECK(value(m8, InvariantKind::Eta) == 9);
    CHECK(value(m8, InvariantKind::EGZ) == 16);
    CHECK(value(m8, InvariantKind::Gao) == 24);

    auto m30 = predicted_invariants({Family::ModifiedDicyclic, 30, 11});
    CHECK(value(m30, InvariantKind::SmallDavenport) == 30);
    CHECK(value(m30, InvariantKind::Eta) == 31);
    CHECK(value(m30, InvariantKind::EGZ) == 90);
    CHECK(value(m30, InvariantKind::Gao) == 90);

    auto c5 = predicted_invariants({Family::Cyclic, 5, 0});
    CHECK(value(c5, InvariantKind::EGZ) == 9);
    CHECK(value(c5, InvariantKind::Gao) == 9);
    CHECK_FALSE(c5.count(InvariantKind::SmallDavenport));  // not stated for baselines
    CHECK_FALSE(c5.count(InvariantKind::Eta));

    auto q8 = predicted_invariants({Family::Dicyclic, 2, 0});
    CHECK(value(q8, InvariantKind::Gao) == 12);
    auto v = predicted_invariants({Family::C2xC2n, 1, 0});
    CHECK(value(v, InvariantKind::EGZ) == 5);
    CHECK(value(v, InvariantKind::Gao) == 6);
}

TEST_CASE("universal_check landmark cases") {
    GroupTable g = mdic(8, 3);
    CHECK_FALSE(universal_check(g, 9, InvariantKind::Eta).has_value());
    auto cex = universal_check(g, 8, InvariantKind::Eta);
    REQUIRE(cex);
    CHECK(cex->length() == 8);
    // counterexample really lacks short product-one subsequences
    CHECK(predicate_for(g, InvariantKind::Eta, 8, 0).holds(g, *cex, 1 << 22));

    GroupTable c3 = cyclic(3);
    CHECK_FALSE(universal_check(c3, 5, InvariantKind::EGZ).has_value());
    CHECK(universal_check(c3, 4, InvariantKind::EGZ).has_value());
}

TEST_CASE("exhaustive d and eta for small cyclic groups match brute force") {
    for (int n : {2, 3, 4, 5, 6}) {
        GroupTable g = cyclic(n);
        InvariantReport d = compute_invariant(g, InvariantKind::SmallDavenport,
                                              ComputeMode::Exhaustive);
        CHECK(*d.computed == n - 1);
        CHECK(*d.computed == max_free_length_naive(g, 2 * n));
        REQUIRE(d.witness);
        CHECK(d.witness->length() == n - 1);
        CHECK(is_product_one_free_naive(g, *d.witness));

        InvariantReport s = compute_invariant(g, InvariantKind::EGZ, ComputeMode::Exhaustive);
        CHECK(*s.computed == 2 * n - 1);
        if (n <= 4) CHECK(*s.computed == min_forcing_length_naive(g, n, 2 * n + 2));
        REQUIRE(s.witness);
        CHECK(s.witness->length() == 2 * n - 2);
    }
}

TEST_CASE("exhaustive values for the small baseline groups") {
    // C2 x C2: s = 5, E = 6
    GroupTable v = GroupTable::build({Family::C2xC2n, 1, 0});
    CHECK(*compute_invariant(v, InvariantKind::EGZ, ComputeMode::Exhaustive).computed == 5);
    CHECK(*compute_invariant(v, InvariantKind::Gao, ComputeMode::Exhaustive).computed == 6);

    // Q8: E = 12
    GroupTable q8 = GroupTable::build({Family::Dicyclic, 2, 0});
    InvariantReport gao = compute_invariant(q8, InvariantKind::Gao, ComputeMode::Exhaustive);
    CHECK(*gao.computed == 12);
    REQUIRE(gao.witness);
    CHECK(gao.witness->length() == 11);
    CHECK_FALSE(has_k_product_one(q8, *gao.witness, 8));
}

TEST_CASE("exhaustive d and eta for the flagship group") {
    GroupTable g = mdic(8, 3);
    InvariantReport d = compute_invariant(g, InvariantKind::SmallDavenport,
                                          ComputeMode::Exhaustive);
    CHECK(*d.computed == 8);
    CHECK(d.computed == d.predicted);
    REQUIRE(d.witness);
    CHECK(d.witness->length() == 8);
    CHECK(is_product_one_free(g, *d.witness));

    InvariantReport eta = compute_invariant(g, InvariantKind::Eta, ComputeMode::Exhaustive);
    CHECK(*eta.computed == 9);
    CHECK(eta.computed == eta.predicted);
    REQUIRE(eta.witness);
    CHECK(eta.witness->length() == 8);
    CHECK_FALSE(has_short_product_one(g, *eta.witness));
}

TEST_CASE("witness mode verifies stated lower bounds") {
    GroupTable g = mdic(8, 3);
    for (InvariantKind k : {InvariantKind::SmallDavenport, InvariantKind::Eta,
                            InvariantKind::EGZ, InvariantKind::Gao}) {
        InvariantReport r = compute_invariant(g, k, ComputeMode::WitnessOnly);
        REQUIRE(r.witness);
        int expect = k == InvariantKind::SmallDavenport ? *r.predicted : *r.predicted - 1;
        CHECK(r.witness->length() == expect);
        CHECK(predicate_for(g, k, expect, 0).holds(g, *r.witness, 1 << 22));
        CHECK_FALSE(r.computed);
    }
}

TEST_CASE("sampled mode finds no counterexamples at the stated values") {
    GroupTable g = mdic(8, 3);
    SearchOptions opts;
    opts.seed = 99;
    for (InvariantKind k : {InvariantKind::SmallDavenport, InvariantKind::Eta,
                            InvariantKind::EGZ, InvariantKind::Gao}) {
        InvariantReport r = compute_invariant(g, k, ComputeMode::Sampled, opts, 150);
        CHECK(r.samples == 150);
        CHECK(r.counterexamples_found == 0);
        CHECK(r.unresolved == 0);
    }
}

TEST_CASE("inequalities") {
    GroupTable g = mdic(8, 3);
    auto mk = [&](InvariantKind k, int val) {
        InvariantReport r;
        r.kind = k;
        r.computed = val;
        return r;
    };
    std::vector<InvariantReport> good{mk(InvariantKind::SmallDavenport, 8),
                                      mk(InvariantKind::Eta, 9), mk(InvariantKind::EGZ, 16),
                                      mk(InvariantKind::Gao, 24)};
    InequalityReport ok = verify_inequalities(g, good);
    CHECK(ok.ok);
    CHECK(ok.gao_equality);
    CHECK(ok.egz_equality);

    std::vector<InvariantReport> bad = good;
    bad[3].computed = 20;  // E < d + |G|
    InequalityReport flagged = verify_inequalities(g, bad);
    CHECK_FALSE(flagged.ok);
    CHECK_FALSE(flagged.gao_lower_ok);

    std::vector<InvariantReport> partial{mk(InvariantKind::EGZ, 16)};
    CHECK_FALSE(verify_inequalities(g, partial).have_all);

    // baseline: inequalities hold but equalities are not required
    GroupTable c5 = cyclic(5);
    std::vector<InvariantReport> c5r{
        compute_invariant(c5, InvariantKind::SmallDavenport, ComputeMode::Exhaustive),
        compute_invariant(c5, InvariantKind::Eta, ComputeMode::Exhaustive),
        mk(InvariantKind::EGZ, 9), mk(InvariantKind::Gao, 9)};
    InequalityReport base = verify_inequalities(c5, c5r);
    CHECK(base.ok);
    CHECK_FALSE(base.equalities_apply);
}

TEST_CASE("monotone pruning soundness on random pairs") {
    GroupTable g = mdic(8, 3);
    std::mt19937 rng(5);
    int done = 0;
    while (done < 10000) {
        Sequence p(g);
        int len = 1 + rng() % 6;
        for (int i = 0; i < len; ++i) p.add(rng() % g.order());
        int k = 1 + rng() % len;
        if (!has_k_product_one(g, p, k)) continue;
        Sequence super = p;
        int extra = 1 + rng() % 4;
        for (int i = 0; i < extra; ++i) super.add(rng() % g.order());
        CHECK(has_k_product_one(g, super, k));
        ++done;
    }
}

TEST_CASE("budget exceeded carries a checkpoint") {
    GroupTable g = mdic(8, 3);
    SearchOptions tight;
    tight.node_budget = 500;
    try {
        compute_invariant(g, InvariantKind::SmallDavenport, ComputeMode::Exhaustive, tight);
        FAIL("expected BudgetExceeded");
    } catch (const BudgetExceeded& e) {
        CHECK_FALSE(std::string(e.what()).empty());
        CHECK_FALSE(e.checkpoint_json.empty());
        // resuming with the checkpoint completes and agrees
        SearchOptions resume;
        resume.resume_json = e.checkpoint_json;
        InvariantReport r = compute_invariant(g, InvariantKind::SmallDavenport,
                                              ComputeMode::Exhaustive, resume);
        CHECK(*r.computed == 8);
    }
}
