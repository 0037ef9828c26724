#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "zsum/reference.hpp"
#include "zsum/search.hpp"
#include "zsum/sequence.hpp"
#include "zsum/subproduct.hpp"

using namespace zsum;

namespace {

GroupTable mdic(int n, int s) { return GroupTable::build({Family::ModifiedDicyclic, n, s}); }

Sequence random_sequence(const GroupTable& g, int len, std::mt19937& rng) {
    Sequence s(g);
    for (int i = 0; i < len; ++i) s.add(rng() % g.order());
    return s;
}

std::vector<GroupTable> sample_groups() {
    std::vector<GroupTable> gs;
    gs.push_back(mdic(8, 3));
    gs.push_back(mdic(8, 5));
    gs.push_back(mdic(12, 7));
    gs.push_back(GroupTable::build({Family::Cyclic, 7, 0}));
    gs.push_back(GroupTable::build({Family::Dicyclic, 2, 0}));
    gs.push_back(GroupTable::build({Family::C2xC2n, 3, 0}));
    return gs;
}

}  // namespace

TEST_CASE("sequence basics") {
    GroupTable g = mdic(8, 3);
    Sequence s(g);
    s.add(1, 3);
    s.add(8);
    CHECK(s.length() == 4);
    CHECK(s.terms() == std::vector<ElementId>{1, 1, 1, 8});
    CHECK(s.support() == std::vector<ElementId>{1, 8});
    Sequence sub(g);
    sub.add(1, 2);
    CHECK(s.contains(sub));
    sub.add(8, 2);
    CHECK_FALSE(s.contains(sub));
    std::vector<ElementId> t{2, 2, 9};
    CHECK(Sequence::of(g, t).length() == 3);
}

TEST_CASE("certificate verify") {
    GroupTable g = mdic(8, 3);
    ElementId y = 1;
    Certificate c{&g, {y, y, y, y, y, y, y, y}};
    CHECK(c.verify());
    Certificate bad{&g, {y, y, y}};
    CHECK_FALSE(bad.verify());
    Sequence s(g);
    s.add(y, 8);
    CHECK(c.verify(&s));
    s.remove(y);
    CHECK_FALSE(c.verify(&s));  // not a subsequence any more
}

TEST_CASE("coset profile") {
    GroupTable g = mdic(8, 3);
    ElementId y = 1, x = 8;
    std::vector<ElementId> gy2{g.mul(y, y)};
    Subgroup l = subgroup_generated(g, gy2);
    Sequence s(g);
    s.add(0);              // in L
    s.add(y, 2);           // y L
    s.add(x, 3);           // x L
    s.add(g.mul(x, y));    // xy L
    CosetProfile p = coset_profile(g, s, l, {0, y, x, g.mul(x, y)});
    CHECK(p.counts == std::array<int, 4>{1, 2, 3, 1});
    CHECK(p.total() == s.length());
    CHECK_THROWS_AS(coset_profile(g, s, l, {0, 2, x, g.mul(x, y)}), RepsNotTransversal);
}

TEST_CASE("canonical form is idempotent and orbit-constant") {
    GroupTable g = mdic(8, 3);
    auto auts = automorphisms(g);
    std::mt19937 rng(11);
    for (int t = 0; t < 300; ++t) {
        Sequence s = random_sequence(g, 1 + rng() % 8, rng);
        Sequence c = canonical_form(s, auts);
        CHECK(canonical_form(c, auts) == c);
        CHECK_FALSE(s < c);  // canonical form is minimal
        const Permutation& sigma = auts[rng() % auts.size()];
        Sequence mapped(g);
        for (ElementId e = 0; e < g.order(); ++e) mapped.mult[sigma[e]] += s.mult[e];
        CHECK(canonical_form(mapped, auts) == c);
    }
}

TEST_CASE("product_set matches permutation enumeration") {
    auto groups = sample_groups();
    std::mt19937 rng(42);
    int cases = 0;
    while (cases < 2500) {
        const GroupTable& g = groups[rng() % groups.size()];
        Sequence s = random_sequence(g, 1 + rng() % 5, rng);
        CHECK(product_set(g, s) == product_set_naive(g, s));
        ++cases;
    }
}

TEST_CASE("dp rows match naive subproducts at every length") {
    auto groups = sample_groups();
    std::mt19937 rng(43);
    for (int t = 0; t < 1500; ++t) {
        const GroupTable& g = groups[rng() % groups.size()];
        Sequence s = random_sequence(g, 1 + rng() % 5, rng);
        SubproductDp dp(g);
        dp.push_all(s);
        for (int len = 1; len <= s.length(); ++len)
            CHECK(dp.row_elements(len) == subproducts_naive(g, s, len));
    }
}

TEST_CASE("push/pop restores state exactly") {
    GroupTable g = mdic(8, 3);
    std::mt19937 rng(44);
    for (int t = 0; t < 200; ++t) {
        SubproductDp dp(g);
        std::vector<ElementId> stack;
        for (int step = 0; step < 30; ++step) {
            if (!stack.empty() && rng() % 3 == 0) {
                dp.pop();
                stack.pop_back();
            } else if (static_cast<int>(stack.size()) < 8) {
                ElementId e = rng() % g.order();
                dp.push(e);
                stack.push_back(e);
            }
        }
        SubproductDp fresh(g);
        Sequence s = Sequence::of(g, stack);
        fresh.push_all(s);
        for (int len = 1; len <= static_cast<int>(stack.size()); ++len)
            CHECK(dp.row_elements(len) == fresh.row_elements(len));
    }
}

TEST_CASE("append criterion agrees with recomputation") {
    auto groups = sample_groups();
    std::mt19937 rng(45);
    int done = 0;
    while (done < 2000) {
        const GroupTable& g = groups[rng() % groups.size()];
        // grow a random product-one free sequence
        Sequence s(g);
        for (int i = 0; i < 6; ++i) {
            ElementId e = rng() % g.order();
            Sequence cand = s;
            cand.add(e);
            if (is_product_one_free_naive(g, cand)) s = cand;
        }
        ElementId e = rng() % g.order();
        Sequence cand = s;
        cand.add(e);
        bool expect = is_product_one_free_naive(g, cand);
        SubproductDp dp(g);
        dp.push_all(s);
        if (s.length() > 0) {
            std::vector<ElementId> pi;  // Pi(S): all nonempty subsequence products
            for (int len = 1; len <= s.length(); ++len)
                for (ElementId h : dp.row_elements(len)) pi.push_back(h);
            CHECK(append_free_check(g, pi, e) == expect);
        }
        CHECK(!dp.creates_any_product_one(e) == expect);
        ++done;
    }
}

TEST_CASE("creates_product_one_at matches naive k-check") {
    auto groups = sample_groups();
    std::mt19937 rng(46);
    for (int t = 0; t < 1500; ++t) {
        const GroupTable& g = groups[rng() % groups.size()];
        Sequence s = random_sequence(g, rng() % 5, rng);
        ElementId e = rng() % g.order();
        SubproductDp dp(g);
        dp.push_all(s);
        Sequence ext = s;
        ext.add(e);
        for (int k = 1; k <= ext.length(); ++k)
            CHECK(dp.creates_product_one_at(k, e) == has_k_product_one_naive(g, ext, k));
    }
}

TEST_CASE("freeness is inherited by subsequences") {
    GroupTable g = mdic(12, 5);
    std::mt19937 rng(47);
    for (int t = 0; t < 300; ++t) {
        Sequence s = random_sequence(g, 1 + rng() % 6, rng);
        if (!is_product_one_free(g, s)) continue;
        Sequence sub = s;
        std::vector<ElementId> terms = s.terms();
        sub.remove(terms[rng() % terms.size()]);
        CHECK(is_product_one_free(g, sub));
    }
}

TEST_CASE("sampled profile is a sound under-approximation") {
    GroupTable g = mdic(8, 3);
    std::mt19937 rng(48);
    for (int t = 0; t < 100; ++t) {
        Sequence s = random_sequence(g, 1 + rng() % 6, rng);
        SubproductProfile exact = subproduct_profile(g, s);
        SubproductProfile sampled = subproduct_profile_sampled(g, s, 4, t);
        for (int len = 1; len <= s.length(); ++len)
            for (ElementId h = 0; h < g.order(); ++h)
                if (sampled.contains(len, h)) CHECK(exact.contains(len, h));
    }
}

TEST_CASE("heuristic finder returns verified certificates") {
    GroupTable g = mdic(8, 3);
    std::mt19937 rng(49);
    int found = 0;
    for (int t = 0; t < 50; ++t) {
        Sequence s = random_sequence(g, 10, rng);
        auto cert = find_k_product_one_heuristic(g, s, 8, 16, t);
        if (cert) {
            CHECK(cert->length() == 8);
            CHECK(cert->verify(&s));
            ++found;
        }
        if (cert.has_value() != has_k_product_one(g, s, 8)) {
            // heuristic may miss, but must never claim falsely
            CHECK_FALSE(cert.has_value());
        }
    }
    CHECK(found > 0);
}

TEST_CASE("search: maximal free length in small cyclic groups") {
    // d(C_n) = n-1 with witness g^(n-1)
    for (int n : {2, 3, 5, 8}) {
        GroupTable g = GroupTable::build({Family::Cyclic, n, 0});
        FreeSearch search(g, {FreePredicate::Kind::AllLengths, 0, 0}, {});
        SearchResult r = search.max_free(4 * n);
        CHECK(r.max_free_length == n - 1);
        CHECK(r.max_free_length == max_free_length_naive(g, 2 * n));
        REQUIRE(r.deepest);
        CHECK(is_product_one_free(g, *r.deepest));
    }
}

TEST_CASE("search: find and collect agree with brute force") {
    GroupTable g = GroupTable::build({Family::Cyclic, 6, 0});
    FreePredicate pred{FreePredicate::Kind::AllLengths, 0, 0};
    SearchOptions opt;
    opt.use_symmetry = false;
    FreeSearch search(g, pred, opt);
    SearchResult found = search.find_free(5);
    REQUIRE(found.counterexample);
    CHECK(found.counterexample->terms() == std::vector<ElementId>{1, 1, 1, 1, 1});
    CHECK_FALSE(search.find_free(6).counterexample);

    // collect without symmetry = all free multisets of length 3
    SearchResult all = search.collect_free(3);
    int expect = 0;
    for (ElementId a = 0; a < 6; ++a)
        for (ElementId b = a; b < 6; ++b)
            for (ElementId c = b; c < 6; ++c) {
                std::vector<ElementId> v{a, b, c};
                if (is_product_one_free_naive(g, Sequence::of(g, v))) ++expect;
            }
    CHECK(static_cast<int>(all.collected.size()) == expect);
    for (const Sequence& s : all.collected) CHECK(is_product_one_free_naive(g, s));
}

TEST_CASE("search: symmetry reduction preserves answers") {
    GroupTable g = mdic(8, 3);
    FreePredicate pred{FreePredicate::Kind::UpTo, g.exponent(), 0};
    SearchOptions plain;
    plain.use_symmetry = false;
    SearchOptions sym;
    sym.use_symmetry = true;
    int len = 7;
    SearchResult a = FreeSearch(g, pred, plain).find_free(len);
    SearchResult b = FreeSearch(g, pred, sym).find_free(len);
    REQUIRE(a.counterexample.has_value() == b.counterexample.has_value());
    if (a.counterexample) CHECK(*a.counterexample == *b.counterexample);
}

TEST_CASE("search: deterministic across jobs") {
    GroupTable g = mdic(8, 3);
    FreePredicate pred{FreePredicate::Kind::AllLengths, 0, 0};
    SearchOptions j1;
    j1.jobs = 1;
    SearchOptions j4;
    j4.jobs = 4;
    SearchResult a = FreeSearch(g, pred, j1).find_free(8);
    SearchResult b = FreeSearch(g, pred, j4).find_free(8);
    CHECK(a.counterexample.has_value() == b.counterexample.has_value());
    if (a.counterexample) CHECK(*a.counterexample == *b.counterexample);
    CHECK(a.stats.nodes == b.stats.nodes);
    CHECK(a.stats.prunes == b.stats.prunes);

    SearchResult ca = FreeSearch(g, pred, j1).collect_free(6);
    SearchResult cb = FreeSearch(g, pred, j4).collect_free(6);
    CHECK(ca.collected == cb.collected);
}

TEST_CASE("search: budget aborts with resumable checkpoint") {
    GroupTable g = mdic(8, 3);
    FreePredicate pred{FreePredicate::Kind::AllLengths, 0, 0};
    SearchOptions full;
    full.use_symmetry = false;
    SearchResult complete = FreeSearch(g, pred, full).max_free(40);

    SearchOptions tight = full;
    tight.node_budget = 2000;
    SearchResult partial = FreeSearch(g, pred, tight).max_free(40);
    CHECK(partial.budget_limited);
    REQUIRE_FALSE(partial.checkpoint_json.empty());

    SearchOptions resumed = full;
    resumed.resume_json = partial.checkpoint_json;
    SearchResult rest = FreeSearch(g, pred, resumed).max_free(40);
    CHECK_FALSE(rest.budget_limited);
    CHECK(rest.max_free_length == complete.max_free_length);
}
