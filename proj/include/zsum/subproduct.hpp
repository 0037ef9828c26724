#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "zsum/sequence.hpp"

namespace zsum {

// Exact subproduct reachability for a multiset S over G, maintained
// incrementally as terms are pushed and popped (DFS-friendly).
//
// Internally memoizes pi(T) for every sub-multiset T of the current S as a
// bit-vector over G, keyed by a mixed-radix index over multiplicities. Rows
// aggregate them by length: row(l) = Pi_l(S). For abelian groups only the
// rows are kept (insertion order is irrelevant there, so the row recursion
// is already exact).
//
// Membership checks for a prospective extension S.g rely on the rotation
// closure of product-one orderings: 1 in pi(T.g) iff g^-1 in pi(T).
class SubproductDp {
public:
    static constexpr uint64_t kDefaultStateCap = 1ull << 24;

    // full_memo forces the per-sub-multiset memo even for abelian groups,
    // which extract_product_one needs for backtracking.
    explicit SubproductDp(const GroupTable& g, uint64_t state_cap = kDefaultStateCap,
                          bool full_memo = false);

    const GroupTable& group() const { return *group_; }
    int length() const { return length_; }
    uint64_t states() const { return states_; }

    void push(ElementId e);  // throws BudgetExceeded when the memo would exceed the cap
    void pop();
    void push_all(const Sequence& s);

    // h in Pi_len(current S); false for len outside [1, length()].
    bool row_contains(int len, ElementId h) const;
    // h in Pi(current S) = union of all rows.
    bool union_contains(ElementId h) const;
    std::vector<ElementId> row_elements(int len) const;

    // 1 in Pi_k(S.e), evaluated without pushing e.
    bool creates_product_one_at(int k, ElementId e) const;
    // 1 in Pi(S.e), evaluated without pushing e.
    bool creates_any_product_one(ElementId e) const;

    // An ordered k-term witness with product one, recovered by walking the
    // memo backwards; nullopt if 1 is not in Pi_k(S). Needs full_memo mode
    // when the group is abelian.
    std::optional<std::vector<ElementId>> extract_product_one(int k) const;

private:
    struct Digit {
        ElementId elem;
        int radix;       // multiplicity + 1
        uint64_t base;   // stride of this digit in the state index
    };
    struct Undo {
        bool new_digit;
        uint64_t old_states;
        std::vector<uint64_t> rows_snapshot;  // rows 0..old_length
        std::vector<uint64_t> union_snapshot;
    };

    uint64_t* row(int len) { return rows_.data() + static_cast<size_t>(len) * words_; }
    const uint64_t* row(int len) const { return rows_.data() + static_cast<size_t>(len) * words_; }
    void accumulate_rmul(uint64_t* dst, const uint64_t* src, ElementId g) const;

    const GroupTable* group_;
    uint64_t state_cap_;
    int order_ = 0;
    int words_ = 0;
    bool abelian_ = false;
    int length_ = 0;

    std::vector<ElementId> rmul_;   // rmul_[g*order + h] = h*g
    std::vector<Digit> digits_;     // support, most recent last (most significant)
    uint64_t states_ = 1;           // product of radices
    std::vector<uint64_t> pi_;      // states_ x words_ (non-abelian only)
    std::vector<uint64_t> rows_;    // (length_+1) x words_; row 0 = {identity}
    std::vector<uint64_t> union_;   // union of rows 1..length_
    std::vector<Undo> undo_;
};

// pi(S): products of all of S over all orderings. Requires |S| >= 1.
std::vector<ElementId> product_set(const GroupTable& g, const Sequence& s,
                                   uint64_t state_cap = SubproductDp::kDefaultStateCap);

struct SubproductProfile {
    int length = 0;
    bool exact = true;
    int order = 0;
    // reachable[(l-1)*order + h] for l in [1, length]
    std::vector<char> reachable;

    bool contains(int len, ElementId h) const {
        if (len < 1 || len > length) return false;
        return reachable[static_cast<size_t>(len - 1) * order + h] != 0;
    }
};

SubproductProfile subproduct_profile(const GroupTable& g, const Sequence& s,
                                     uint64_t state_cap = SubproductDp::kDefaultStateCap);

// Sound but possibly incomplete profile from `shuffles` random fixed-order
// passes; a set bit always means membership.
SubproductProfile subproduct_profile_sampled(const GroupTable& g, const Sequence& s,
                                             int shuffles, uint64_t seed);

bool is_product_one_free(const GroupTable& g, const Sequence& s,
                         uint64_t state_cap = SubproductDp::kDefaultStateCap);
bool has_k_product_one(const GroupTable& g, const Sequence& s, int k,
                       uint64_t state_cap = SubproductDp::kDefaultStateCap);
bool has_short_product_one(const GroupTable& g, const Sequence& s,
                           uint64_t state_cap = SubproductDp::kDefaultStateCap);

// Given known_pi = Pi(S) for a product-one free S, decide whether S.g is
// still product-one free: g != 1 and g^-1 not in known_pi.
bool append_free_check(const GroupTable& g, std::span<const ElementId> known_pi, ElementId e);

// Sound-but-incomplete finder: fixed-order take/skip DP over `shuffles`
// random orderings. A returned certificate always verifies; absence of a
// result proves nothing.
std::optional<Certificate> find_k_product_one_heuristic(const GroupTable& g, const Sequence& s,
                                                        int k, int shuffles, uint64_t seed = 0);

}  // namespace zsum
