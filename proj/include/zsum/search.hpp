#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "zsum/sequence.hpp"
#include "zsum/subproduct.hpp"

namespace zsum {

// "Free" in the sense of lacking a product-one subsequence whose length
// falls in a forbidden set. The four invariant searches instantiate it as:
//   d (SmallDavenport):  all lengths forbidden
//   eta:                 lengths 1..exp(G) forbidden
//   s (EGZ):             exactly exp(G) forbidden
//   E (Gao):             exactly |G| forbidden (optionally |G|-exp too,
//                        see SearchOptions::assume_egz_value)
struct FreePredicate {
    enum class Kind { AllLengths, UpTo, Exact, ExactPair };
    Kind kind = Kind::AllLengths;
    int k1 = 0;
    int k2 = 0;

    // Whether S.e remains free given the exact profile of a free S.
    bool child_free(const SubproductDp& dp, ElementId e) const;
    // Direct (non-incremental) check of a whole sequence.
    bool holds(const GroupTable& g, const Sequence& s, uint64_t state_cap) const;
};

struct SearchOptions {
    uint64_t node_budget = std::numeric_limits<uint64_t>::max();
    int jobs = 1;
    uint64_t seed = 0;
    uint64_t state_cap = 1ull << 22;
    bool use_symmetry = true;
    const std::vector<Permutation>* automorphisms = nullptr;  // computed if null
    std::string checkpoint_path;       // empty: no checkpointing
    uint64_t checkpoint_interval = 1ull << 22;  // nodes between snapshot writes
    std::string resume_json;           // checkpoint content to resume from

    // For Gao-kind searches only: the exhaustively verified value of s(G),
    // enabling the sound combination prune (an exp(G)-product-one subsequence
    // plus a guaranteed disjoint one in any completion). 0 = disabled.
    int verified_egz_value = 0;
};

struct SearchStats {
    uint64_t nodes = 0;   // DFS descents into free children
    uint64_t prunes = 0;  // children rejected because the predicate fired
    int max_depth = 0;
    double wall_ms = 0.0;
    uint64_t seed = 0;
};

struct SearchResult {
    std::optional<Sequence> counterexample;  // find mode
    std::vector<Sequence> collected;         // collect mode (canonical reps)
    int max_free_length = 0;                 // max-depth mode
    std::optional<Sequence> deepest;
    SearchStats stats;
    bool budget_limited = false;
    std::string checkpoint_json;  // written state when budget_limited
};

class FreeSearch {
public:
    FreeSearch(const GroupTable& g, FreePredicate pred, SearchOptions opt);

    // Lexicographically least free multiset of the given length, if any.
    SearchResult find_free(int target_len);
    // All canonical representatives of free multisets of the given length.
    SearchResult collect_free(int target_len);
    // Maximum length of a free multiset, with one witness of that length.
    SearchResult max_free(int depth_cap);

private:
    struct Mode;
    SearchResult run(int target_len, bool collect, bool max_depth, int depth_cap);

    const GroupTable* group_;
    FreePredicate pred_;
    SearchOptions opt_;
    std::vector<Permutation> auts_storage_;
    const std::vector<Permutation>* auts_ = nullptr;
    std::vector<char> canonical_pair_;  // order x order
    std::vector<char> canonical_single_;
};

}  // namespace zsum
