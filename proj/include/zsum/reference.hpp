#pragma once

#include "zsum/sequence.hpp"

namespace zsum {

// Straightforward serial implementations used as oracles in the tests and
// as the baseline side of the benchmark. They enumerate subsequences and
// orderings directly instead of memoizing, so they are only usable for
// short sequences, but they are obviously correct.

// pi(S) by enumerating all distinct permutations of S. |S| <= ~10.
std::vector<ElementId> product_set_naive(const GroupTable& g, const Sequence& s);

// All h attainable as an ordered product of some length-len subsequence.
std::vector<ElementId> subproducts_naive(const GroupTable& g, const Sequence& s, int len);

bool is_product_one_free_naive(const GroupTable& g, const Sequence& s);
bool has_k_product_one_naive(const GroupTable& g, const Sequence& s, int k);

// Largest L such that some multiset over G of size L has no nonempty
// product-one subsequence, by exhaustive enumeration of non-decreasing
// element lists. Feasible only for small groups.
int max_free_length_naive(const GroupTable& g, int length_cap);

// Smallest L <= length_cap such that every multiset of size L has a
// product-one subsequence of length exactly k; 0 if none found by the cap.
int min_forcing_length_naive(const GroupTable& g, int k, int length_cap);

}  // namespace zsum
