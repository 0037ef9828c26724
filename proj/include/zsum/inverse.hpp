#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "zsum/search.hpp"

namespace zsum {

// The three extremal lengths with a structural characterization:
//   A: length s(G)-1 = 2n-1, n-product-one free
//   B: length E(G)-1 = 3n-1, 2n-product-one free
//   C: length eta(G)-1 = d(G) = n, product-one free
enum class NormalForm { A, B, C };

std::string normal_form_name(NormalForm which);
NormalForm normal_form_from_name(const std::string& name);

// Extremal length and the freeness predicate for each characterization.
int extremal_length(const GroupTable& g, NormalForm which);
FreePredicate extremal_predicate(const GroupTable& g, NormalForm which);

struct NormalFormWitness {
    ElementId alpha = 0;
    ElementId beta = 0;
    int t1 = 0, t2 = 0, t3 = 0;  // mod n; C uses t3 only (t1 = 1, t2 unused)
    NormalForm which = NormalForm::A;

    // The multiset the witness denotes:
    //   A: (b^t1)^[n-1] . (b^t2)^[n-1] . (a b^t3),  gcd(t1-t2, n) = 1
    //   B: (b^t1)^[2n-1] . (b^t2)^[n-1] . (a b^t3), gcd(t1-t2, n) = 1
    //   C: b^[n-1] . (a b^t3)
    Sequence instantiate(const GroupTable& g) const;
};

struct InverseReport {
    NormalForm which = NormalForm::A;
    std::vector<Sequence> enumerated_orbit_reps;
    std::vector<std::pair<Sequence, NormalFormWitness>> matched;
    std::vector<Sequence> unmatched_enumerated;
    std::vector<Sequence> characterized_but_not_free;
    SearchStats stats;
    bool forward_complete = false;  // enumeration finished within budget
    long backward_instances = 0;    // distinct characterized multisets checked

    bool verified() const {
        return forward_complete && unmatched_enumerated.empty() &&
               characterized_but_not_free.empty();
    }
};

// All canonical orbit representatives of extremal sequences for `which`.
// Throws BudgetExceeded (checkpointed) past opts.node_budget.
std::vector<Sequence> enumerate_extremal(const GroupTable& g, NormalForm which,
                                         const SearchOptions& opts = {},
                                         SearchStats* stats = nullptr);

// Does S literally equal a characterized multiset for some generator pair
// and exponent tuple (gcd side conditions enforced)?
std::optional<NormalFormWitness> match_normal_form(const GroupTable& g, const Sequence& s,
                                                   NormalForm which);

// All distinct characterized multisets (deduplicated across generator pairs
// and tuples).
std::vector<Sequence> normal_form_instances(const GroupTable& g, NormalForm which);

// Forward: every enumerated extremal matches a normal form. Backward: every
// normal-form instance is verified free by the DP oracle. A budget overrun
// during enumeration is reported via forward_complete = false instead of
// propagating, so the backward direction still runs.
InverseReport verify_inverse_theorem(const GroupTable& g, NormalForm which,
                                     const SearchOptions& opts = {});

}  // namespace zsum
