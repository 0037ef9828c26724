#pragma once

#include <map>
#include <optional>

#include "zsum/search.hpp"

namespace zsum {

// The four zero-sum constants, by the product-one subsequence each demands:
//   SmallDavenport d: any nonempty length
//   Eta:              some length in [1, exp(G)]
//   EGZ s:            length exactly exp(G)
//   Gao E:            length exactly |G|
enum class InvariantKind { SmallDavenport, Eta, EGZ, Gao };

std::string invariant_name(InvariantKind k);       // "d", "eta", "s", "E"
InvariantKind invariant_from_name(const std::string& name);

enum class ComputeMode { Exhaustive, WitnessOnly, Sampled };

std::string mode_name(ComputeMode m);
ComputeMode mode_from_name(const std::string& name);

struct InvariantReport {
    InvariantKind kind = InvariantKind::SmallDavenport;
    ComputeMode mode = ComputeMode::Exhaustive;
    std::optional<int> computed;
    std::optional<int> predicted;
    std::optional<Sequence> witness;  // extremal counterexample
    std::optional<int> universal_check_length;
    SearchStats stats;
    // Sampled mode only
    long samples = 0;
    long counterexamples_found = 0;
    long unresolved = 0;
};

// Closed-form values stated for the family; kinds without a stated value
// are absent from the map.
std::map<InvariantKind, int> predicted_invariants(const GroupSpec& spec);

// The freeness predicate whose counterexamples are the kind's extremal
// sequences. For Gao, opts.verified_egz_value (when > 0 and applicable at
// this length) strengthens the predicate with the combination prune: a
// partial with a (|G|-exp)-product-one subsequence cannot extend to a
// |G|-product-one-free sequence of the target length, since the remaining
// >= s(G) terms always supply a disjoint exp-length product-one.
FreePredicate predicate_for(const GroupTable& g, InvariantKind kind, int target_len,
                            int verified_egz_value);

// none <=> every multiset of this length over G has the required
// product-one subsequence; otherwise one counterexample (lex-least found).
// Throws BudgetExceeded (carrying a resume checkpoint) past opts.node_budget.
std::optional<Sequence> universal_check(const GroupTable& g, int length, InvariantKind kind,
                                        const SearchOptions& opts = {},
                                        SearchStats* stats = nullptr);

InvariantReport compute_invariant(const GroupTable& g, InvariantKind kind, ComputeMode mode,
                                  SearchOptions opts = {}, long samples = 100000);

struct InequalityReport {
    bool have_all = false;       // all four values available
    bool gao_lower_ok = false;   // E >= d + |G|
    bool egz_lower_ok = false;   // s >= eta + exp - 1
    bool equalities_apply = false;  // ModifiedDicyclic: both must be equalities
    bool gao_equality = false;
    bool egz_equality = false;
    bool ok = false;
};

InequalityReport verify_inequalities(const GroupTable& g,
                                     const std::vector<InvariantReport>& reports);

}  // namespace zsum
