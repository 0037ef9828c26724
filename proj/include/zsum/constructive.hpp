#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "zsum/sequence.hpp"

namespace zsum {

// Indices of a k-subset of `residues` summing to 0 mod n, by exact DP over
// (prefix, count, residue) with backtracking; nullopt if none exists.
std::optional<std::vector<int>> zero_sum_subset(int n, std::span<const int> residues, int k);

// EGZ extraction over C_n: indices of n entries summing to 0 mod n.
// Requires |residues| >= 2n - 1, under which existence is guaranteed, so
// failure here is a bug, not a caller error.
std::vector<int> egz_extract_cyclic(int n, std::span<const int> residues);

// The structure of an n-sum-free sequence of length 2n - k over C_n: the
// two most frequent values (a, b), asserted to satisfy
//    min(v_a, v_b) >= n - 2k + 3,   v_a + v_b >= 2n - 2k + 2,
//    gcd(a - b, n) = 1.
// Throws StructureViolation if the bounds fail (the freeness precondition
// was false).
std::pair<int, int> cyclic_inverse_structure(int n, std::span<const int> residues, int k);

// A 2-term sub-multiset whose ordered product terms[0]*terms[1] = y^(2*residue)
// lies in L = <y^2>.
struct Unit {
    std::array<ElementId, 2> terms;
    int residue;  // mod n/2
};

struct PairDecomposition {
    std::vector<Unit> units;
    std::vector<ElementId> remainder;  // U0: terms left unpaired

    std::vector<int> unit_residues() const;
};

// Pair up same-coset terms of S within the cosets of L = <y^2>; the unit
// count meets the floor(m_i/2) sum bound by construction.
// ModifiedDicyclic with n = 0 (mod 4) only.
PairDecomposition pair_decompose(const GroupTable& g, const Sequence& s);

// The combination step: T0 (ordered, product y^(2c)) followed by l units of
// product y^(2a) and n/2 - 2 - l units of product y^(2b), where
// l = (a-b)^(-1) (2b - c) mod n/2. Throws NoSolution when gcd(a-b, n/2) != 1
// or l falls outside the available unit counts.
Certificate lemma41_combine(const GroupTable& g, std::span<const Unit> a_units,
                            std::span<const Unit> b_units, int a, int b,
                            std::span<const ElementId> t0_ordered, int c);

enum class ExtractMethod { Proof, Search };

std::string extract_method_name(ExtractMethod m);
ExtractMethod extract_method_from_name(const std::string& name);

struct ExtractionResult {
    Certificate certificate;
    ExtractMethod method_used = ExtractMethod::Proof;
    std::vector<std::string> branch_trace;
};

// A verified n-product-one certificate from S, |S| >= 2n.
// Proof method (n = 0 (mod 4)): pair_decompose, then either an EGZ finish
// over the unit residues or the inverse-structure + combination route; every
// hypothesis is re-checked at runtime and any violation falls back to
// Search with the branch recorded. Search: exact memoized DP when the state
// space fits, else the heuristic finder with escalating shuffle counts.
// Throws ExtractionFailed if Search exhausts its budget.
ExtractionResult extract_n_product_one(const GroupTable& g, const Sequence& s,
                                       ExtractMethod method,
                                       uint64_t state_cap = 1ull << 22, uint64_t seed = 0);

}  // namespace zsum
