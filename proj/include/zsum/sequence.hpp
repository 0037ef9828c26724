#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "zsum/group.hpp"

namespace zsum {

// A sequence over G in the multiset sense: multiplicity vector indexed by
// ElementId. Order of terms is disregarded.
struct Sequence {
    const GroupTable* group = nullptr;
    std::vector<int> mult;

    explicit Sequence(const GroupTable& g) : group(&g), mult(g.order(), 0) {}
    Sequence() = default;

    int length() const;
    int multiplicity(ElementId g) const { return mult[g]; }
    void add(ElementId g, int count = 1) { mult[g] += count; }
    void remove(ElementId g, int count = 1) { mult[g] -= count; }
    bool contains(const Sequence& sub) const;  // sub | this
    std::vector<ElementId> terms() const;      // expanded, sorted by id
    std::vector<ElementId> support() const;

    bool operator==(const Sequence& o) const { return mult == o.mult; }
    bool operator<(const Sequence& o) const { return mult < o.mult; }

    static Sequence of(const GroupTable& g, std::span<const ElementId> terms);
    // Convenience for labels: {"y", 7} style pairs are built by callers.
    std::string to_string() const;
};

// Ordered witness that some subsequence multiplies to the identity.
struct Certificate {
    const GroupTable* group = nullptr;
    std::vector<ElementId> terms;  // ordered

    int length() const { return static_cast<int>(terms.size()); }
    // product == 1, and terms form a subsequence of `within` when given.
    bool verify(const Sequence* within = nullptr) const;
};

// Counts of terms of S in the cosets L, rep1*L, rep2*L, rep3*L. The four
// representatives must form a transversal of L in G (throws otherwise).
struct CosetProfile {
    std::array<int, 4> counts{};
    int total() const { return counts[0] + counts[1] + counts[2] + counts[3]; }
};

CosetProfile coset_profile(const GroupTable& g, const Sequence& s, const Subgroup& l,
                           std::array<ElementId, 4> reps);

// Lexicographically least multiplicity vector over the orbit of S under the
// given automorphisms. Idempotent, constant on orbits.
Sequence canonical_form(const Sequence& s, std::span<const Permutation> auts);

}  // namespace zsum
