#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "zsum/errors.hpp"

namespace zsum {

using ElementId = int;

enum class Family { ModifiedDicyclic, Cyclic, Dicyclic, C2xC2n };

std::string family_name(Family f);
Family family_from_name(const std::string& name);

// Parameters of one of the four supported group families.
//
// ModifiedDicyclic(n, s) is <x, y : x^2 = y^(n/2), y^n = 1, yx = xy^s> of
// order 2n, with s^2 = 1 (mod n) and s != +-1 (mod n). Dicyclic(n) is the
// dicyclic group Q_4n of order 4n built from the presentation
// <x, y : x^2 = y^n, y^(2n) = 1, yx = xy^-1>.
struct GroupSpec {
    Family family = Family::Cyclic;
    int n = 1;
    int s = 0;  // only meaningful for ModifiedDicyclic

    int order() const;
    // ModifiedDicyclic only: n1 = gcd(n, s+1), n2 = n / n1.
    int n1() const;
    int n2() const;

    // Throws InvalidParams / NoValidS on bad parameters.
    void validate() const;

    // All s in [0, n) with s^2 = 1 and s != +-1 (mod n). Empty exactly when
    // n is twice an odd prime power (or too small).
    static std::vector<int> valid_s_values(int n);

    bool operator==(const GroupSpec&) const = default;
};

// Immutable finite group given by dense multiplication/inverse tables.
class GroupTable {
public:
    static constexpr int kOrderCap = 4096;

    static GroupTable build(const GroupSpec& spec);
    // Arbitrary table (used for quotients). Checks group axioms lightly.
    static GroupTable from_tables(std::vector<ElementId> mul, int order,
                                  std::vector<std::string> labels);

    int order() const { return order_; }
    ElementId identity() const { return identity_; }
    ElementId mul(ElementId a, ElementId b) const { return mul_[static_cast<size_t>(a) * order_ + b]; }
    ElementId inv(ElementId a) const { return inv_[a]; }
    ElementId power(ElementId g, long long k) const;
    int element_order(ElementId g) const { return elem_order_[g]; }
    int exponent() const { return exponent_; }
    bool is_abelian() const { return abelian_; }
    const std::optional<GroupSpec>& spec() const { return spec_; }

    const std::string& label(ElementId g) const { return labels_[g]; }
    // Inverse of label(); throws UnknownLabel.
    ElementId element_by_label(const std::string& label) const;

    // Exhaustive check of associativity, identity and inverses. O(order^3).
    bool check_axioms() const;

    const std::vector<ElementId>& mul_table() const { return mul_; }

private:
    GroupTable() = default;
    void finish();  // derives inv, orders, exponent, abelian flag

    int order_ = 0;
    ElementId identity_ = 0;
    std::vector<ElementId> mul_;  // order x order, row-major
    std::vector<ElementId> inv_;
    std::vector<int> elem_order_;
    int exponent_ = 1;
    bool abelian_ = true;
    std::vector<std::string> labels_;
    std::optional<GroupSpec> spec_;
};

// Left-to-right product of a word; the empty word is the identity.
ElementId evaluate_word(const GroupTable& g, std::span<const ElementId> word);

struct Subgroup {
    std::vector<ElementId> elements;  // sorted
    std::vector<ElementId> generators;
    bool is_normal = false;

    bool contains(ElementId g) const;
};

Subgroup subgroup_generated(const GroupTable& g, std::span<const ElementId> gens);

struct QuotientMap {
    const GroupTable* source = nullptr;
    GroupTable quotient;
    std::vector<ElementId> projection;  // source element -> quotient element
};

// Throws NotNormal if h is not normal in g.
QuotientMap make_quotient(const GroupTable& g, const Subgroup& h);

// All ordered pairs (alpha, beta) satisfying the ModifiedDicyclic(n, s)
// presentation with generation: ord(beta) = n, alpha^2 = beta^(n/2),
// beta*alpha = alpha*beta^s, <alpha, beta> = G.
std::vector<std::pair<ElementId, ElementId>> generator_pairs(const GroupTable& g);

using Permutation = std::vector<ElementId>;

// All automorphisms, by brute force over generator images filtered by
// element order. Throws BoundExceeded above order_cap.
std::vector<Permutation> automorphisms(const GroupTable& g, int order_cap = 256);

}  // namespace zsum
