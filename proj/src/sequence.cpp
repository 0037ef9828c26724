#include "zsum/sequence.hpp"

#include <algorithm>
#include <numeric>

namespace zsum {

int Sequence::length() const { return std::accumulate(mult.begin(), mult.end(), 0); }

bool Sequence::contains(const Sequence& sub) const {
    for (size_t i = 0; i < mult.size(); ++i)
        if (sub.mult[i] > mult[i]) return false;
    return true;
}

std::vector<ElementId> Sequence::terms() const {
    std::vector<ElementId> out;
    for (size_t g = 0; g < mult.size(); ++g)
        for (int i = 0; i < mult[g]; ++i) out.push_back(static_cast<ElementId>(g));
    return out;
}

std::vector<ElementId> Sequence::support() const {
    std::vector<ElementId> out;
    for (size_t g = 0; g < mult.size(); ++g)
        if (mult[g] > 0) out.push_back(static_cast<ElementId>(g));
    return out;
}

Sequence Sequence::of(const GroupTable& g, std::span<const ElementId> terms) {
    Sequence s(g);
    for (ElementId e : terms) s.add(e);
    return s;
}

std::string Sequence::to_string() const {
    std::string out;
    for (size_t g = 0; g < mult.size(); ++g) {
        if (mult[g] == 0) continue;
        if (!out.empty()) out += " . ";
        out += group->label(static_cast<ElementId>(g));
        if (mult[g] > 1) out += "^[" + std::to_string(mult[g]) + "]";
    }
    return out.empty() ? "(empty)" : out;
}

bool Certificate::verify(const Sequence* within) const {
    if (!group) return false;
    if (evaluate_word(*group, terms) != group->identity()) return false;
    if (within) {
        Sequence used = Sequence::of(*group, terms);
        if (!within->contains(used)) return false;
    }
    return true;
}

CosetProfile coset_profile(const GroupTable& g, const Sequence& s, const Subgroup& l,
                           std::array<ElementId, 4> reps) {
    // the four cosets rep_i * L must partition G
    std::vector<int> coset_of(g.order(), -1);
    for (int i = 0; i < 4; ++i)
        for (ElementId e : l.elements) {
            ElementId p = g.mul(reps[i], e);
            if (coset_of[p] >= 0) throw RepsNotTransversal("coset representatives overlap");
            coset_of[p] = i;
        }
    for (int e = 0; e < g.order(); ++e)
        if (coset_of[e] < 0) throw RepsNotTransversal("cosets do not cover the group");
    CosetProfile out;
    for (int e = 0; e < g.order(); ++e) out.counts[coset_of[e]] += s.mult[e];
    return out;
}

Sequence canonical_form(const Sequence& s, std::span<const Permutation> auts) {
    const GroupTable& g = *s.group;
    Sequence best = s;
    Sequence image(g);
    for (const Permutation& sigma : auts) {
        std::fill(image.mult.begin(), image.mult.end(), 0);
        for (int e = 0; e < g.order(); ++e) image.mult[sigma[e]] = s.mult[e];
        if (image < best) best = image;
    }
    return best;
}

}  // namespace zsum
