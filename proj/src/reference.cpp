#include "zsum/reference.hpp"

#include <algorithm>

namespace zsum {

namespace {

std::vector<ElementId> sorted_terms(const Sequence& s) {
    std::vector<ElementId> t = s.terms();
    std::sort(t.begin(), t.end());
    return t;
}

std::vector<ElementId> bits_to_list(const std::vector<char>& hit) {
    std::vector<ElementId> out;
    for (size_t h = 0; h < hit.size(); ++h)
        if (hit[h]) out.push_back(static_cast<ElementId>(h));
    return out;
}

}  // namespace

std::vector<ElementId> product_set_naive(const GroupTable& g, const Sequence& s) {
    std::vector<ElementId> t = sorted_terms(s);
    std::vector<char> hit(g.order(), 0);
    do {
        ElementId p = g.identity();
        for (ElementId e : t) p = g.mul(p, e);
        hit[p] = 1;
    } while (std::next_permutation(t.begin(), t.end()));
    return bits_to_list(hit);
}

std::vector<ElementId> subproducts_naive(const GroupTable& g, const Sequence& s, int len) {
    std::vector<ElementId> t = sorted_terms(s);
    const int m = static_cast<int>(t.size());
    std::vector<char> hit(g.order(), 0);
    if (len < 1 || len > m) return {};
    std::vector<int> idx(len);
    // non-decreasing index combinations of distinct positions
    auto rec = [&](auto&& self, int d, int from) -> void {
        if (d == len) {
            Sequence sub(g);
            for (int i : idx) sub.add(t[i]);
            for (ElementId h : product_set_naive(g, sub)) hit[h] = 1;
            return;
        }
        for (int i = from; i < m; ++i) {
            if (i > from && t[i] == t[i - 1]) continue;  // skip equal-term duplicates
            idx[d] = i;
            self(self, d + 1, i + 1);
        }
    };
    rec(rec, 0, 0);
    return bits_to_list(hit);
}

bool is_product_one_free_naive(const GroupTable& g, const Sequence& s) {
    for (int len = 1; len <= s.length(); ++len) {
        auto reach = subproducts_naive(g, s, len);
        if (std::find(reach.begin(), reach.end(), g.identity()) != reach.end()) return false;
    }
    return true;
}

bool has_k_product_one_naive(const GroupTable& g, const Sequence& s, int k) {
    auto reach = subproducts_naive(g, s, k);
    return std::find(reach.begin(), reach.end(), g.identity()) != reach.end();
}

int max_free_length_naive(const GroupTable& g, int length_cap) {
    int best = 0;
    std::vector<ElementId> stack;
    auto rec = [&](auto&& self, ElementId from) -> void {
        if (static_cast<int>(stack.size()) > best) best = static_cast<int>(stack.size());
        if (static_cast<int>(stack.size()) == length_cap) return;
        for (ElementId e = from; e < g.order(); ++e) {
            stack.push_back(e);
            Sequence s = Sequence::of(g, stack);
            if (is_product_one_free_naive(g, s)) self(self, e);
            stack.pop_back();
        }
    };
    rec(rec, 0);
    return best;
}

int min_forcing_length_naive(const GroupTable& g, int k, int length_cap) {
    for (int len = k; len <= length_cap; ++len) {
        bool all_have = true;
        std::vector<ElementId> stack;
        auto rec = [&](auto&& self, ElementId from) -> bool {
            if (static_cast<int>(stack.size()) == len) {
                Sequence s = Sequence::of(g, stack);
                return has_k_product_one_naive(g, s, k);
            }
            for (ElementId e = from; e < g.order(); ++e) {
                stack.push_back(e);
                bool ok = self(self, e);
                stack.pop_back();
                if (!ok) return false;
            }
            return true;
        };
        all_have = rec(rec, 0);
        if (all_have) return len;
    }
    return 0;
}

}  // namespace zsum
