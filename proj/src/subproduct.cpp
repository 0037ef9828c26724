#include "zsum/subproduct.hpp"

#include <algorithm>
#include <random>

namespace zsum {

SubproductDp::SubproductDp(const GroupTable& g, uint64_t state_cap, bool full_memo)
    : group_(&g),
      state_cap_(state_cap),
      order_(g.order()),
      words_((g.order() + 63) / 64),
      abelian_(g.is_abelian() && !full_memo) {
    rmul_.resize(static_cast<size_t>(order_) * order_);
    for (int e = 0; e < order_; ++e)
        for (int h = 0; h < order_; ++h)
            rmul_[static_cast<size_t>(e) * order_ + h] = g.mul(h, e);
    rows_.assign(words_, 0);
    rows_[static_cast<size_t>(g.identity()) / 64] |= 1ull << (g.identity() % 64);
    union_.assign(words_, 0);
    if (!abelian_) pi_ = rows_;  // state 0 = pi(empty) = {1}
}

void SubproductDp::accumulate_rmul(uint64_t* dst, const uint64_t* src, ElementId g) const {
    const ElementId* perm = rmul_.data() + static_cast<size_t>(g) * order_;
    for (int w = 0; w < words_; ++w) {
        uint64_t bits = src[w];
        while (bits) {
            int b = std::countr_zero(bits);
            bits &= bits - 1;
            ElementId to = perm[w * 64 + b];
            dst[static_cast<size_t>(to) / 64] |= 1ull << (to % 64);
        }
    }
}

void SubproductDp::push(ElementId e) {
    Undo u;
    u.old_states = states_;
    u.rows_snapshot = rows_;
    u.union_snapshot = union_;

    // extend rows storage by one length
    rows_.resize(static_cast<size_t>(length_ + 2) * words_, 0);
    for (int w = 0; w < words_; ++w) rows_[static_cast<size_t>(length_ + 1) * words_ + w] = 0;

    if (abelian_) {
        u.new_digit = false;
        for (int len = length_ + 1; len >= 1; --len)
            accumulate_rmul(row(len), row(len - 1), e);
    } else {
        uint64_t block;
        if (!digits_.empty() && digits_.back().elem == e) {
            u.new_digit = false;
            block = digits_.back().base;
            digits_.back().radix += 1;
        } else {
            u.new_digit = true;
            digits_.push_back({e, 2, states_});
            block = states_;
        }
        uint64_t new_states = states_ + block;
        if (new_states > state_cap_)
            throw BudgetExceeded("subproduct DP state count would exceed cap");
        pi_.resize(new_states * words_, 0);

        const int ndig = static_cast<int>(digits_.size());
        std::vector<int> dig(ndig, 0);  // odometer over lower digits; top digit fixed
        dig[ndig - 1] = digits_.back().radix - 1;
        int lower_sum = 0;
        for (uint64_t q = 0; q < block; ++q) {
            const uint64_t idx = states_ + q;
            uint64_t* out = pi_.data() + idx * words_;
            for (int w = 0; w < words_; ++w) out[w] = 0;
            for (int j = 0; j < ndig; ++j) {
                if (dig[j] == 0) continue;
                const uint64_t* src = pi_.data() + (idx - digits_[j].base) * words_;
                accumulate_rmul(out, src, digits_[j].elem);
            }
            int len = lower_sum + dig[ndig - 1];
            uint64_t* r = row(len);
            for (int w = 0; w < words_; ++w) r[w] |= out[w];
            // odometer over digits 0..ndig-2
            for (int j = 0; j + 1 < ndig; ++j) {
                if (++dig[j] < digits_[j].radix) {
                    ++lower_sum;
                    break;
                }
                lower_sum -= digits_[j].radix - 1;
                dig[j] = 0;
            }
        }
        states_ = new_states;
    }
    ++length_;
    for (int len = 1; len <= length_; ++len) {
        const uint64_t* r = row(len);
        for (int w = 0; w < words_; ++w) union_[w] |= r[w];
    }
    undo_.push_back(std::move(u));
}

void SubproductDp::pop() {
    Undo& u = undo_.back();
    if (!abelian_) {
        if (u.new_digit)
            digits_.pop_back();
        else
            digits_.back().radix -= 1;
        pi_.resize(u.old_states * words_);
        states_ = u.old_states;
    }
    rows_ = std::move(u.rows_snapshot);
    union_ = std::move(u.union_snapshot);
    --length_;
    undo_.pop_back();
}

void SubproductDp::push_all(const Sequence& s) {
    for (ElementId e : s.support())
        for (int i = 0; i < s.mult[e]; ++i) push(e);
}

bool SubproductDp::row_contains(int len, ElementId h) const {
    if (len < 0 || len > length_) return false;
    return (row(len)[static_cast<size_t>(h) / 64] >> (h % 64)) & 1;
}

bool SubproductDp::union_contains(ElementId h) const {
    return (union_[static_cast<size_t>(h) / 64] >> (h % 64)) & 1;
}

std::vector<ElementId> SubproductDp::row_elements(int len) const {
    std::vector<ElementId> out;
    for (int h = 0; h < order_; ++h)
        if (row_contains(len, h)) out.push_back(h);
    return out;
}

bool SubproductDp::creates_product_one_at(int k, ElementId e) const {
    if (k < 1 || k > length_ + 1) return false;
    if (k <= length_ && row_contains(k, group_->identity())) return true;
    if (k == 1) return e == group_->identity();
    return row_contains(k - 1, group_->inv(e));
}

bool SubproductDp::creates_any_product_one(ElementId e) const {
    if (e == group_->identity()) return true;
    if (union_contains(group_->identity())) return true;
    return union_contains(group_->inv(e));
}

std::optional<std::vector<ElementId>> SubproductDp::extract_product_one(int k) const {
    if (abelian_)
        throw InvalidParams("extract_product_one requires the full per-sub-multiset memo");
    if (k < 1 || k > length_) return std::nullopt;
    const ElementId one = group_->identity();
    auto has = [&](uint64_t st, ElementId h) {
        return (pi_[st * words_ + static_cast<size_t>(h) / 64] >> (h % 64)) & 1;
    };
    for (uint64_t st = 0; st < states_; ++st) {
        int sum = 0;
        for (const Digit& d : digits_) sum += static_cast<int>((st / d.base) % d.radix);
        if (sum != k || !has(st, one)) continue;
        // walk the memo backwards: h in pi(T) came from h*g^-1 in pi(T - g)
        std::vector<ElementId> out;
        uint64_t cur = st;
        ElementId h = one;
        for (int left = k; left > 0; --left) {
            bool stepped = false;
            for (const Digit& d : digits_) {
                if ((cur / d.base) % d.radix == 0) continue;
                ElementId p = group_->mul(h, group_->inv(d.elem));
                if (!has(cur - d.base, p)) continue;
                out.push_back(d.elem);
                cur -= d.base;
                h = p;
                stepped = true;
                break;
            }
            if (!stepped) return std::nullopt;  // memo inconsistency; unreachable
        }
        std::reverse(out.begin(), out.end());
        return out;
    }
    return std::nullopt;
}

std::vector<ElementId> product_set(const GroupTable& g, const Sequence& s, uint64_t state_cap) {
    if (s.length() < 1) throw InvalidParams("product_set requires |S| >= 1");
    SubproductDp dp(g, state_cap);
    dp.push_all(s);
    return dp.row_elements(dp.length());
}

SubproductProfile subproduct_profile(const GroupTable& g, const Sequence& s,
                                     uint64_t state_cap) {
    SubproductDp dp(g, state_cap);
    dp.push_all(s);
    SubproductProfile p;
    p.length = dp.length();
    p.order = g.order();
    p.exact = true;
    p.reachable.assign(static_cast<size_t>(p.length) * g.order(), 0);
    for (int len = 1; len <= p.length; ++len)
        for (int h = 0; h < g.order(); ++h)
            if (dp.row_contains(len, h))
                p.reachable[static_cast<size_t>(len - 1) * g.order() + h] = 1;
    return p;
}

bool is_product_one_free(const GroupTable& g, const Sequence& s, uint64_t state_cap) {
    SubproductDp dp(g, state_cap);
    dp.push_all(s);
    return !dp.union_contains(g.identity());
}

bool has_k_product_one(const GroupTable& g, const Sequence& s, int k, uint64_t state_cap) {
    if (k < 1 || k > s.length()) throw InvalidParams("k out of range");
    SubproductDp dp(g, state_cap);
    dp.push_all(s);
    return dp.row_contains(k, g.identity());
}

bool has_short_product_one(const GroupTable& g, const Sequence& s, uint64_t state_cap) {
    SubproductDp dp(g, state_cap);
    dp.push_all(s);
    int bound = std::min(g.exponent(), s.length());
    for (int j = 1; j <= bound; ++j)
        if (dp.row_contains(j, g.identity())) return true;
    return false;
}

bool append_free_check(const GroupTable& g, std::span<const ElementId> known_pi, ElementId e) {
    if (e == g.identity()) return false;
    ElementId target = g.inv(e);
    return std::find(known_pi.begin(), known_pi.end(), target) == known_pi.end();
}

namespace {

// Take/skip DP over one fixed ordering; backtracks a certificate on success.
std::optional<Certificate> fixed_order_k_product_one(const GroupTable& g,
                                                     std::span<const ElementId> terms, int k) {
    const int n = static_cast<int>(terms.size());
    const int order = g.order();
    if (k > n) return std::nullopt;
    // reach[i][c][h]: using a subset of the first i terms, c of them taken,
    // ordered product h
    std::vector<char> reach(static_cast<size_t>(n + 1) * (k + 1) * order, 0);
    auto at = [&](int i, int c, ElementId h) -> char& {
        return reach[(static_cast<size_t>(i) * (k + 1) + c) * order + h];
    };
    at(0, 0, g.identity()) = 1;
    for (int i = 0; i < n; ++i)
        for (int c = 0; c <= std::min(i, k); ++c)
            for (int h = 0; h < order; ++h) {
                if (!at(i, c, h)) continue;
                at(i + 1, c, h) = 1;
                if (c < k) at(i + 1, c + 1, g.mul(h, terms[i])) = 1;
            }
    if (!at(n, k, g.identity())) return std::nullopt;
    Certificate cert;
    cert.group = &g;
    int c = k;
    ElementId h = g.identity();
    for (int i = n; i > 0; --i) {
        if (at(i - 1, c, h)) continue;  // term i-1 skipped
        ElementId prev = g.mul(h, g.inv(terms[i - 1]));
        cert.terms.push_back(terms[i - 1]);
        h = prev;
        --c;
    }
    std::reverse(cert.terms.begin(), cert.terms.end());
    return cert;
}

}  // namespace

std::optional<Certificate> find_k_product_one_heuristic(const GroupTable& g, const Sequence& s,
                                                        int k, int shuffles, uint64_t seed) {
    if (k < 1 || k > s.length()) return std::nullopt;
    std::vector<ElementId> terms = s.terms();
    std::mt19937_64 rng(seed);
    for (int round = 0; round < std::max(1, shuffles); ++round) {
        if (round > 0) std::shuffle(terms.begin(), terms.end(), rng);
        auto cert = fixed_order_k_product_one(g, terms, k);
        if (cert && cert->verify(&s)) return cert;
    }
    return std::nullopt;
}

SubproductProfile subproduct_profile_sampled(const GroupTable& g, const Sequence& s,
                                             int shuffles, uint64_t seed) {
    const int n = s.length();
    const int order = g.order();
    SubproductProfile p;
    p.length = n;
    p.order = order;
    p.exact = false;
    p.reachable.assign(static_cast<size_t>(n) * order, 0);
    std::vector<ElementId> terms = s.terms();
    std::mt19937_64 rng(seed);
    for (int round = 0; round < std::max(1, shuffles); ++round) {
        if (round > 0) std::shuffle(terms.begin(), terms.end(), rng);
        // reach[c][h] over a scan of the fixed ordering
        std::vector<char> reach(static_cast<size_t>(n + 1) * order, 0);
        reach[g.identity()] = 1;
        for (int i = 0; i < n; ++i)
            for (int c = std::min(i, n - 1); c >= 0; --c)
                for (int h = 0; h < order; ++h)
                    if (reach[static_cast<size_t>(c) * order + h])
                        reach[static_cast<size_t>(c + 1) * order + g.mul(h, terms[i])] = 1;
        for (int c = 1; c <= n; ++c)
            for (int h = 0; h < order; ++h)
                if (reach[static_cast<size_t>(c) * order + h])
                    p.reachable[static_cast<size_t>(c - 1) * order + h] = 1;
    }
    return p;
}

}  // namespace zsum
