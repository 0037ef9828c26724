#include "zsum/group.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace zsum {

namespace {

int mod(long long a, int m) {
    long long r = a % m;
    return static_cast<int>(r < 0 ? r + m : r);
}

}  // namespace

std::string family_name(Family f) {
    switch (f) {
        case Family::ModifiedDicyclic: return "mdic";
        case Family::Cyclic: return "cyclic";
        case Family::Dicyclic: return "dicyclic";
        case Family::C2xC2n: return "c2xc2n";
    }
    return "?";
}

Family family_from_name(const std::string& name) {
    if (name == "mdic") return Family::ModifiedDicyclic;
    if (name == "cyclic") return Family::Cyclic;
    if (name == "dicyclic") return Family::Dicyclic;
    if (name == "c2xc2n") return Family::C2xC2n;
    throw SchemaError("unknown group family: " + name);
}

int GroupSpec::order() const {
    switch (family) {
        case Family::ModifiedDicyclic: return 2 * n;
        case Family::Cyclic: return n;
        case Family::Dicyclic: return 4 * n;
        case Family::C2xC2n: return 4 * n;
    }
    return 0;
}

int GroupSpec::n1() const { return std::gcd(n, s + 1); }
int GroupSpec::n2() const { return n / n1(); }

std::vector<int> GroupSpec::valid_s_values(int n) {
    std::vector<int> out;
    if (n < 8 || n % 2 != 0) return out;
    for (int s = 0; s < n; ++s) {
        if (mod(static_cast<long long>(s) * s, n) != 1) continue;
        if (s == 1 || s == n - 1) continue;
        out.push_back(s);
    }
    return out;
}

void GroupSpec::validate() const {
    switch (family) {
        case Family::ModifiedDicyclic: {
            if (n < 2 || n % 2 != 0)
                throw InvalidParams("ModifiedDicyclic requires even n");
            auto valid = valid_s_values(n);
            if (valid.empty())
                throw NoValidS("no valid s for n = " + std::to_string(n) +
                               " (n is twice an odd prime power)");
            int sm = mod(s, n);
            if (std::find(valid.begin(), valid.end(), sm) == valid.end()) {
                if (mod(static_cast<long long>(sm) * sm, n) != 1)
                    throw InvalidParams("s^2 != 1 (mod n)");
                throw InvalidParams("s = +-1 (mod n) is not allowed");
            }
            break;
        }
        case Family::Cyclic:
            if (n < 1) throw InvalidParams("Cyclic requires n >= 1");
            break;
        case Family::Dicyclic:
            if (n < 2) throw InvalidParams("Dicyclic requires n >= 2");
            break;
        case Family::C2xC2n:
            if (n < 1) throw InvalidParams("C2xC2n requires n >= 1");
            break;
    }
    if (order() > GroupTable::kOrderCap)
        throw InvalidParams("group order exceeds cap of " +
                            std::to_string(GroupTable::kOrderCap));
}

GroupTable GroupTable::build(const GroupSpec& spec) {
    spec.validate();
    GroupTable g;
    g.spec_ = spec;
    const int n = spec.n;
    switch (spec.family) {
        case Family::ModifiedDicyclic: {
            // i < n encodes y^i, n+i encodes x*y^i
            const int s = mod(spec.s, n);
            g.order_ = 2 * n;
            g.mul_.assign(static_cast<size_t>(g.order_) * g.order_, 0);
            auto at = [&](int a, int b) -> ElementId& {
                return g.mul_[static_cast<size_t>(a) * g.order_ + b];
            };
            for (int a = 0; a < n; ++a) {
                for (int b = 0; b < n; ++b) {
                    at(a, b) = mod(a + b, n);                                  // y^a y^b
                    at(a, n + b) = n + mod(static_cast<long long>(a) * s + b, n);  // y^a xy^b
                    at(n + a, b) = n + mod(a + b, n);                          // xy^a y^b
                    at(n + a, n + b) =
                        mod(n / 2 + static_cast<long long>(a) * s + b, n);     // xy^a xy^b
                }
            }
            g.labels_.resize(g.order_);
            for (int i = 0; i < n; ++i) {
                g.labels_[i] = i == 0 ? "1" : (i == 1 ? "y" : "y^" + std::to_string(i));
                g.labels_[n + i] = i == 0 ? "x" : "x*y^" + std::to_string(i);
            }
            break;
        }
        case Family::Cyclic: {
            g.order_ = n;
            g.mul_.assign(static_cast<size_t>(n) * n, 0);
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) g.mul_[static_cast<size_t>(a) * n + b] = mod(a + b, n);
            g.labels_.resize(n);
            for (int i = 0; i < n; ++i)
                g.labels_[i] = i == 0 ? "1" : (i == 1 ? "y" : "y^" + std::to_string(i));
            break;
        }
        case Family::Dicyclic: {
            // Q_4n from the presentation x^2 = y^n, y^(2n) = 1, yx = xy^-1.
            // i < 2n encodes y^i, 2n+i encodes x*y^i.
            const int m = 2 * n;
            g.order_ = 4 * n;
            g.mul_.assign(static_cast<size_t>(g.order_) * g.order_, 0);
            auto at = [&](int a, int b) -> ElementId& {
                return g.mul_[static_cast<size_t>(a) * g.order_ + b];
            };
            for (int a = 0; a < m; ++a) {
                for (int b = 0; b < m; ++b) {
                    at(a, b) = mod(a + b, m);
                    at(a, m + b) = m + mod(b - a, m);       // y^a x = x y^-a
                    at(m + a, b) = m + mod(a + b, m);
                    at(m + a, m + b) = mod(n - a + b, m);   // x y^a x y^b = y^(n-a+b)
                }
            }
            g.labels_.resize(g.order_);
            for (int i = 0; i < m; ++i) {
                g.labels_[i] = i == 0 ? "1" : (i == 1 ? "y" : "y^" + std::to_string(i));
                g.labels_[m + i] = i == 0 ? "x" : "x*y^" + std::to_string(i);
            }
            break;
        }
        case Family::C2xC2n: {
            // (i, j) with i < 2, j < 2n; index = i*2n + j. a has order 2, b order 2n.
            const int m = 2 * n;
            g.order_ = 4 * n;
            g.mul_.assign(static_cast<size_t>(g.order_) * g.order_, 0);
            for (int i1 = 0; i1 < 2; ++i1)
                for (int j1 = 0; j1 < m; ++j1)
                    for (int i2 = 0; i2 < 2; ++i2)
                        for (int j2 = 0; j2 < m; ++j2)
                            g.mul_[static_cast<size_t>(i1 * m + j1) * g.order_ + (i2 * m + j2)] =
                                ((i1 + i2) % 2) * m + mod(j1 + j2, m);
            g.labels_.resize(g.order_);
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < m; ++j) {
                    std::string lbl;
                    if (i == 1) lbl = "a";
                    if (j > 0) {
                        if (!lbl.empty()) lbl += "*";
                        lbl += j == 1 ? "b" : "b^" + std::to_string(j);
                    }
                    if (lbl.empty()) lbl = "1";
                    g.labels_[i * m + j] = lbl;
                }
            break;
        }
    }
    g.finish();
    return g;
}

GroupTable GroupTable::from_tables(std::vector<ElementId> mul, int order,
                                   std::vector<std::string> labels) {
    if (order <= 0 || order > kOrderCap) throw InvalidParams("bad order");
    if (mul.size() != static_cast<size_t>(order) * order) throw InvalidParams("bad table size");
    GroupTable g;
    g.order_ = order;
    g.mul_ = std::move(mul);
    g.labels_ = std::move(labels);
    if (g.labels_.empty()) {
        g.labels_.resize(order);
        for (int i = 0; i < order; ++i) g.labels_[i] = "g" + std::to_string(i);
    }
    g.finish();
    return g;
}

void GroupTable::finish() {
    // locate identity
    identity_ = -1;
    for (int e = 0; e < order_; ++e) {
        bool ok = true;
        for (int a = 0; a < order_ && ok; ++a)
            ok = mul(e, a) == a && mul(a, e) == a;
        if (ok) {
            identity_ = e;
            break;
        }
    }
    if (identity_ < 0) throw InvalidParams("table has no identity");
    inv_.assign(order_, -1);
    for (int a = 0; a < order_; ++a)
        for (int b = 0; b < order_; ++b)
            if (mul(a, b) == identity_) inv_[a] = b;
    for (int a = 0; a < order_; ++a)
        if (inv_[a] < 0) throw InvalidParams("table has non-invertible element");

    elem_order_.assign(order_, 1);
    exponent_ = 1;
    for (int a = 0; a < order_; ++a) {
        int k = 1;
        ElementId p = a;
        while (p != identity_) {
            p = mul(p, a);
            ++k;
        }
        elem_order_[a] = k;
        exponent_ = static_cast<int>(std::lcm(exponent_, k));
    }
    abelian_ = true;
    for (int a = 0; a < order_ && abelian_; ++a)
        for (int b = a + 1; b < order_; ++b)
            if (mul(a, b) != mul(b, a)) {
                abelian_ = false;
                break;
            }
}

ElementId GroupTable::power(ElementId g, long long k) const {
    if (k < 0) {
        g = inv(g);
        k = -k;
    }
    ElementId r = identity_;
    ElementId base = g;
    while (k > 0) {
        if (k & 1) r = mul(r, base);
        base = mul(base, base);
        k >>= 1;
    }
    return r;
}

ElementId GroupTable::element_by_label(const std::string& label) const {
    for (int i = 0; i < order_; ++i)
        if (labels_[i] == label) return i;
    throw UnknownLabel("unknown element label: " + label);
}

bool GroupTable::check_axioms() const {
    for (int a = 0; a < order_; ++a)
        for (int b = 0; b < order_; ++b)
            for (int c = 0; c < order_; ++c)
                if (mul(mul(a, b), c) != mul(a, mul(b, c))) return false;
    for (int a = 0; a < order_; ++a) {
        if (mul(identity_, a) != a || mul(a, identity_) != a) return false;
        if (mul(a, inv(a)) != identity_ || mul(inv(a), a) != identity_) return false;
    }
    return true;
}

ElementId evaluate_word(const GroupTable& g, std::span<const ElementId> word) {
    ElementId p = g.identity();
    for (ElementId e : word) {
        if (e < 0 || e >= g.order()) throw InvalidParams("element id out of range");
        p = g.mul(p, e);
    }
    return p;
}

bool Subgroup::contains(ElementId g) const {
    return std::binary_search(elements.begin(), elements.end(), g);
}

Subgroup subgroup_generated(const GroupTable& g, std::span<const ElementId> gens) {
    std::vector<char> in(g.order(), 0);
    std::vector<ElementId> frontier{g.identity()};
    in[g.identity()] = 1;
    for (ElementId e : gens)
        if (!in[e]) {
            in[e] = 1;
            frontier.push_back(e);
        }
    // closure under multiplication by generators (and inverses via finiteness)
    for (size_t i = 0; i < frontier.size(); ++i) {
        for (ElementId e : gens) {
            ElementId p = g.mul(frontier[i], e);
            if (!in[p]) {
                in[p] = 1;
                frontier.push_back(p);
            }
            p = g.mul(e, frontier[i]);
            if (!in[p]) {
                in[p] = 1;
                frontier.push_back(p);
            }
        }
    }
    Subgroup h;
    h.generators.assign(gens.begin(), gens.end());
    for (int e = 0; e < g.order(); ++e)
        if (in[e]) h.elements.push_back(e);
    h.is_normal = true;
    for (int a = 0; a < g.order() && h.is_normal; ++a)
        for (ElementId e : h.elements)
            if (!in[g.mul(g.mul(a, e), g.inv(a))]) {
                h.is_normal = false;
                break;
            }
    return h;
}

QuotientMap make_quotient(const GroupTable& g, const Subgroup& h) {
    if (!h.is_normal) throw NotNormal("subgroup is not normal");
    const int order = g.order();
    std::vector<ElementId> coset_of(order, -1);  // element -> coset index
    std::vector<ElementId> rep;                  // coset index -> representative
    for (int a = 0; a < order; ++a) {
        if (coset_of[a] >= 0) continue;
        int c = static_cast<int>(rep.size());
        rep.push_back(a);
        for (ElementId e : h.elements) coset_of[g.mul(a, e)] = c;
    }
    const int q = static_cast<int>(rep.size());
    std::vector<ElementId> qmul(static_cast<size_t>(q) * q);
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b)
            qmul[static_cast<size_t>(a) * q + b] = coset_of[g.mul(rep[a], rep[b])];
    std::vector<std::string> labels(q);
    for (int c = 0; c < q; ++c) labels[c] = "[" + g.label(rep[c]) + "]";
    return QuotientMap{&g, GroupTable::from_tables(std::move(qmul), q, std::move(labels)),
                       std::move(coset_of)};
}

std::vector<std::pair<ElementId, ElementId>> generator_pairs(const GroupTable& g) {
    if (!g.spec() || g.spec()->family != Family::ModifiedDicyclic)
        throw InvalidParams("generator_pairs requires a ModifiedDicyclic group");
    const int n = g.spec()->n;
    const int s = g.spec()->s;
    std::vector<std::pair<ElementId, ElementId>> out;
    for (ElementId beta = 0; beta < g.order(); ++beta) {
        if (g.element_order(beta) != n) continue;
        ElementId beta_half = g.power(beta, n / 2);
        ElementId beta_s = g.power(beta, s);
        for (ElementId alpha = 0; alpha < g.order(); ++alpha) {
            if (g.mul(alpha, alpha) != beta_half) continue;
            if (g.mul(beta, alpha) != g.mul(alpha, beta_s)) continue;
            std::vector<ElementId> gens{alpha, beta};
            if (static_cast<int>(subgroup_generated(g, gens).elements.size()) != g.order())
                continue;
            out.emplace_back(alpha, beta);
        }
    }
    return out;
}

namespace {

// Greedy generating set: add elements while they enlarge the span.
std::vector<ElementId> small_generating_set(const GroupTable& g) {
    std::vector<ElementId> gens;
    std::vector<ElementId> span{g.identity()};
    for (int e = 0; e < g.order(); ++e) {
        if (std::find(span.begin(), span.end(), e) != span.end()) continue;
        gens.push_back(e);
        span = subgroup_generated(g, gens).elements;
        if (static_cast<int>(span.size()) == g.order()) break;
    }
    return gens;
}

}  // namespace

std::vector<Permutation> automorphisms(const GroupTable& g, int order_cap) {
    if (g.order() > order_cap)
        throw BoundExceeded("automorphism computation capped at order " +
                            std::to_string(order_cap));
    const int order = g.order();
    std::vector<ElementId> gens = small_generating_set(g);
    const int k = static_cast<int>(gens.size());

    // Express every element as a word in the generators (BFS).
    std::vector<std::vector<int>> word(order);  // indices into gens
    std::vector<char> seen(order, 0);
    seen[g.identity()] = 1;
    std::vector<ElementId> queue{g.identity()};
    for (size_t i = 0; i < queue.size(); ++i) {
        for (int j = 0; j < k; ++j) {
            ElementId p = g.mul(queue[i], gens[j]);
            if (!seen[p]) {
                seen[p] = 1;
                word[p] = word[queue[i]];
                word[p].push_back(j);
                queue.push_back(p);
            }
        }
    }

    std::vector<Permutation> out;
    std::vector<ElementId> images(k);
    std::vector<std::vector<ElementId>> candidates(k);
    for (int j = 0; j < k; ++j)
        for (int e = 0; e < order; ++e)
            if (g.element_order(e) == g.element_order(gens[j])) candidates[j].push_back(e);

    auto try_images = [&]() {
        Permutation phi(order);
        std::vector<char> hit(order, 0);
        for (int e = 0; e < order; ++e) {
            ElementId p = g.identity();
            for (int j : word[e]) p = g.mul(p, images[j]);
            phi[e] = p;
            if (hit[p]) return;  // not injective
            hit[p] = 1;
        }
        for (int a = 0; a < order; ++a)
            for (int b = 0; b < order; ++b)
                if (phi[g.mul(a, b)] != g.mul(phi[a], phi[b])) return;
        out.push_back(std::move(phi));
    };

    // odometer over candidate tuples
    std::vector<size_t> idx(k, 0);
    while (true) {
        for (int j = 0; j < k; ++j) images[j] = candidates[j][idx[j]];
        try_images();
        int j = k - 1;
        while (j >= 0 && ++idx[j] == candidates[j].size()) idx[j--] = 0;
        if (j < 0) break;
    }
    return out;
}

}  // namespace zsum
