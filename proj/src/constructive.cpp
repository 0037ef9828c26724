#include "zsum/constructive.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "zsum/subproduct.hpp"

namespace zsum {

namespace {

int mod(long long a, int n) {
    long long r = a % n;
    return static_cast<int>(r < 0 ? r + n : r);
}

// inverse of a mod n, requiring gcd(a, n) = 1
std::optional<int> mod_inverse(int a, int n) {
    long long t = 0, nt = 1, r = n, nr = mod(a, n);
    while (nr != 0) {
        long long q = r / nr;
        std::swap(t -= q * nt, nt);
        std::swap(r -= q * nr, nr);
    }
    if (r != 1) return std::nullopt;
    return mod(t, n);
}

const GroupSpec& proof_spec(const GroupTable& g) {
    if (!g.spec() || g.spec()->family != Family::ModifiedDicyclic)
        throw InvalidParams("this operation applies to the ModifiedDicyclic family only");
    return *g.spec();
}

}  // namespace

std::optional<std::vector<int>> zero_sum_subset(int n, std::span<const int> residues, int k) {
    if (n < 1 || k < 0) throw InvalidParams("zero_sum_subset: bad parameters");
    const int m = static_cast<int>(residues.size());
    if (k > m) return std::nullopt;
    if (k == 0) return std::vector<int>{};
    // reach[i][j][r]: some j-subset of the first i entries sums to r
    auto at = [&](int i, int j, int r) -> size_t {
        return (static_cast<size_t>(i) * (k + 1) + j) * n + r;
    };
    std::vector<char> reach(static_cast<size_t>(m + 1) * (k + 1) * n, 0);
    reach[at(0, 0, 0)] = 1;
    for (int i = 0; i < m; ++i) {
        int v = mod(residues[i], n);
        for (int j = 0; j <= k; ++j)
            for (int r = 0; r < n; ++r) {
                if (!reach[at(i, j, r)]) continue;
                reach[at(i + 1, j, r)] = 1;
                if (j < k) reach[at(i + 1, j + 1, (r + v) % n)] = 1;
            }
    }
    if (!reach[at(m, k, 0)]) return std::nullopt;
    std::vector<int> idx;
    int j = k, r = 0;
    for (int i = m; i > 0; --i) {
        if (reach[at(i - 1, j, r)]) continue;  // entry i-1 not taken
        int v = mod(residues[i - 1], n);
        idx.push_back(i - 1);
        --j;
        r = (r - v % n + n) % n;
    }
    std::reverse(idx.begin(), idx.end());
    return idx;
}

std::vector<int> egz_extract_cyclic(int n, std::span<const int> residues) {
    if (static_cast<int>(residues.size()) < 2 * n - 1)
        throw InvalidParams("egz_extract_cyclic needs at least 2n-1 entries");
    auto idx = zero_sum_subset(n, residues, n);
    if (!idx) throw Error("EGZ extraction found no zero-sum subset; this is a bug");
    return *idx;
}

std::pair<int, int> cyclic_inverse_structure(int n, std::span<const int> residues, int k) {
    if (k < 2 || k > n / 2 + 2) throw InvalidParams("cyclic_inverse_structure: k out of range");
    if (static_cast<int>(residues.size()) != 2 * n - k)
        throw InvalidParams("cyclic_inverse_structure: wrong sequence length");
    std::map<int, int> mult;
    for (int r : residues) ++mult[mod(r, n)];
    // two most frequent values; ties resolved toward the smaller value
    std::pair<int, int> best{-1, -1};  // (value, count)
    std::pair<int, int> second{-1, -1};
    for (auto [v, c] : mult) {
        if (c > best.second) {
            second = best;
            best = {v, c};
        } else if (c > second.second) {
            second = {v, c};
        }
    }
    if (second.second < 0) throw StructureViolation("fewer than two distinct values");
    int a = best.first, b = second.first;
    if (std::min(best.second, second.second) < n - 2 * k + 3)
        throw StructureViolation("multiplicity bound n - 2k + 3 fails");
    if (best.second + second.second < 2 * n - 2 * k + 2)
        throw StructureViolation("combined multiplicity bound 2n - 2k + 2 fails");
    if (std::gcd(mod(a - b, n), n) != 1)
        throw StructureViolation("a - b does not generate Z_n");
    return {a, b};
}

std::vector<int> PairDecomposition::unit_residues() const {
    std::vector<int> out;
    out.reserve(units.size());
    for (const Unit& u : units) out.push_back(u.residue);
    return out;
}

PairDecomposition pair_decompose(const GroupTable& g, const Sequence& s) {
    const GroupSpec& spec = proof_spec(g);
    const int n = spec.n;
    if (n % 4 != 0) throw InvalidParams("pair_decompose requires n = 0 (mod 4)");
    // sanity: the encoding of L = <y^2> as C_{n/2} via y^(2t) -> t
    if (g.element_order(2) != n / 2) throw Error("unexpected order of y^2");

    // coset of L: ids < n split by parity into L / yL; ids >= n into xL / xyL
    auto coset = [&](ElementId e) { return e < n ? e % 2 : 2 + (e - n) % 2; };
    std::array<std::vector<ElementId>, 4> bucket;
    for (ElementId e : s.terms()) bucket[coset(e)].push_back(e);

    PairDecomposition out;
    for (auto& terms : bucket) {
        size_t i = 0;
        for (; i + 1 < terms.size(); i += 2) {
            ElementId p = g.mul(terms[i], terms[i + 1]);
            if (p >= n || p % 2 != 0) throw Error("unit product fell outside <y^2>");
            out.units.push_back({{terms[i], terms[i + 1]}, p / 2});
        }
        if (i < terms.size()) out.remainder.push_back(terms[i]);
    }
    return out;
}

Certificate lemma41_combine(const GroupTable& g, std::span<const Unit> a_units,
                            std::span<const Unit> b_units, int a, int b,
                            std::span<const ElementId> t0_ordered, int c) {
    const GroupSpec& spec = proof_spec(g);
    const int n2 = spec.n / 2;
    for (const Unit& u : a_units)
        if (mod(u.residue, n2) != mod(a, n2)) throw InvalidParams("a-unit with wrong product");
    for (const Unit& u : b_units)
        if (mod(u.residue, n2) != mod(b, n2)) throw InvalidParams("b-unit with wrong product");
    auto inv = mod_inverse(a - b, n2);
    if (!inv) throw NoSolution("gcd(a - b, n/2) != 1");
    int l = mod(static_cast<long long>(*inv) * (2 * b - c), n2);
    int need_b = n2 - 2 - l;
    if (l > static_cast<int>(a_units.size()) || need_b < 0 ||
        need_b > static_cast<int>(b_units.size()))
        throw NoSolution("combination congruence needs more units than available");

    Certificate cert{&g, {t0_ordered.begin(), t0_ordered.end()}};
    for (int i = 0; i < l; ++i) {
        cert.terms.push_back(a_units[i].terms[0]);
        cert.terms.push_back(a_units[i].terms[1]);
    }
    for (int i = 0; i < need_b; ++i) {
        cert.terms.push_back(b_units[i].terms[0]);
        cert.terms.push_back(b_units[i].terms[1]);
    }
    if (!cert.verify())
        throw Error("lemma41_combine certificate failed its self-check");
    return cert;
}

std::string extract_method_name(ExtractMethod m) {
    return m == ExtractMethod::Proof ? "proof" : "search";
}

ExtractMethod extract_method_from_name(const std::string& name) {
    if (name == "proof") return ExtractMethod::Proof;
    if (name == "search") return ExtractMethod::Search;
    throw InvalidParams("unknown extraction method: " + name);
}

namespace {

Certificate proof_extract(const GroupTable& g, const Sequence& s,
                          std::vector<std::string>& trace) {
    const int n = g.spec()->n;
    const int n2 = n / 2;

    Sequence s2n = s;
    if (s.length() > 2 * n) {
        std::vector<ElementId> terms = s.terms();
        terms.resize(2 * n);
        s2n = Sequence::of(g, terms);
        trace.push_back("restricted to a 2n-term subsequence");
    }

    PairDecomposition pd = pair_decompose(g, s2n);
    trace.push_back("pair decomposition: " + std::to_string(pd.units.size()) + " units, " +
                    std::to_string(pd.remainder.size()) + " remainder terms");

    std::vector<int> res = pd.unit_residues();
    if (auto z = zero_sum_subset(n2, res, n2)) {
        trace.push_back("EGZ finish over the unit residues");
        Certificate cert{&g, {}};
        for (int i : *z) {
            cert.terms.push_back(pd.units[i].terms[0]);
            cert.terms.push_back(pd.units[i].terms[1]);
        }
        if (!cert.verify()) throw Error("EGZ-route certificate failed its self-check");
        return cert;
    }

    if (static_cast<int>(pd.units.size()) != n - 2)
        throw StructureViolation("surplus units yet no zero-sum subset among their products");
    if (pd.remainder.size() != 4)
        throw StructureViolation("remainder is not a 4-term one-per-coset sequence");

    auto [a, b] = cyclic_inverse_structure(n2, res, 2);
    trace.push_back("unit products have the inverse structure a=" + std::to_string(a) +
                    ", b=" + std::to_string(b));
    std::vector<Unit> a_units, b_units;
    for (const Unit& u : pd.units)
        (u.residue == a ? a_units : b_units).push_back(u);

    // orderings of U0 realizing each product y^(2c) in pi(U0), |U0|! <= 24
    std::vector<ElementId> t0 = pd.remainder;
    std::sort(t0.begin(), t0.end());
    std::optional<std::string> last_failure;
    do {
        ElementId p = evaluate_word(g, t0);
        if (p >= n || p % 2 != 0)
            throw StructureViolation("U0 has a full product outside <y^2>");
        int c = p / 2;
        try {
            Certificate cert = lemma41_combine(g, a_units, b_units, a, b, t0, c);
            trace.push_back("combination finish with c=" + std::to_string(c));
            return cert;
        } catch (const NoSolution& e) {
            last_failure = e.what();
        }
    } while (std::next_permutation(t0.begin(), t0.end()));
    throw NoSolution(last_failure ? *last_failure : "no usable product of U0");
}

Certificate search_extract(const GroupTable& g, const Sequence& s, int k, uint64_t state_cap,
                           uint64_t seed, std::vector<std::string>& trace) {
    try {
        SubproductDp dp(g, state_cap, /*full_memo=*/true);
        dp.push_all(s);
        auto w = dp.extract_product_one(k);
        if (!w) throw NoSolution("no n-product-one subsequence exists");
        trace.push_back("exact memoized search");
        return Certificate{&g, *w};
    } catch (const BudgetExceeded&) {
        for (int shuffles : {32, 128, 512, 2048, 8192}) {
            auto cert = find_k_product_one_heuristic(g, s, k, shuffles, seed);
            if (cert) {
                trace.push_back("heuristic finder (" + std::to_string(shuffles) + " orderings)");
                return *cert;
            }
        }
        throw ExtractionFailed("state space too large and the heuristic finder gave up");
    }
}

}  // namespace

ExtractionResult extract_n_product_one(const GroupTable& g, const Sequence& s,
                                       ExtractMethod method, uint64_t state_cap, uint64_t seed) {
    const GroupSpec& spec = proof_spec(g);
    const int n = spec.n;
    if (s.length() < 2 * n) throw InvalidParams("extraction needs |S| >= 2n");

    ExtractionResult out;
    out.method_used = method;
    if (method == ExtractMethod::Proof) {
        if (n % 4 != 0) {
            out.branch_trace.push_back("no proof pipeline for n = 2 (mod 4); using search");
            out.method_used = ExtractMethod::Search;
        } else {
            try {
                out.certificate = proof_extract(g, s, out.branch_trace);
            } catch (const StructureViolation& e) {
                out.branch_trace.push_back(std::string("hypothesis failed (") + e.what() +
                                           "); using search");
                out.method_used = ExtractMethod::Search;
            } catch (const NoSolution& e) {
                out.branch_trace.push_back(std::string("combination failed (") + e.what() +
                                           "); using search");
                out.method_used = ExtractMethod::Search;
            }
        }
    }
    if (out.method_used == ExtractMethod::Search)
        out.certificate = search_extract(g, s, n, state_cap, seed, out.branch_trace);

    if (out.certificate.length() != n || !out.certificate.verify(&s))
        throw Error("extracted certificate failed its final self-check");
    return out;
}

}  // namespace zsum
