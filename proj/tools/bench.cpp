// Compares the serial reference oracle against the pruned DFS engine at one
// and several worker threads on small landmark computations.
#include <chrono>
#include <cstdio>
#include <functional>

#include "zsum/invariants.hpp"
#include "zsum/reference.hpp"
#include "zsum/search.hpp"

using namespace zsum;
using Clock = std::chrono::steady_clock;

namespace {

double time_ms(const std::function<void()>& fn) {
    auto t0 = Clock::now();
    fn();
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

void bench_max_free(const GroupTable& g, const char* name, bool with_reference) {
    std::printf("max free length over %s (order %d)\n", name, g.order());
    int serial = -1, engine1 = -1, engine4 = -1;
    if (with_reference) {
        double ms = time_ms([&] { serial = max_free_length_naive(g, 2 * g.order()); });
        std::printf("  serial reference       %8.1f ms  -> %d\n", ms, serial);
    }
    FreePredicate pred{FreePredicate::Kind::AllLengths, 0, 0};
    for (int jobs : {1, 4}) {
        SearchOptions opts;
        opts.jobs = jobs;
        FreeSearch search(g, pred, opts);
        SearchResult r;
        double ms = time_ms([&] { r = search.max_free(2 * g.order()); });
        std::printf("  engine jobs=%d          %8.1f ms  -> %d  (%llu nodes)\n", jobs, ms,
                    r.max_free_length, static_cast<unsigned long long>(r.stats.nodes));
        (jobs == 1 ? engine1 : engine4) = r.max_free_length;
    }
    if (with_reference && (serial != engine1 || serial != engine4))
        std::printf("  MISMATCH: serial %d vs engine %d / %d\n", serial, engine1, engine4);
}

void bench_universal(const GroupTable& g, const char* name, InvariantKind kind, int length) {
    std::printf("universal %s check at length %d over %s\n", invariant_name(kind).c_str(),
                length, name);
    for (int jobs : {1, 4}) {
        SearchOptions opts;
        opts.jobs = jobs;
        SearchStats stats;
        bool none = false;
        double ms = time_ms([&] { none = !universal_check(g, length, kind, opts, &stats); });
        std::printf("  engine jobs=%d          %8.1f ms  -> %s  (%llu nodes)\n", jobs, ms,
                    none ? "none" : "counterexample",
                    static_cast<unsigned long long>(stats.nodes));
    }
}

}  // namespace

int main() {
    GroupTable c9 = GroupTable::build({Family::Cyclic, 9, 0});
    bench_max_free(c9, "C9", true);

    GroupTable q8 = GroupTable::build({Family::Dicyclic, 2, 0});
    bench_max_free(q8, "Q8", true);

    GroupTable g83 = GroupTable::build({Family::ModifiedDicyclic, 8, 3});
    bench_max_free(g83, "mdic(8,3)", false);
    bench_universal(g83, "mdic(8,3)", InvariantKind::Eta, 9);
    bench_universal(g83, "mdic(8,3)", InvariantKind::EGZ, 16);
    return 0;
}
