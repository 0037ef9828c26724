#include "zsum/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <mutex>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <json.hpp>

namespace zsum {

using nlohmann::json;

bool FreePredicate::child_free(const SubproductDp& dp, ElementId e) const {
    switch (kind) {
        case Kind::AllLengths:
            return !dp.creates_any_product_one(e);
        case Kind::UpTo: {
            int bound = std::min(k1, dp.length() + 1);
            for (int j = 1; j <= bound; ++j)
                if (dp.creates_product_one_at(j, e)) return false;
            return true;
        }
        case Kind::Exact:
            return !dp.creates_product_one_at(k1, e);
        case Kind::ExactPair:
            return !dp.creates_product_one_at(k1, e) && !dp.creates_product_one_at(k2, e);
    }
    return true;
}

bool FreePredicate::holds(const GroupTable& g, const Sequence& s, uint64_t state_cap) const {
    SubproductDp dp(g, state_cap);
    dp.push_all(s);
    const ElementId one = g.identity();
    switch (kind) {
        case Kind::AllLengths:
            return !dp.union_contains(one);
        case Kind::UpTo:
            for (int j = 1; j <= std::min(k1, dp.length()); ++j)
                if (dp.row_contains(j, one)) return false;
            return true;
        case Kind::Exact:
            return !dp.row_contains(k1, one);
        case Kind::ExactPair:
            return !dp.row_contains(k1, one) && !dp.row_contains(k2, one);
    }
    return true;
}

namespace {

struct TaskOutcome {
    uint64_t nodes = 0;
    uint64_t prunes = 0;
    int max_depth = 0;
    bool completed = false;
    bool skipped = false;  // find mode: preempted by an earlier task
    std::optional<Sequence> found;
    std::optional<Sequence> deepest;
    std::vector<Sequence> collected;
    std::vector<ElementId> abort_path;  // in-task path (beyond the root pair)
};

json sequence_to_json(const Sequence& s) { return json(s.mult); }

Sequence sequence_from_json(const GroupTable& g, const json& j) {
    Sequence s(g);
    auto v = j.get<std::vector<int>>();
    if (static_cast<int>(v.size()) != g.order()) throw SchemaError("bad multiplicity vector");
    s.mult = std::move(v);
    return s;
}

}  // namespace

FreeSearch::FreeSearch(const GroupTable& g, FreePredicate pred, SearchOptions opt)
    : group_(&g), pred_(pred), opt_(std::move(opt)) {
    const int order = g.order();
    if (opt_.use_symmetry) {
        if (opt_.automorphisms) {
            auts_ = opt_.automorphisms;
        } else {
            try {
                auts_storage_ = automorphisms(g);
                auts_ = &auts_storage_;
            } catch (const BoundExceeded&) {
                opt_.use_symmetry = false;
            }
        }
    }
    canonical_single_.assign(order, 1);
    canonical_pair_.assign(static_cast<size_t>(order) * order, 1);
    if (opt_.use_symmetry && auts_) {
        for (const Permutation& sigma : *auts_) {
            for (int a = 0; a < order; ++a) {
                if (sigma[a] < a) canonical_single_[a] = 0;
                for (int b = a; b < order; ++b) {
                    auto [lo, hi] = std::minmax(sigma[a], sigma[b]);
                    if (lo < a || (lo == a && hi < b))
                        canonical_pair_[static_cast<size_t>(a) * order + b] = 0;
                }
            }
        }
    }
}

struct FreeSearch::Mode {
    bool find = false;
    bool collect = false;
    bool max = false;
    int target = 0;
    int depth_cap = 0;
};

SearchResult FreeSearch::find_free(int target_len) { return run(target_len, false, false, 0); }
SearchResult FreeSearch::collect_free(int target_len) { return run(target_len, true, false, 0); }
SearchResult FreeSearch::max_free(int depth_cap) { return run(0, false, true, depth_cap); }

SearchResult FreeSearch::run(int target_len, bool collect, bool max_depth, int depth_cap) {
    const auto t0 = std::chrono::steady_clock::now();
    const GroupTable& g = *group_;
    const int order = g.order();
    Mode mode{!collect && !max_depth, collect, max_depth, target_len,
              max_depth ? depth_cap : target_len};

    SearchResult result;
    result.stats.seed = opt_.seed;

    // Degenerate targets handled without task decomposition.
    if (!mode.max && target_len <= 1) {
        SubproductDp dp(g, opt_.state_cap);
        if (target_len == 1) {
            for (ElementId e = 0; e < order; ++e) {
                if (!canonical_single_[e]) continue;
                ++result.stats.nodes;
                if (!pred_.child_free(dp, e)) {
                    ++result.stats.prunes;
                    continue;
                }
                Sequence s(g);
                s.add(e);
                if (mode.find) {
                    result.counterexample = s;
                    break;
                }
                result.collected.push_back(s);
            }
        }
        auto t1 = std::chrono::steady_clock::now();
        result.stats.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        return result;
    }

    // Root tasks: canonical non-decreasing pairs.
    std::vector<std::pair<ElementId, ElementId>> tasks;
    for (ElementId a = 0; a < order; ++a)
        for (ElementId b = a; b < order; ++b)
            if (canonical_pair_[static_cast<size_t>(a) * order + b]) tasks.emplace_back(a, b);
    const int ntasks = static_cast<int>(tasks.size());

    std::vector<TaskOutcome> outcomes(ntasks);
    std::vector<char> restored(ntasks, 0);
    std::vector<std::vector<ElementId>> resume_paths(ntasks);

    if (!opt_.resume_json.empty()) {
        json ck = json::parse(opt_.resume_json);
        for (const auto& rec : ck.value("completed", json::array())) {
            int t = rec.at("task").get<int>();
            if (t < 0 || t >= ntasks) continue;
            TaskOutcome& o = outcomes[t];
            o.completed = true;
            o.nodes = rec.at("nodes").get<uint64_t>();
            o.prunes = rec.at("prunes").get<uint64_t>();
            o.max_depth = rec.value("max_depth", 0);
            if (rec.contains("found") && !rec["found"].is_null())
                o.found = sequence_from_json(g, rec["found"]);
            if (rec.contains("deepest") && !rec["deepest"].is_null())
                o.deepest = sequence_from_json(g, rec["deepest"]);
            for (const auto& sj : rec.value("collected", json::array()))
                o.collected.push_back(sequence_from_json(g, sj));
            restored[t] = 1;
        }
        for (const auto& rec : ck.value("pending", json::array())) {
            int t = rec.at("task").get<int>();
            if (t < 0 || t >= ntasks) continue;
            resume_paths[t] = rec.at("path").get<std::vector<ElementId>>();
        }
    }

    std::atomic<uint64_t> nodes_used{0};
    for (int t = 0; t < ntasks; ++t)
        if (restored[t]) nodes_used += outcomes[t].nodes;
    std::atomic<long> best_task{ntasks};  // find mode early stop
    std::atomic<bool> budget_hit{false};
    std::mutex ckpt_mutex;
    std::vector<std::vector<ElementId>> live_paths(ntasks);  // for snapshots

    auto write_checkpoint = [&](bool include_live) {
        if (opt_.checkpoint_path.empty()) return;
        json ck;
        ck["tasks_total"] = ntasks;
        json done = json::array();
        for (int t = 0; t < ntasks; ++t) {
            if (!outcomes[t].completed) continue;
            json rec;
            rec["task"] = t;
            rec["nodes"] = outcomes[t].nodes;
            rec["prunes"] = outcomes[t].prunes;
            rec["max_depth"] = outcomes[t].max_depth;
            if (outcomes[t].found) rec["found"] = sequence_to_json(*outcomes[t].found);
            if (outcomes[t].deepest) rec["deepest"] = sequence_to_json(*outcomes[t].deepest);
            if (!outcomes[t].collected.empty()) {
                json c = json::array();
                for (const auto& s : outcomes[t].collected) c.push_back(sequence_to_json(s));
                rec["collected"] = c;
            }
            done.push_back(rec);
        }
        ck["completed"] = done;
        json pending = json::array();
        if (include_live)
            for (int t = 0; t < ntasks; ++t)
                if (!live_paths[t].empty()) pending.push_back({{"task", t}, {"path", live_paths[t]}});
        ck["pending"] = pending;
        std::ofstream out(opt_.checkpoint_path);
        out << ck.dump();
    };

    auto run_task = [&](int ti) {
        TaskOutcome& out = outcomes[ti];
        if (mode.find && best_task.load(std::memory_order_relaxed) < ti) {
            out.skipped = true;
            return;
        }
        auto [g1, g2] = tasks[ti];
        SubproductDp dp(g, opt_.state_cap);
        std::vector<ElementId> path;
        uint64_t next_snapshot = opt_.checkpoint_interval;
        const std::vector<ElementId>& resume = resume_paths[ti];
        bool aborted = false;

        // DFS over free extensions; returns true to stop the whole task.
        auto dfs = [&](auto&& self, int last, bool resuming) -> bool {
            const int depth = static_cast<int>(path.size()) + 2;
            if (!mode.max && depth == mode.target) {
                Sequence s(g);
                s.add(g1);
                s.add(g2);
                for (ElementId e : path) s.add(e);
                if (mode.find) {
                    out.found = std::move(s);
                    return true;
                }
                out.collected.push_back(std::move(s));
                return false;
            }
            if (mode.max) {
                if (depth > out.max_depth) {
                    out.max_depth = depth;
                    Sequence s(g);
                    s.add(g1);
                    s.add(g2);
                    for (ElementId e : path) s.add(e);
                    out.deepest = std::move(s);
                }
                if (depth >= mode.depth_cap)
                    throw Error("free-sequence DFS exceeded its depth cap");
            }
            const int path_depth = static_cast<int>(path.size());
            ElementId start = last;
            if (resuming && path_depth < static_cast<int>(resume.size()))
                start = std::max(start, resume[path_depth]);
            for (ElementId e = start; e < order; ++e) {
                if (mode.find && best_task.load(std::memory_order_relaxed) < ti) {
                    aborted = true;  // preempted; outcome will be discarded
                    return true;
                }
                if (budget_hit.load(std::memory_order_relaxed)) {
                    out.abort_path = path;
                    aborted = true;
                    return true;
                }
                if (!pred_.child_free(dp, e)) {
                    ++out.prunes;
                    continue;
                }
                uint64_t used = nodes_used.fetch_add(1, std::memory_order_relaxed) + 1;
                ++out.nodes;
                if (used > opt_.node_budget) {
                    budget_hit.store(true);
                    out.abort_path = path;
                    aborted = true;
                    return true;
                }
                if (!opt_.checkpoint_path.empty() && out.nodes >= next_snapshot) {
                    next_snapshot += opt_.checkpoint_interval;
                    std::lock_guard<std::mutex> lock(ckpt_mutex);
                    live_paths[ti] = path;
                    write_checkpoint(true);
                }
                dp.push(e);
                path.push_back(e);
                bool on_resume_path = resuming &&
                                      path_depth < static_cast<int>(resume.size()) &&
                                      e == resume[path_depth];
                bool stop = self(self, e, on_resume_path);
                path.pop_back();
                dp.pop();
                if (stop) return true;
            }
            return false;
        };

        // Root pair must itself be free.
        bool prefix_free = false;
        if (pred_.child_free(dp, g1)) {
            ++out.nodes;
            nodes_used.fetch_add(1, std::memory_order_relaxed);
            dp.push(g1);
            if (pred_.child_free(dp, g2)) {
                ++out.nodes;
                nodes_used.fetch_add(1, std::memory_order_relaxed);
                dp.push(g2);
                prefix_free = true;
            } else {
                ++out.prunes;
            }
        } else {
            ++out.prunes;
        }
        if (prefix_free) {
            if (mode.max && 2 > out.max_depth) {
                out.max_depth = 2;
                Sequence s(g);
                s.add(g1);
                s.add(g2);
                out.deepest = s;
            }
            dfs(dfs, g2, !resume.empty());
        }
        if (!aborted) {
            out.completed = true;
            if (mode.find && out.found) {
                long expect = best_task.load();
                while (ti < expect && !best_task.compare_exchange_weak(expect, ti)) {
                }
            }
        }
        {
            std::lock_guard<std::mutex> lock(ckpt_mutex);
            live_paths[ti].clear();
        }
    };

#ifdef _OPENMP
    int nthreads = std::max(1, opt_.jobs);
#pragma omp parallel for schedule(dynamic, 1) num_threads(nthreads)
    for (int ti = 0; ti < ntasks; ++ti) {
        if (restored[ti]) continue;
        run_task(ti);
    }
#else
    for (int ti = 0; ti < ntasks; ++ti) {
        if (restored[ti]) continue;
        run_task(ti);
    }
#endif

    // Merge deterministically by task index.
    if (mode.find) {
        long best = ntasks;
        for (int t = 0; t < ntasks; ++t)
            if (outcomes[t].completed && outcomes[t].found) {
                best = t;
                break;
            }
        for (int t = 0; t < ntasks && t <= best; ++t) {
            if (t == best || outcomes[t].completed) {
                result.stats.nodes += outcomes[t].nodes;
                result.stats.prunes += outcomes[t].prunes;
            }
        }
        if (best < ntasks) result.counterexample = outcomes[best].found;
    } else {
        for (int t = 0; t < ntasks; ++t) {
            result.stats.nodes += outcomes[t].nodes;
            result.stats.prunes += outcomes[t].prunes;
            if (mode.collect)
                for (auto& s : outcomes[t].collected) result.collected.push_back(std::move(s));
            if (mode.max) {
                if (outcomes[t].max_depth > result.max_free_length ||
                    (outcomes[t].max_depth == result.max_free_length && !result.deepest)) {
                    if (outcomes[t].deepest) {
                        result.max_free_length = outcomes[t].max_depth;
                        result.deepest = outcomes[t].deepest;
                    }
                }
            }
        }
        if (mode.max) {
            // depth-1 and depth-0 free sequences are not covered by pair tasks
            SubproductDp dp(g, opt_.state_cap);
            for (ElementId e = 0; e < order && result.max_free_length < 1; ++e) {
                if (!canonical_single_[e]) continue;
                if (pred_.child_free(dp, e)) {
                    result.max_free_length = 1;
                    Sequence s(g);
                    s.add(e);
                    result.deepest = s;
                }
            }
        }
    }
    result.budget_limited = budget_hit.load();
    if (result.budget_limited || mode.find) {
        // anything not completed and not skipped is pending work
    }
    if (mode.collect) {
        // canonicalize and dedup at orbit level
        if (opt_.use_symmetry && auts_) {
            for (auto& s : result.collected) s = canonical_form(s, *auts_);
        }
        std::sort(result.collected.begin(), result.collected.end());
        result.collected.erase(std::unique(result.collected.begin(), result.collected.end()),
                               result.collected.end());
    }
    {
        result.stats.max_depth = result.max_free_length;
        for (int t = 0; t < ntasks; ++t)
            if (!outcomes[t].completed && !outcomes[t].skipped && result.budget_limited)
                live_paths[t] = outcomes[t].abort_path;
        if (result.budget_limited) {
            json ck;
            ck["tasks_total"] = ntasks;
            json done = json::array();
            for (int t = 0; t < ntasks; ++t) {
                if (!outcomes[t].completed) continue;
                json rec{{"task", t},
                         {"nodes", outcomes[t].nodes},
                         {"prunes", outcomes[t].prunes},
                         {"max_depth", outcomes[t].max_depth}};
                if (outcomes[t].found) rec["found"] = sequence_to_json(*outcomes[t].found);
                if (outcomes[t].deepest) rec["deepest"] = sequence_to_json(*outcomes[t].deepest);
                if (!outcomes[t].collected.empty()) {
                    json c = json::array();
                    for (const auto& s : outcomes[t].collected) c.push_back(sequence_to_json(s));
                    rec["collected"] = c;
                }
                done.push_back(rec);
            }
            ck["completed"] = done;
            json pending = json::array();
            for (int t = 0; t < ntasks; ++t)
                if (!outcomes[t].completed && !outcomes[t].skipped)
                    pending.push_back({{"task", t}, {"path", outcomes[t].abort_path}});
            ck["pending"] = pending;
            result.checkpoint_json = ck.dump();
            if (!opt_.checkpoint_path.empty()) {
                std::ofstream outf(opt_.checkpoint_path);
                outf << result.checkpoint_json;
            }
        } else if (!opt_.checkpoint_path.empty()) {
            write_checkpoint(false);
        }
    }
    auto t1 = std::chrono::steady_clock::now();
    result.stats.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    return result;
}

}  // namespace zsum
