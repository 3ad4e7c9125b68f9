#include "prvass/explorer.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <stdexcept>
#include <unordered_map>

#include <omp.h>

namespace prvass {

namespace {

using Clock = std::chrono::steady_clock;

double millis_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

constexpr std::uint32_t no_parent = UINT32_MAX;

// Stack words as nodes of a prefix trie; node 0 is the empty word. Nodes are
// only created during the serial merge, so readers never race with writers.
class StackPool {
public:
    StackPool() { nodes_.push_back({0, {}, 0}); }

    std::uint32_t parent(std::uint32_t n) const { return nodes_[n].parent; }
    SymbolId top(std::uint32_t n) const { return nodes_[n].symbol; }
    std::uint32_t depth(std::uint32_t n) const { return nodes_[n].depth; }

    std::uint32_t child(std::uint32_t n, SymbolId s) {
        const std::uint64_t key = (static_cast<std::uint64_t>(n) << 32) | s.index;
        auto [it, inserted] = children_.try_emplace(key, static_cast<std::uint32_t>(nodes_.size()));
        if (inserted)
            nodes_.push_back({n, s, nodes_[n].depth + 1});
        return it->second;
    }

    std::uint32_t intern(std::span<const SymbolId> word, std::uint32_t base = 0) {
        for (SymbolId s : word)
            base = child(base, s);
        return base;
    }

    Stack materialize(std::uint32_t n) const {
        Stack out(depth(n));
        for (std::size_t i = out.size(); i-- > 0; n = parent(n))
            out[i] = top(n);
        return out;
    }

private:
    struct Node {
        std::uint32_t parent;
        SymbolId symbol;
        std::uint32_t depth;
    };
    std::vector<Node> nodes_;
    std::unordered_map<std::uint64_t, std::uint32_t> children_;
};

struct Key {
    std::uint32_t state;
    std::uint32_t node;
    Counter counter;
    bool operator==(const Key &) const = default;
};

struct KeyHash {
    std::size_t operator()(const Key &k) const noexcept {
        std::uint64_t h = k.counter * 0x9E3779B97F4A7C15ULL;
        h ^= (static_cast<std::uint64_t>(k.state) << 32 | k.node) + 0x632BE59BD9B4E019ULL +
             (h << 6) + (h >> 2);
        return static_cast<std::size_t>(h);
    }
};

// A successor whose stack is `base` followed by `pushed`, not yet interned.
struct Pending {
    std::uint32_t action;
    StateId target;
    std::uint32_t base;
    std::vector<SymbolId> pushed;
    Counter counter;
};

bool fire(const StackPool &pool, std::uint32_t node, Counter counter, std::span<const Op> body,
          Pending &out) {
    out.pushed.clear();
    for (const Op &op : body) {
        switch (op.kind) {
        case InstrKind::push:
            out.pushed.push_back(op.symbol);
            break;
        case InstrKind::pop:
            if (!out.pushed.empty()) {
                if (out.pushed.back() != op.symbol)
                    return false;
                out.pushed.pop_back();
            } else {
                if (node == 0 || pool.top(node) != op.symbol)
                    return false;
                node = pool.parent(node);
            }
            break;
        case InstrKind::increment:
            ++counter;
            break;
        case InstrKind::decrement:
            if (counter == 0)
                return false;
            --counter;
            break;
        case InstrKind::reset:
            counter = 0;
            break;
        }
    }
    out.base = node;
    out.counter = counter;
    return true;
}

struct Record {
    Key key;
    std::uint32_t parent;
    std::uint32_t action;
};

}  // namespace

void Bounds::check() const {
    if (max_steps == 0 || max_stack == 0 || max_counter == 0 || max_visited == 0)
        throw std::invalid_argument("search bounds must be strictly positive");
}

Bounds Bounds::scaled(std::uint64_t factor) const {
    return {max_steps * factor, max_stack * factor, max_counter * factor, max_visited * factor};
}

std::string to_string(Outcome o) {
    switch (o) {
    case Outcome::covered:
        return "covered";
    case Outcome::exhausted_no_cover:
        return "no-cover";
    case Outcome::bounds_hit:
        return "bounds-hit";
    }
    return "?";
}

std::string to_string(Agreement a) {
    switch (a) {
    case Agreement::agree:
        return "agree";
    case Agreement::disagree:
        return "disagree";
    case Agreement::inconclusive:
        return "inconclusive";
    }
    return "?";
}

Verdict bounded_cover(const System &sys, const Configuration &start,
                      std::optional<StateId> target, const Bounds &b, const SearchOptions &opts) {
    b.check();
    const auto t0 = Clock::now();

    StackPool pool;
    std::vector<Record> records;
    std::unordered_map<Key, std::uint32_t, KeyHash> index;

    Verdict v;
    if (opts.count_states)
        v.per_state.assign(sys.state_count(), 0);

    auto materialize = [&](std::uint32_t id) {
        const Key &k = records[id].key;
        return Configuration{StateId{k.state}, pool.materialize(k.node), k.counter};
    };
    auto finish = [&](Outcome o) {
        v.outcome = o;
        v.stats.visited = records.size();
        v.stats.elapsed_ms = millis_since(t0);
        return v;
    };

    const Key start_key{start.state.index, pool.intern(start.stack), start.counter};
    records.push_back({start_key, no_parent, 0});
    index.emplace(start_key, 0);
    if (opts.count_states)
        ++v.per_state[start.state.index];

    std::vector<std::uint32_t> layer{0};
    std::vector<std::vector<Pending>> expansions;
    bool pruned = false;

    for (std::uint64_t depth = 0; !layer.empty(); ++depth) {
        v.stats.depth = depth;
        v.stats.frontier_peak = std::max<std::uint64_t>(v.stats.frontier_peak, layer.size());

        for (std::uint32_t id : layer) {
            if (opts.on_dequeue)
                opts.on_dequeue(materialize(id));
            if (target && records[id].key.state == target->index) {
                v.trace.start = start;
                std::vector<std::uint32_t> path;
                for (std::uint32_t cur = id; records[cur].parent != no_parent;
                     cur = records[cur].parent)
                    path.push_back(cur);
                for (auto it = path.rbegin(); it != path.rend(); ++it)
                    v.trace.steps.push_back({records[*it].action, materialize(*it)});
                return finish(Outcome::covered);
            }
        }

        expansions.assign(layer.size(), {});
        const auto width = static_cast<std::int64_t>(layer.size());
        const int threads = opts.threads > 0 ? opts.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 64) num_threads(threads)
        for (std::int64_t i = 0; i < width; ++i) {
            const Key k = records[layer[i]].key;
            Pending scratch;
            for (std::uint32_t a : sys.outgoing(StateId{k.state})) {
                const Transition &t = sys.transitions()[a];
                if (fire(pool, k.node, k.counter, t.body, scratch)) {
                    scratch.action = a;
                    scratch.target = t.target;
                    expansions[i].push_back(scratch);
                }
            }
        }

        std::vector<std::uint32_t> next;
        for (std::size_t i = 0; i < layer.size(); ++i) {
            for (const Pending &p : expansions[i]) {
                if (pool.depth(p.base) + p.pushed.size() > b.max_stack || p.counter > b.max_counter) {
                    pruned = true;
                    continue;
                }
                const Key key{p.target.index, pool.intern(p.pushed, p.base), p.counter};
                if (index.contains(key))
                    continue;
                if (depth + 1 > b.max_steps) {
                    pruned = true;
                    continue;
                }
                if (records.size() >= b.max_visited)
                    return finish(Outcome::bounds_hit);
                const auto id = static_cast<std::uint32_t>(records.size());
                records.push_back({key, layer[i], p.action});
                index.emplace(key, id);
                if (opts.count_states)
                    ++v.per_state[key.state];
                next.push_back(id);
            }
        }
        layer.swap(next);
    }
    return finish(pruned ? Outcome::bounds_hit : Outcome::exhausted_no_cover);
}

ReplayResult replay_trace(const System &sys, const Trace &tr) {
    const Configuration *prev = &tr.start;
    for (std::size_t i = 0; i < tr.steps.size(); ++i) {
        const TraceStep &step = tr.steps[i];
        const auto succs = successors(sys, *prev);
        const bool ok = std::any_of(succs.begin(), succs.end(), [&](const Successor &s) {
            return s.action == step.action && s.config == step.config;
        });
        if (!ok)
            return {false, i};
        prev = &step.config;
    }
    return {};
}

MinskyVerdict minsky_bounded_reach(const MinskyMachine &m, const Bounds &b, bool reach_target) {
    return minsky_bounded_reach_from(m, MinskyConfig{m.source, {0, 0}}, b, reach_target);
}

MinskyVerdict minsky_bounded_reach_from(const MinskyMachine &m, const MinskyConfig &start,
                                        const Bounds &b, bool reach_target) {
    b.check();
    const auto t0 = Clock::now();
    const MinskyConfig goal{m.target, {0, 0}};

    struct Node {
        MinskyConfig config;
        std::uint32_t parent;
        std::uint32_t action;
    };
    std::vector<Node> nodes{{start, no_parent, 0}};
    std::map<MinskyConfig, std::uint32_t> index{{start, 0}};

    MinskyVerdict v;
    auto finish = [&](Outcome o) {
        v.outcome = o;
        v.stats.visited = nodes.size();
        v.stats.elapsed_ms = millis_since(t0);
        return v;
    };

    std::vector<std::uint32_t> layer{0};
    bool pruned = false;
    for (std::uint64_t depth = 0; !layer.empty(); ++depth) {
        v.stats.depth = depth;
        v.stats.frontier_peak = std::max<std::uint64_t>(v.stats.frontier_peak, layer.size());
        for (std::uint32_t id : layer) {
            if (reach_target && nodes[id].config == goal) {
                v.trace.start = start;
                std::vector<std::uint32_t> path;
                for (std::uint32_t cur = id; nodes[cur].parent != no_parent; cur = nodes[cur].parent)
                    path.push_back(cur);
                for (auto it = path.rbegin(); it != path.rend(); ++it)
                    v.trace.steps.push_back({nodes[*it].action, nodes[*it].config});
                return finish(Outcome::covered);
            }
        }
        std::vector<std::uint32_t> next;
        for (std::uint32_t id : layer) {
            for (auto &succ : minsky_successors(m, nodes[id].config)) {
                const auto &c = succ.config.counters;
                if (c[0] > b.max_counter || c[1] > b.max_counter) {
                    pruned = true;
                    continue;
                }
                if (index.contains(succ.config))
                    continue;
                if (depth + 1 > b.max_steps) {
                    pruned = true;
                    continue;
                }
                if (nodes.size() >= b.max_visited)
                    return finish(Outcome::bounds_hit);
                const auto nid = static_cast<std::uint32_t>(nodes.size());
                index.emplace(succ.config, nid);
                nodes.push_back({std::move(succ.config), id, succ.action});
                next.push_back(nid);
            }
        }
        layer.swap(next);
    }
    return finish(pruned ? Outcome::bounds_hit : Outcome::exhausted_no_cover);
}

ReplayResult replay_minsky_trace(const MinskyMachine &m, const MinskyTrace &tr) {
    const MinskyConfig *prev = &tr.start;
    for (std::size_t i = 0; i < tr.steps.size(); ++i) {
        const auto succs = minsky_successors(m, *prev);
        const bool ok = std::any_of(succs.begin(), succs.end(), [&](const MinskySuccessor &s) {
            return s.action == tr.steps[i].action && s.config == tr.steps[i].config;
        });
        if (!ok)
            return {false, i};
        prev = &tr.steps[i].config;
    }
    return {};
}

DiffReport differential_check(const MinskyMachine &m, const Bounds &b_minsky,
                              const Bounds &b_prvass, const DiffOptions &opts) {
    DiffReport report;
    report.minsky = minsky_bounded_reach(m, b_minsky);
    report.compiled_system = compile(m);
    const System sys(report.compiled_system.system);

    SearchOptions search;
    search.threads = opts.threads;
    std::optional<BoundaryChecker> checker;
    if (opts.check_boundary) {
        checker.emplace(report.compiled_system, sys);
        search.on_dequeue = [&](const Configuration &cfg) {
            if (auto ok = checker->check(cfg)) {
                ++report.boundary_checked;
                if (!*ok)
                    ++report.boundary_violations;
            }
        };
    }
    const Configuration start{sys.state(report.compiled_system.start), {}, 0};
    report.compiled =
        bounded_cover(sys, start, sys.state(report.compiled_system.cover_target), b_prvass, search);

    const Outcome a = report.minsky.outcome, c = report.compiled.outcome;
    if (a == Outcome::bounds_hit || c == Outcome::bounds_hit)
        report.agreement = Agreement::inconclusive;
    else
        report.agreement = (a == c) ? Agreement::agree : Agreement::disagree;
    return report;
}

}  // namespace prvass
