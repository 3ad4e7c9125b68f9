#include "prvass/reference.hpp"

#include <algorithm>
#include <chrono>
#include <map>

namespace prvass::reference {

Verdict bounded_cover(const System &sys, const Configuration &start,
                      std::optional<StateId> target, const Bounds &b) {
    b.check();
    const auto t0 = std::chrono::steady_clock::now();
    constexpr std::uint32_t root = UINT32_MAX;

    struct Node {
        Configuration config;
        std::uint32_t parent;
        std::uint32_t action;
    };
    std::vector<Node> nodes{{start, root, 0}};
    std::map<Configuration, std::uint32_t> index{{start, 0}};

    Verdict v;
    auto finish = [&](Outcome o) {
        v.outcome = o;
        v.stats.visited = nodes.size();
        v.stats.elapsed_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                .count();
        return v;
    };

    std::vector<std::uint32_t> layer{0};
    bool pruned = false;
    for (std::uint64_t depth = 0; !layer.empty(); ++depth) {
        v.stats.depth = depth;
        v.stats.frontier_peak = std::max<std::uint64_t>(v.stats.frontier_peak, layer.size());
        for (std::uint32_t id : layer) {
            if (target && nodes[id].config.state == *target) {
                v.trace.start = start;
                std::vector<std::uint32_t> path;
                for (std::uint32_t cur = id; nodes[cur].parent != root; cur = nodes[cur].parent)
                    path.push_back(cur);
                for (auto it = path.rbegin(); it != path.rend(); ++it)
                    v.trace.steps.push_back({nodes[*it].action, nodes[*it].config});
                return finish(Outcome::covered);
            }
        }
        std::vector<std::uint32_t> next;
        for (std::uint32_t id : layer) {
            for (auto &succ : successors(sys, nodes[id].config)) {
                if (succ.config.stack.size() > b.max_stack || succ.config.counter > b.max_counter) {
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

}  // namespace prvass::reference
