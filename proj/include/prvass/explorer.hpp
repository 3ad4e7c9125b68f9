#pragma once

// Bounded breadth-first exploration. Coverability of 1-PRVASS is undecidable,
// so every search runs under explicit budgets and reports honestly whether the
// reachable set was fully enumerated.

#include "prvass/model.hpp"
#include "prvass/reduction.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace prvass {

struct Bounds {
    std::uint64_t max_steps = 100000;  // BFS depth in action firings
    std::uint64_t max_stack = 64;
    std::uint64_t max_counter = 10000;
    std::uint64_t max_visited = 1000000;

    /// Throws std::invalid_argument unless every field is positive.
    void check() const;
    Bounds scaled(std::uint64_t factor) const;
};

enum class Outcome : std::uint8_t { covered, exhausted_no_cover, bounds_hit };

/// "covered", "no-cover", "bounds-hit".
std::string to_string(Outcome o);

struct SearchStats {
    std::uint64_t visited = 0;
    std::uint64_t frontier_peak = 0;
    std::uint64_t depth = 0;
    double elapsed_ms = 0;  // excluded from equality
};

struct TraceStep {
    std::uint32_t action = 0;
    Configuration config;
    bool operator==(const TraceStep &) const = default;
};

struct Trace {
    Configuration start;
    std::vector<TraceStep> steps;
    bool operator==(const Trace &) const = default;
    const Configuration &last() const { return steps.empty() ? start : steps.back().config; }
};

struct Verdict {
    Outcome outcome = Outcome::bounds_hit;
    Trace trace;  // meaningful when covered
    SearchStats stats;
    /// Distinct configurations per state (filled when SearchOptions::count_states).
    std::vector<std::uint64_t> per_state;
};

struct SearchOptions {
    /// 0 = OpenMP default. Results do not depend on it.
    int threads = 1;
    /// Called on every dequeued configuration, in dequeue order.
    std::function<void(const Configuration &)> on_dequeue;
    bool count_states = false;
};

/// BFS from `start` until a configuration at `target` is dequeued. Without a
/// target the full bounded reachable set is enumerated. Frontier layers are
/// expanded in parallel and merged in (predecessor, action) order.
Verdict bounded_cover(const System &sys, const Configuration &start,
                      std::optional<StateId> target, const Bounds &b,
                      const SearchOptions &opts = {});

struct ReplayResult {
    bool ok = true;
    std::optional<std::size_t> failed_step;
    explicit operator bool() const { return ok; }
};

ReplayResult replay_trace(const System &sys, const Trace &tr);

struct MinskyTraceStep {
    std::uint32_t action = 0;
    MinskyConfig config;
    bool operator==(const MinskyTraceStep &) const = default;
};

struct MinskyTrace {
    MinskyConfig start;
    std::vector<MinskyTraceStep> steps;
    bool operator==(const MinskyTrace &) const = default;
};

struct MinskyVerdict {
    Outcome outcome = Outcome::bounds_hit;
    MinskyTrace trace;
    SearchStats stats;
};

/// Searches for exactly (target, 0, 0) from (source, 0, 0). max_counter caps
/// both counters; max_stack is unused. With `reach_target` false the bounded
/// reachable set is enumerated instead.
MinskyVerdict minsky_bounded_reach(const MinskyMachine &m, const Bounds &b,
                                   bool reach_target = true);
MinskyVerdict minsky_bounded_reach_from(const MinskyMachine &m, const MinskyConfig &start,
                                        const Bounds &b, bool reach_target);

ReplayResult replay_minsky_trace(const MinskyMachine &m, const MinskyTrace &tr);

enum class Agreement : std::uint8_t { agree, disagree, inconclusive };

std::string to_string(Agreement a);

struct DiffOptions {
    int threads = 1;
    bool check_boundary = false;
};

struct DiffReport {
    Agreement agreement = Agreement::inconclusive;
    MinskyVerdict minsky;
    Verdict compiled;
    CompiledSystem compiled_system;
    std::uint64_t boundary_checked = 0;
    std::uint64_t boundary_violations = 0;
};

DiffReport differential_check(const MinskyMachine &m, const Bounds &b_minsky,
                              const Bounds &b_prvass, const DiffOptions &opts = {});

}  // namespace prvass
