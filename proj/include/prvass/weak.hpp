#pragma once

// Gödel encoding of two counters, the six primitive encoded operations, and
// their weak forward/backward approximations.

#include "prvass/model.hpp"

#include <array>
#include <compare>
#include <concepts>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace prvass {

using Value = std::uint64_t;

enum class DeltaKind : std::uint8_t { mult, div, test };

struct DeltaSymbol {
    DeltaKind kind = DeltaKind::mult;
    unsigned factor = 2;  // 2 or 3

    auto operator<=>(const DeltaSymbol &) const = default;
};

inline constexpr std::array<DeltaSymbol, 6> delta_alphabet{{
    {DeltaKind::mult, 2},
    {DeltaKind::mult, 3},
    {DeltaKind::div, 2},
    {DeltaKind::div, 3},
    {DeltaKind::test, 2},
    {DeltaKind::test, 3},
}};

/// "m2", "d3", "t2", ...
std::string to_string(DeltaSymbol s);
std::optional<DeltaSymbol> parse_delta(std::string_view token);
std::string to_string(std::span<const DeltaSymbol> word);

/// The graph of one primitive partial function on ℕ.
struct RelationSpec {
    DeltaSymbol symbol;

    std::optional<Value> apply(Value m) const;
    /// (m, n) belongs to the backward weakening: some m̃ ≥ m maps to n.
    bool backward_member(Value m, Value n) const;
};

enum class WeakMode : std::uint8_t { exact, forward_weak, backward_weak };

std::string to_string(WeakMode mode);

/// Functional relations on ℕ usable by the composition kernels.
template <class R>
concept Relation = requires(const R &r, Value v) {
    { r.apply(v) } -> std::same_as<std::optional<Value>>;
    { r.backward_member(v, v) } -> std::same_as<bool>;
};

/// 2^n0 · 3^n1. Throws std::overflow_error past 64 bits.
Value godel_encode(Counter n0, Counter n1);
std::optional<std::pair<Counter, Counter>> godel_decode(Value v);

std::optional<Value> rel_apply(RelationSpec r, Value m);
bool weak_member(RelationSpec r, WeakMode mode, Value m, Value n);

struct ComposeResult {
    bool member = false;
    /// The exact (or forward) image escaped [0, bound]; `member` is then unreliable.
    bool bound_exceeded = false;
};

ComposeResult compose_member(std::span<const RelationSpec> rs, WeakMode mode, Value m, Value n,
                             Value bound);

/// m < m' iff n < n' for every two pairs of the graph.
bool is_strictly_monotone(std::span<const std::pair<Value, Value>> graph);
bool is_strictly_monotone(RelationSpec r, Value domain_bound);

struct Prop1Report {
    std::vector<DeltaSymbol> sequence;
    Value domain_bound = 0;
    Value intermediate_bound = 0;
    bool holds = false;
    std::optional<std::pair<Value, Value>> counterexample;
    bool bound_exceeded = false;
};

struct LemmaViolation {
    Value m = 0, n = 0;    // forward-weak pair
    Value m2 = 0, n2 = 0;  // backward-weak pair
    bool strict = false;   // which implication failed: n2 < n ⇒ m2 < m
};

struct LemmaReport {
    std::vector<DeltaSymbol> sequence;
    Value domain_bound = 0;
    bool holds = false;
    std::optional<LemmaViolation> violation;
};

/// Default cap on intermediate values for sequences over the primitives:
/// every primitive (and every preimage) grows a value by at most 3.
Value default_intermediate_bound(Value domain_bound, std::size_t length);

/// Exhaustive over [0, domain_bound]²; rows are checked in parallel.
Prop1Report check_two_approximations(std::span<const DeltaSymbol> seq, Value domain_bound);
LemmaReport check_monotone_pairs_lemma(std::span<const DeltaSymbol> seq, Value domain_bound);

DeltaSymbol minsky_action_to_symbol(const MinskyAction &a);

std::vector<RelationSpec> relations_of(std::span<const DeltaSymbol> seq);

}  // namespace prvass
