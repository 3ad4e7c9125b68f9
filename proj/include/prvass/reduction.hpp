#pragma once

// Compiles a two-counter machine into a 1-PRVASS whose target state is
// coverable iff the machine reaches (t, 0, 0) from (s, 0, 0).
//
// Stack layout at every boundary state: bot · record · hash · a^n, where
// `record` logs the forward operations as Δ symbols and n is the (weakly
// computed) Gödel encoding of the two counters. The counter is an auxiliary
// scratch register and is 0 between gadgets.

#include "prvass/model.hpp"
#include "prvass/weak.hpp"

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace prvass {

inline constexpr std::string_view bottom_symbol = "bot";
inline constexpr std::string_view separator_symbol = "hash";
inline constexpr std::string_view unit_symbol = "a";

/// bot, hash, a, then the six Δ symbols.
std::vector<std::string> compiled_stack_alphabet();

enum class Direction : std::uint8_t { forward, backward };

struct Gadget {
    std::string entry;  // q1
    std::string exit;   // q3
    std::vector<std::string> internal_states;
    std::vector<Action> actions;
    DeltaSymbol symbol;
    Direction direction = Direction::forward;

    /// entry, internal states, exit.
    std::vector<std::string> states() const;
};

/// Hands out state names not used before; collisions get a "~k" suffix.
class StateNamer {
public:
    void reserve(const std::string &name) { used_.insert(name); }
    std::string fresh(const std::string &base);

private:
    std::set<std::string> used_;
};

/// "M2", "D3bar", ...
std::string gadget_kind(DeltaSymbol sym, Direction dir);

/// States are named <prefix>/<kind>/<q1|q2|q3>.
Gadget build_gadget(DeltaSymbol sym, Direction dir, StateNamer &namer, std::string_view prefix);

struct Nfa {
    struct Edge {
        std::string source;
        DeltaSymbol label;
        std::string target;
        std::size_t origin = 0;  // index of the Minsky action
    };
    std::vector<std::string> states;
    std::vector<Edge> edges;
    std::string initial;
    std::string final_state;
};

Nfa minsky_to_nfa(const MinskyMachine &m);
bool accepts(const Nfa &nfa, std::span<const DeltaSymbol> word);

struct GadgetOrigin {
    std::string entry;
    std::string exit;
    DeltaSymbol symbol;
    Direction direction = Direction::forward;
    std::optional<std::size_t> minsky_action;  // forward gadgets only
};

struct CompiledSystem {
    Prvass system;
    std::string start;         // s'
    std::string back_state;    // b
    std::string cover_target;  // t'
    std::map<std::string, std::string> machine_states_image;
    std::vector<GadgetOrigin> gadgets;
};

/// Throws ValidationError when `m` is malformed.
CompiledSystem compile(const MinskyMachine &m);

struct ContractResult {
    std::set<std::pair<std::vector<DeltaSymbol>, Value>> exits;
    bool bound_hit = false;
};

/// All (record', n) such that the gadget can move from
/// (q1, bot·record·hash·a^m, 0) to (q3, bot·record'·hash·a^n, 0).
/// Stack height and counter are capped at `bound`.
ContractResult gadget_contract_set(const Gadget &g, Value m, std::span<const DeltaSymbol> record,
                                   Value bound);

/// Shape predicate for boundary configurations of a compiled system.
/// Machine-state images, b, and gadget exits must hold bot·Δ*·hash·a* with
/// counter 0; s' and t' hold the empty stack.
class BoundaryChecker {
public:
    BoundaryChecker(const CompiledSystem &cs, const System &sys);

    /// std::nullopt when cfg is not at a boundary state.
    std::optional<bool> check(const Configuration &cfg) const;

private:
    enum class Kind : std::uint8_t { none, encoded, empty };
    std::vector<Kind> kind_;
    std::vector<char> is_delta_;
    SymbolId bottom_, separator_, unit_;
};

}  // namespace prvass
