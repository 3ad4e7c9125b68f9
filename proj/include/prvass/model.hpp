#pragma once

// Syntax and one-step semantics of one-dimensional pushdown VASS with resets
// and of two-counter Minsky machines.

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace prvass {

using Counter = std::uint64_t;

enum class InstrKind : std::uint8_t { push, pop, increment, decrement, reset };

/// An instruction as written in a model: stack symbols are referenced by name.
struct Instruction {
    InstrKind kind = InstrKind::increment;
    std::string symbol;  // only meaningful for push/pop

    static Instruction push(std::string s) { return {InstrKind::push, std::move(s)}; }
    static Instruction pop(std::string s) { return {InstrKind::pop, std::move(s)}; }
    static Instruction inc() { return {InstrKind::increment, {}}; }
    static Instruction dec() { return {InstrKind::decrement, {}}; }
    static Instruction reset() { return {InstrKind::reset, {}}; }

    bool operator==(const Instruction &) const = default;
};

struct Action {
    std::string source;
    std::vector<Instruction> body;
    std::string target;

    bool operator==(const Action &) const = default;
};

/// A 1-PRVASS (Q, Γ, A). `init` is an optional designated initial state used
/// by the tools; it is not part of the transition system itself.
struct Prvass {
    std::string name;
    std::vector<std::string> states;
    std::vector<std::string> stack_alphabet;
    std::vector<Action> actions;
    std::string init;

    bool operator==(const Prvass &) const = default;
};

/// A well-formedness violation. `action` is the index of the offending action
/// when the problem is local to one.
struct Diagnostic {
    std::optional<std::size_t> action;
    std::string message;
};

class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(std::vector<Diagnostic> diagnostics);
    const std::vector<Diagnostic> &diagnostics() const { return diagnostics_; }

private:
    std::vector<Diagnostic> diagnostics_;
};

std::vector<Diagnostic> validate(const Prvass &sys);

// ---------------------------------------------------------------------------
// Interned, executable form.

struct StateId {
    std::uint32_t index = 0;
    auto operator<=>(const StateId &) const = default;
};

struct SymbolId {
    std::uint32_t index = 0;
    auto operator<=>(const SymbolId &) const = default;
};

/// Bottom of the stack is the front, top is the back.
using Stack = std::vector<SymbolId>;

struct Op {
    InstrKind kind = InstrKind::increment;
    SymbolId symbol;
};

struct Transition {
    StateId source;
    std::vector<Op> body;
    StateId target;
};

struct StackCounter {
    Stack stack;
    Counter counter = 0;
    bool operator==(const StackCounter &) const = default;
};

struct Configuration {
    StateId state;
    Stack stack;
    Counter counter = 0;

    bool operator==(const Configuration &) const = default;
    auto operator<=>(const Configuration &) const = default;
};

/// Immutable interned view of a validated Prvass. Names are resolved once;
/// transitions keep declaration order.
class System {
public:
    /// Throws ValidationError if `sys` is malformed.
    explicit System(Prvass sys);

    const Prvass &model() const { return model_; }
    std::size_t state_count() const { return model_.states.size(); }
    std::size_t symbol_count() const { return model_.stack_alphabet.size(); }

    std::optional<StateId> find_state(std::string_view name) const;
    std::optional<SymbolId> find_symbol(std::string_view name) const;
    /// Throws std::out_of_range for unknown names.
    StateId state(std::string_view name) const;
    SymbolId symbol(std::string_view name) const;

    const std::string &name(StateId s) const { return model_.states[s.index]; }
    const std::string &name(SymbolId s) const { return model_.stack_alphabet[s.index]; }

    const std::vector<Transition> &transitions() const { return transitions_; }
    std::span<const std::uint32_t> outgoing(StateId s) const { return outgoing_[s.index]; }

    Stack stack_of(const std::vector<std::string> &names) const;
    Configuration config(std::string_view state, const std::vector<std::string> &stack,
                         Counter counter) const;
    std::string render(const Configuration &c) const;
    std::string render_stack(const Stack &s) const;

private:
    Prvass model_;
    std::unordered_map<std::string, StateId> state_index_;
    std::unordered_map<std::string, SymbolId> symbol_index_;
    std::vector<Transition> transitions_;
    std::vector<std::vector<std::uint32_t>> outgoing_;
};

std::optional<StackCounter> step_instruction(StackCounter sc, const Op &op);
std::optional<StackCounter> step_sequence(StackCounter sc, std::span<const Op> body);

struct Successor {
    std::uint32_t action = 0;
    Configuration config;
};

/// One entry per action leaving cfg.state whose body fires, in declaration order.
std::vector<Successor> successors(const System &sys, const Configuration &cfg);

// ---------------------------------------------------------------------------
// Two-counter machines.

enum class MinskyOp : std::uint8_t { increment, decrement, zero_test };

struct MinskyAction {
    std::string source;
    int counter = 0;
    MinskyOp op = MinskyOp::increment;
    std::string target;

    bool operator==(const MinskyAction &) const = default;
};

struct MinskyMachine {
    std::string name;
    std::vector<std::string> states;
    std::vector<MinskyAction> actions;
    std::string source;
    std::string target;

    bool operator==(const MinskyMachine &) const = default;
};

struct MinskyConfig {
    std::string state;
    std::array<Counter, 2> counters{0, 0};

    bool operator==(const MinskyConfig &) const = default;
    auto operator<=>(const MinskyConfig &) const = default;
};

struct MinskySuccessor {
    std::uint32_t action = 0;
    MinskyConfig config;
};

std::vector<Diagnostic> validate(const MinskyMachine &m);
std::vector<MinskySuccessor> minsky_successors(const MinskyMachine &m, const MinskyConfig &cfg);

std::string to_string(MinskyOp op);
std::string render(const MinskyConfig &c);

}  // namespace prvass
