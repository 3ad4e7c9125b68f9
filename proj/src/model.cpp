#include "prvass/model.hpp"

#include <set>
#include <sstream>

namespace prvass {

namespace {

std::string join_messages(const std::vector<Diagnostic> &diagnostics) {
    std::ostringstream out;
    out << "invalid model:";
    for (const auto &d : diagnostics) {
        out << "\n  ";
        if (d.action)
            out << "action " << *d.action << ": ";
        out << d.message;
    }
    return out.str();
}

void check_unique(const std::vector<std::string> &names, const char *what,
                  std::vector<Diagnostic> &out) {
    std::set<std::string_view> seen;
    for (const auto &n : names) {
        if (n.empty())
            out.push_back({std::nullopt, std::string("empty ") + what + " name"});
        else if (!seen.insert(n).second)
            out.push_back({std::nullopt, std::string("duplicate ") + what + " '" + n + "'"});
    }
}

}  // namespace

ValidationError::ValidationError(std::vector<Diagnostic> diagnostics)
    : std::runtime_error(join_messages(diagnostics)), diagnostics_(std::move(diagnostics)) {}

std::vector<Diagnostic> validate(const Prvass &sys) {
    std::vector<Diagnostic> out;
    check_unique(sys.states, "state", out);
    check_unique(sys.stack_alphabet, "stack symbol", out);

    const std::set<std::string_view> states(sys.states.begin(), sys.states.end());
    const std::set<std::string_view> symbols(sys.stack_alphabet.begin(),
                                             sys.stack_alphabet.end());

    if (!sys.init.empty() && !states.contains(sys.init))
        out.push_back({std::nullopt, "initial state '" + sys.init + "' is not declared"});

    for (std::size_t i = 0; i < sys.actions.size(); ++i) {
        const Action &a = sys.actions[i];
        if (!states.contains(a.source))
            out.push_back({i, "undeclared source state '" + a.source + "'"});
        if (!states.contains(a.target))
            out.push_back({i, "undeclared target state '" + a.target + "'"});
        for (const Instruction &ins : a.body) {
            const bool stack_op = ins.kind == InstrKind::push || ins.kind == InstrKind::pop;
            if (stack_op && !symbols.contains(ins.symbol))
                out.push_back({i, "stack symbol '" + ins.symbol + "' is not in the alphabet"});
        }
    }
    return out;
}

System::System(Prvass sys) : model_(std::move(sys)) {
    if (auto diags = validate(model_); !diags.empty())
        throw ValidationError(std::move(diags));

    for (std::uint32_t i = 0; i < model_.states.size(); ++i)
        state_index_.emplace(model_.states[i], StateId{i});
    for (std::uint32_t i = 0; i < model_.stack_alphabet.size(); ++i)
        symbol_index_.emplace(model_.stack_alphabet[i], SymbolId{i});

    outgoing_.resize(model_.states.size());
    transitions_.reserve(model_.actions.size());
    for (const Action &a : model_.actions) {
        Transition t{state(a.source), {}, state(a.target)};
        t.body.reserve(a.body.size());
        for (const Instruction &ins : a.body) {
            Op op{ins.kind, {}};
            if (ins.kind == InstrKind::push || ins.kind == InstrKind::pop)
                op.symbol = symbol(ins.symbol);
            t.body.push_back(op);
        }
        outgoing_[t.source.index].push_back(static_cast<std::uint32_t>(transitions_.size()));
        transitions_.push_back(std::move(t));
    }
}

std::optional<StateId> System::find_state(std::string_view name) const {
    auto it = state_index_.find(std::string(name));
    if (it == state_index_.end())
        return std::nullopt;
    return it->second;
}

std::optional<SymbolId> System::find_symbol(std::string_view name) const {
    auto it = symbol_index_.find(std::string(name));
    if (it == symbol_index_.end())
        return std::nullopt;
    return it->second;
}

StateId System::state(std::string_view name) const {
    if (auto s = find_state(name))
        return *s;
    throw std::out_of_range("unknown state '" + std::string(name) + "'");
}

SymbolId System::symbol(std::string_view name) const {
    if (auto s = find_symbol(name))
        return *s;
    throw std::out_of_range("unknown stack symbol '" + std::string(name) + "'");
}

Stack System::stack_of(const std::vector<std::string> &names) const {
    Stack s;
    s.reserve(names.size());
    for (const auto &n : names)
        s.push_back(symbol(n));
    return s;
}

Configuration System::config(std::string_view st, const std::vector<std::string> &stack,
                             Counter counter) const {
    return {state(st), stack_of(stack), counter};
}

std::string System::render_stack(const Stack &s) const {
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i)
            out += ' ';
        out += name(s[i]);
    }
    return out;
}

std::string System::render(const Configuration &c) const {
    return "(" + name(c.state) + ", [" + render_stack(c.stack) + "], " +
           std::to_string(c.counter) + ")";
}

std::optional<StackCounter> step_instruction(StackCounter sc, const Op &op) {
    switch (op.kind) {
    case InstrKind::push:
        sc.stack.push_back(op.symbol);
        return sc;
    case InstrKind::pop:
        if (sc.stack.empty() || sc.stack.back() != op.symbol)
            return std::nullopt;
        sc.stack.pop_back();
        return sc;
    case InstrKind::increment:
        ++sc.counter;
        return sc;
    case InstrKind::decrement:
        if (sc.counter == 0)
            return std::nullopt;
        --sc.counter;
        return sc;
    case InstrKind::reset:
        sc.counter = 0;
        return sc;
    }
    return std::nullopt;
}

std::optional<StackCounter> step_sequence(StackCounter sc, std::span<const Op> body) {
    for (const Op &op : body) {
        auto next = step_instruction(std::move(sc), op);
        if (!next)
            return std::nullopt;
        sc = std::move(*next);
    }
    return sc;
}

std::vector<Successor> successors(const System &sys, const Configuration &cfg) {
    std::vector<Successor> out;
    for (std::uint32_t idx : sys.outgoing(cfg.state)) {
        const Transition &t = sys.transitions()[idx];
        auto next = step_sequence({cfg.stack, cfg.counter}, t.body);
        if (next)
            out.push_back({idx, {t.target, std::move(next->stack), next->counter}});
    }
    return out;
}

// ---------------------------------------------------------------------------

std::vector<Diagnostic> validate(const MinskyMachine &m) {
    std::vector<Diagnostic> out;
    check_unique(m.states, "state", out);
    const std::set<std::string_view> states(m.states.begin(), m.states.end());
    if (!states.contains(m.source))
        out.push_back({std::nullopt, "source state '" + m.source + "' is not declared"});
    if (!states.contains(m.target))
        out.push_back({std::nullopt, "target state '" + m.target + "' is not declared"});
    for (std::size_t i = 0; i < m.actions.size(); ++i) {
        const MinskyAction &a = m.actions[i];
        if (!states.contains(a.source))
            out.push_back({i, "undeclared source state '" + a.source + "'"});
        if (!states.contains(a.target))
            out.push_back({i, "undeclared target state '" + a.target + "'"});
        if (a.counter != 0 && a.counter != 1)
            out.push_back({i, "counter index " + std::to_string(a.counter) + " is not 0 or 1"});
    }
    return out;
}

std::vector<MinskySuccessor> minsky_successors(const MinskyMachine &m, const MinskyConfig &cfg) {
    std::vector<MinskySuccessor> out;
    for (std::uint32_t i = 0; i < m.actions.size(); ++i) {
        const MinskyAction &a = m.actions[i];
        if (a.source != cfg.state)
            continue;
        MinskyConfig next{a.target, cfg.counters};
        Counter &c = next.counters[a.counter];
        switch (a.op) {
        case MinskyOp::increment:
            ++c;
            break;
        case MinskyOp::decrement:
            if (c == 0)
                continue;
            --c;
            break;
        case MinskyOp::zero_test:
            if (c != 0)
                continue;
            break;
        }
        out.push_back({i, std::move(next)});
    }
    return out;
}

std::string to_string(MinskyOp op) {
    switch (op) {
    case MinskyOp::increment:
        return "inc";
    case MinskyOp::decrement:
        return "dec";
    case MinskyOp::zero_test:
        return "zero";
    }
    return "?";
}

std::string render(const MinskyConfig &c) {
    return "(" + c.state + ", " + std::to_string(c.counters[0]) + ", " +
           std::to_string(c.counters[1]) + ")";
}

}  // namespace prvass
