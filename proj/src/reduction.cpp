#include "prvass/reduction.hpp"

#include <algorithm>
#include <deque>

namespace prvass {

namespace {

using Body = std::vector<Instruction>;

void repeat(Body &body, std::size_t times, const Instruction &ins) {
    body.insert(body.end(), times, ins);
}

Instruction pop_unit() { return Instruction::pop(std::string(unit_symbol)); }
Instruction push_unit() { return Instruction::push(std::string(unit_symbol)); }
Instruction pop_separator() { return Instruction::pop(std::string(separator_symbol)); }
Instruction push_separator() { return Instruction::push(std::string(separator_symbol)); }

// q1 loop: consume `pops` units, add `incs` to the counter.
Body consume_loop(std::size_t pops, std::size_t incs) {
    Body body;
    repeat(body, pops, pop_unit());
    repeat(body, incs, Instruction::inc());
    return body;
}

// Swap the separator with a pushed (forward) or popped (backward) record symbol.
Body record_step(DeltaSymbol sym, Direction dir) {
    const std::string name = to_string(sym);
    if (dir == Direction::forward)
        return {pop_separator(), Instruction::push(name), push_separator()};
    return {pop_separator(), Instruction::pop(name), push_separator()};
}

}  // namespace

std::vector<std::string> compiled_stack_alphabet() {
    std::vector<std::string> out{std::string(bottom_symbol), std::string(separator_symbol),
                                 std::string(unit_symbol)};
    for (DeltaSymbol s : delta_alphabet)
        out.push_back(to_string(s));
    return out;
}

std::vector<std::string> Gadget::states() const {
    std::vector<std::string> out{entry};
    out.insert(out.end(), internal_states.begin(), internal_states.end());
    out.push_back(exit);
    return out;
}

std::string StateNamer::fresh(const std::string &base) {
    std::string name = base;
    for (int k = 1; used_.contains(name); ++k)
        name = base + "~" + std::to_string(k);
    used_.insert(name);
    return name;
}

std::string gadget_kind(DeltaSymbol sym, Direction dir) {
    std::string kind = to_string(sym);
    kind[0] = static_cast<char>(kind[0] - 'a' + 'A');
    if (dir == Direction::backward)
        kind += "bar";
    return kind;
}

Gadget build_gadget(DeltaSymbol sym, Direction dir, StateNamer &namer, std::string_view prefix) {
    const std::string base = std::string(prefix) + "/" + gadget_kind(sym, dir) + "/";
    Gadget g;
    g.symbol = sym;
    g.direction = dir;
    g.entry = namer.fresh(base + "q1");
    const std::string q2 = namer.fresh(base + "q2");
    g.exit = namer.fresh(base + "q3");
    g.internal_states = {q2};

    const std::size_t f = sym.factor;
    // Multiplying by f and undoing a division by f both turn each unit into f;
    // dividing by f and undoing a multiplication both turn f units into one.
    const bool scales_up = (sym.kind == DeltaKind::mult) == (dir == Direction::forward);

    switch (sym.kind) {
    case DeltaKind::mult:
    case DeltaKind::div:
        g.actions.push_back({g.entry, scales_up ? consume_loop(1, f) : consume_loop(f, 1), g.entry});
        g.actions.push_back({g.entry, record_step(sym, dir), q2});
        break;
    case DeltaKind::test:
        g.actions.push_back({g.entry, consume_loop(f, f), g.entry});
        for (std::size_t rem = 1; rem < f; ++rem) {
            Body body = consume_loop(rem, rem);
            const Body rec = record_step(sym, dir);
            body.insert(body.end(), rec.begin(), rec.end());
            g.actions.push_back({g.entry, std::move(body), q2});
        }
        break;
    }
    // Pay out at most the accumulated counter as units, then clear it.
    g.actions.push_back({q2, {Instruction::dec(), push_unit()}, q2});
    g.actions.push_back({q2, {Instruction::reset()}, g.exit});
    return g;
}

Nfa minsky_to_nfa(const MinskyMachine &m) {
    Nfa nfa{m.states, {}, m.source, m.target};
    for (std::size_t i = 0; i < m.actions.size(); ++i) {
        const MinskyAction &a = m.actions[i];
        nfa.edges.push_back({a.source, minsky_action_to_symbol(a), a.target, i});
    }
    return nfa;
}

bool accepts(const Nfa &nfa, std::span<const DeltaSymbol> word) {
    std::set<std::string> current{nfa.initial};
    for (DeltaSymbol x : word) {
        std::set<std::string> next;
        for (const auto &e : nfa.edges)
            if (e.label == x && current.contains(e.source))
                next.insert(e.target);
        current.swap(next);
    }
    return current.contains(nfa.final_state);
}

CompiledSystem compile(const MinskyMachine &m) {
    if (auto diags = validate(m); !diags.empty())
        throw ValidationError(std::move(diags));

    CompiledSystem cs;
    StateNamer namer;
    for (const auto &s : m.states) {
        namer.reserve(s);
        cs.machine_states_image.emplace(s, s);
    }
    cs.start = namer.fresh("s'");
    cs.back_state = namer.fresh("b");
    cs.cover_target = namer.fresh("t'");

    Prvass &sys = cs.system;
    sys.name = m.name.empty() ? std::string() : m.name + "-compiled";
    sys.stack_alphabet = compiled_stack_alphabet();
    sys.init = cs.start;
    sys.states.push_back(cs.start);
    sys.states.insert(sys.states.end(), m.states.begin(), m.states.end());
    sys.states.push_back(cs.back_state);
    sys.states.push_back(cs.cover_target);

    auto splice = [&](const Gadget &g) {
        const auto states = g.states();
        sys.states.insert(sys.states.end(), states.begin(), states.end());
        sys.actions.insert(sys.actions.end(), g.actions.begin(), g.actions.end());
    };

    // Encoding 1 = 2^0·3^0.
    sys.actions.push_back({cs.start,
                           {Instruction::push(std::string(bottom_symbol)), push_separator(),
                            push_unit()},
                           cs.machine_states_image.at(m.source)});

    const Nfa nfa = minsky_to_nfa(m);
    for (const auto &e : nfa.edges) {
        Gadget g = build_gadget(e.label, Direction::forward, namer, "a" + std::to_string(e.origin));
        sys.actions.push_back({cs.machine_states_image.at(e.source), {}, g.entry});
        splice(g);
        sys.actions.push_back({g.exit, {}, cs.machine_states_image.at(e.target)});
        cs.gadgets.push_back({g.entry, g.exit, g.symbol, g.direction, e.origin});
    }

    // Leave the forward phase only when the encoding is exactly 1.
    sys.actions.push_back({cs.machine_states_image.at(m.target),
                           {pop_unit(), pop_separator(), push_separator(), push_unit()},
                           cs.back_state});

    for (DeltaSymbol x : delta_alphabet) {
        Gadget g = build_gadget(x, Direction::backward, namer, "back");
        sys.actions.push_back({cs.back_state, {}, g.entry});
        splice(g);
        sys.actions.push_back({g.exit, {}, cs.back_state});
        cs.gadgets.push_back({g.entry, g.exit, g.symbol, g.direction, std::nullopt});
    }

    sys.actions.push_back(
        {cs.back_state,
         {pop_unit(), pop_separator(), Instruction::pop(std::string(bottom_symbol))},
         cs.cover_target});
    return cs;
}

ContractResult gadget_contract_set(const Gadget &g, Value m, std::span<const DeltaSymbol> record,
                                   Value bound) {
    Prvass p;
    p.states = g.states();
    p.stack_alphabet = compiled_stack_alphabet();
    p.actions = g.actions;
    const System sys(std::move(p));

    const SymbolId bottom = sys.symbol(bottom_symbol);
    const SymbolId separator = sys.symbol(separator_symbol);
    const SymbolId unit = sys.symbol(unit_symbol);
    const StateId exit = sys.state(g.exit);

    Configuration start{sys.state(g.entry), {bottom}, 0};
    for (DeltaSymbol x : record)
        start.stack.push_back(sys.symbol(to_string(x)));
    start.stack.push_back(separator);
    start.stack.insert(start.stack.end(), m, unit);

    ContractResult result;
    std::set<Configuration> seen{start};
    std::deque<Configuration> queue{start};
    while (!queue.empty()) {
        Configuration cfg = std::move(queue.front());
        queue.pop_front();
        if (cfg.state == exit && cfg.counter == 0) {
            // bot · record' · hash · a^n
            const auto sep = std::find(cfg.stack.begin(), cfg.stack.end(), separator);
            std::vector<DeltaSymbol> rec;
            for (auto it = cfg.stack.begin() + 1; it != sep; ++it)
                rec.push_back(*parse_delta(sys.name(*it)));
            const auto n = static_cast<Value>(cfg.stack.end() - sep - 1);
            result.exits.emplace(std::move(rec), n);
        }
        for (auto &succ : successors(sys, cfg)) {
            if (succ.config.stack.size() > bound || succ.config.counter > bound) {
                result.bound_hit = true;
                continue;
            }
            if (seen.insert(succ.config).second)
                queue.push_back(std::move(succ.config));
        }
    }
    return result;
}

BoundaryChecker::BoundaryChecker(const CompiledSystem &cs, const System &sys)
    : kind_(sys.state_count(), Kind::none), is_delta_(sys.symbol_count(), 0),
      bottom_(sys.symbol(bottom_symbol)), separator_(sys.symbol(separator_symbol)),
      unit_(sys.symbol(unit_symbol)) {
    for (const auto &[name, image] : cs.machine_states_image)
        kind_[sys.state(image).index] = Kind::encoded;
    kind_[sys.state(cs.back_state).index] = Kind::encoded;
    // Gadget entries double as loop states, so only exits are checked; a
    // configuration arriving at an entry equals the one it left.
    for (const auto &g : cs.gadgets)
        kind_[sys.state(g.exit).index] = Kind::encoded;
    kind_[sys.state(cs.start).index] = Kind::empty;
    kind_[sys.state(cs.cover_target).index] = Kind::empty;
    for (DeltaSymbol x : delta_alphabet)
        is_delta_[sys.symbol(to_string(x)).index] = 1;
}

std::optional<bool> BoundaryChecker::check(const Configuration &cfg) const {
    switch (kind_[cfg.state.index]) {
    case Kind::none:
        return std::nullopt;
    case Kind::empty:
        return cfg.stack.empty() && cfg.counter == 0;
    case Kind::encoded:
        break;
    }
    if (cfg.counter != 0 || cfg.stack.empty() || cfg.stack.front() != bottom_)
        return false;
    std::size_t i = 1;
    while (i < cfg.stack.size() && is_delta_[cfg.stack[i].index])
        ++i;
    if (i == cfg.stack.size() || cfg.stack[i] != separator_)
        return false;
    for (++i; i < cfg.stack.size(); ++i)
        if (cfg.stack[i] != unit_)
            return false;
    return true;
}

}  // namespace prvass
