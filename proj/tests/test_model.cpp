#include "prvass/model.hpp"
#include "prvass/reduction.hpp"

#include <doctest.h>

#include <random>
#include <set>

using namespace prvass;

namespace {

// Alphabet {bot, hash, a} with ids 0, 1, 2.
System small_system(std::vector<Action> actions = {}, std::vector<std::string> states = {"q"}) {
    Prvass p;
    p.states = std::move(states);
    p.stack_alphabet = {"bot", "hash", "a"};
    p.actions = std::move(actions);
    return System(std::move(p));
}

constexpr SymbolId bot{0}, hash{1}, unit{2};

Op push(SymbolId s) { return {InstrKind::push, s}; }
Op pop(SymbolId s) { return {InstrKind::pop, s}; }
constexpr Op inc{InstrKind::increment, {}};
constexpr Op dec{InstrKind::decrement, {}};
constexpr Op rst{InstrKind::reset, {}};

// The step relation read literally off its definition, as a predicate.
bool related(const Op &x, const StackCounter &from, const StackCounter &to) {
    switch (x.kind) {
    case InstrKind::push: {
        Stack w = from.stack;
        w.push_back(x.symbol);
        return to.stack == w && to.counter == from.counter;
    }
    case InstrKind::pop: {
        Stack w = to.stack;
        w.push_back(x.symbol);
        return from.stack == w && to.counter == from.counter;
    }
    case InstrKind::increment:
        return to.stack == from.stack && to.counter == from.counter + 1;
    case InstrKind::decrement:
        return to.stack == from.stack && to.counter + 1 == from.counter;
    case InstrKind::reset:
        return to.stack == from.stack && to.counter == 0;
    }
    return false;
}

// Every plausible one-instruction neighbour of `from`, unfiltered.
std::vector<StackCounter> candidates(const StackCounter &from, std::size_t symbols) {
    std::vector<Stack> stacks{from.stack};
    for (std::uint32_t z = 0; z < symbols; ++z) {
        Stack w = from.stack;
        w.push_back(SymbolId{z});
        stacks.push_back(w);
    }
    if (!from.stack.empty())
        stacks.emplace_back(from.stack.begin(), from.stack.end() - 1);
    std::vector<Counter> counters{0, from.counter, from.counter + 1};
    if (from.counter > 0)
        counters.push_back(from.counter - 1);
    std::vector<StackCounter> out;
    for (const auto &w : stacks)
        for (Counter n : counters)
            out.push_back({w, n});
    return out;
}

std::vector<Stack> all_stacks(std::size_t max_len, std::uint32_t symbols) {
    std::vector<Stack> out{{}};
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (out[i].size() == max_len)
            continue;
        for (std::uint32_t z = 0; z < symbols; ++z) {
            Stack w = out[i];
            w.push_back(SymbolId{z});
            out.push_back(w);
        }
    }
    return out;
}

}  // namespace

TEST_CASE("step_instruction follows the instruction definitions") {
    auto r = step_instruction({{bot, hash}, 3}, push(unit));
    REQUIRE(r);
    CHECK(*r == StackCounter{{bot, hash, unit}, 3});

    CHECK_FALSE(step_instruction({{bot, hash, unit}, 0}, dec));

    r = step_instruction({{bot, hash, unit}, 5}, rst);
    REQUIRE(r);
    CHECK(*r == StackCounter{{bot, hash, unit}, 0});

    CHECK_FALSE(step_instruction({{}, 1}, pop(unit)));
    CHECK_FALSE(step_instruction({{bot, hash}, 1}, pop(unit)));
}

TEST_CASE("step_sequence folds left to right") {
    const std::vector<Op> roundtrip{pop(unit), pop(hash), push(hash), push(unit)};
    auto r = step_sequence({{bot, hash, unit}, 0}, roundtrip);
    REQUIRE(r);
    CHECK(*r == StackCounter{{bot, hash, unit}, 0});

    const std::vector<Op> blocked{pop(unit), pop(hash)};
    CHECK_FALSE(step_sequence({{bot, hash, unit, unit}, 0}, blocked));

    const std::vector<Op> drain{pop(unit), inc, inc};
    r = step_sequence({{bot, hash, unit}, 0}, drain);
    REQUIRE(r);
    CHECK(*r == StackCounter{{bot, hash}, 2});

    CHECK(step_sequence({{bot}, 4}, std::vector<Op>{}) == StackCounter{{bot}, 4});
}

TEST_CASE("each instruction has at most one successor, matching the relational definition") {
    const auto stacks = all_stacks(4, 3);
    std::vector<Op> ops{inc, dec, rst};
    for (std::uint32_t z = 0; z < 3; ++z) {
        ops.push_back(push(SymbolId{z}));
        ops.push_back(pop(SymbolId{z}));
    }
    for (const auto &w : stacks) {
        for (Counter n = 0; n <= 3; ++n) {
            const StackCounter from{w, n};
            for (const Op &x : ops) {
                std::set<std::pair<Stack, Counter>> matches;
                for (const auto &c : candidates(from, 3))
                    if (related(x, from, c))
                        matches.emplace(c.stack, c.counter);
                REQUIRE(matches.size() <= 1);
                const auto got = step_instruction(from, x);
                CHECK(got.has_value() == (matches.size() == 1));
                if (got)
                    CHECK(*matches.begin() == std::pair{got->stack, got->counter});
            }
        }
    }
}

TEST_CASE("successors only observes action boundaries, in declaration order") {
    const System one = small_system({{"q", {Instruction::inc()}, "q"}});
    auto succ = successors(one, {StateId{0}, {bot}, 0});
    REQUIRE(succ.size() == 1);
    CHECK(succ[0].action == 0);
    CHECK(succ[0].config == Configuration{StateId{0}, {bot}, 1});

    const System idle = small_system({{"p", {Instruction::inc()}, "p"}}, {"q", "p"});
    CHECK(successors(idle, {idle.state("q"), {}, 0}).empty());

    StateNamer namer;
    const Gadget g = build_gadget({DeltaKind::mult, 2}, Direction::forward, namer, "g");
    Prvass p;
    p.states = g.states();
    p.stack_alphabet = compiled_stack_alphabet();
    p.actions = g.actions;
    const System gs(p);
    const std::vector<std::string> word{"bot", "hash", "a", "a"};
    succ = successors(gs, gs.config(g.entry, word, 0));
    REQUIRE(succ.size() == 1);
    CHECK(succ[0].config.state == gs.state(g.entry));
    CHECK(succ[0].config.counter == 2);
}

TEST_CASE("successors agrees with micro-step expansion of action bodies") {
    std::mt19937 rng(20240611);
    const std::vector<Op> pool{push(bot), push(hash), push(unit), pop(bot), pop(hash),
                               pop(unit), inc, dec, rst};
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1), len(0, 6);
    const auto stacks = all_stacks(3, 3);

    for (int trial = 0; trial < 200; ++trial) {
        Prvass p;
        p.states = {"q", "r"};
        p.stack_alphabet = {"bot", "hash", "a"};
        std::vector<std::vector<Op>> bodies;
        for (int a = 0; a < 3; ++a) {
            Action act{"q", {}, a == 1 ? "q" : "r"};
            std::vector<Op> body;
            for (std::size_t i = len(rng); i > 0; --i) {
                const Op &op = pool[pick(rng)];
                body.push_back(op);
                const std::string name = p.stack_alphabet[op.symbol.index];
                switch (op.kind) {
                case InstrKind::push:
                    act.body.push_back(Instruction::push(name));
                    break;
                case InstrKind::pop:
                    act.body.push_back(Instruction::pop(name));
                    break;
                case InstrKind::increment:
                    act.body.push_back(Instruction::inc());
                    break;
                case InstrKind::decrement:
                    act.body.push_back(Instruction::dec());
                    break;
                case InstrKind::reset:
                    act.body.push_back(Instruction::reset());
                    break;
                }
            }
            p.actions.push_back(act);
            bodies.push_back(body);
        }
        const System sys(p);

        for (const auto &w : stacks) {
            for (Counter n = 0; n <= 2; ++n) {
                const Configuration cfg{sys.state("q"), w, n};
                std::set<std::pair<std::uint32_t, Configuration>> expected;
                for (std::uint32_t a = 0; a < bodies.size(); ++a) {
                    // materialize micro-configurations one instruction at a time
                    std::vector<StackCounter> frontier{{w, n}};
                    for (const Op &x : bodies[a]) {
                        std::vector<StackCounter> next;
                        for (const auto &from : frontier)
                            for (const auto &c : candidates(from, 3))
                                if (related(x, from, c))
                                    next.push_back(c);
                        frontier = std::move(next);
                    }
                    for (const auto &sc : frontier)
                        expected.emplace(a, Configuration{sys.transitions()[a].target, sc.stack,
                                                          sc.counter});
                }
                std::set<std::pair<std::uint32_t, Configuration>> got;
                for (const auto &s : successors(sys, cfg))
                    got.emplace(s.action, s.config);
                CHECK(got == expected);
            }
        }
    }
}

TEST_CASE("minsky_successors") {
    MinskyMachine m{"", {"s", "t"}, {{"s", 0, MinskyOp::zero_test, "t"}}, "s", "t"};
    auto succ = minsky_successors(m, {"s", {0, 0}});
    REQUIRE(succ.size() == 1);
    CHECK(succ[0].config == MinskyConfig{"t", {0, 0}});
    CHECK(minsky_successors(m, {"s", {1, 0}}).empty());

    MinskyMachine d{"", {"s", "t"}, {{"s", 1, MinskyOp::decrement, "t"}}, "s", "t"};
    succ = minsky_successors(d, {"s", {0, 2}});
    REQUIRE(succ.size() == 1);
    CHECK(succ[0].config == MinskyConfig{"t", {0, 1}});
    CHECK(minsky_successors(d, {"s", {5, 0}}).empty());

    MinskyMachine i{"", {"s"}, {{"s", 0, MinskyOp::increment, "s"}}, "s", "s"};
    succ = minsky_successors(i, {"s", {2, 7}});
    REQUIRE(succ.size() == 1);
    CHECK(succ[0].config == MinskyConfig{"s", {3, 7}});
}

TEST_CASE("validate reports each violation") {
    StateNamer namer;
    const Gadget g = build_gadget({DeltaKind::mult, 2}, Direction::forward, namer, "g");
    Prvass p;
    p.states = g.states();
    p.stack_alphabet = compiled_stack_alphabet();
    p.actions = g.actions;
    CHECK(validate(p).empty());

    Prvass bad_state = p;
    bad_state.actions.push_back({g.entry, {}, "x"});
    auto diags = validate(bad_state);
    REQUIRE(diags.size() == 1);
    CHECK(diags[0].action == bad_state.actions.size() - 1);
    CHECK(diags[0].message.find("'x'") != std::string::npos);

    Prvass bad_symbol = p;
    bad_symbol.actions.push_back({g.entry, {Instruction::push("zz")}, g.exit});
    diags = validate(bad_symbol);
    REQUIRE(diags.size() == 1);
    CHECK(diags[0].action == bad_symbol.actions.size() - 1);
    CHECK(diags[0].message.find("'zz'") != std::string::npos);

    CHECK_THROWS_AS(System{bad_symbol}, ValidationError);

    MinskyMachine m{"", {"s", "t"}, {{"s", 2, MinskyOp::increment, "u"}}, "s", "v"};
    CHECK(validate(m).size() == 3);
}
