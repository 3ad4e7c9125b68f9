#include "prvass/explorer.hpp"
#include "prvass/io.hpp"
#include "prvass/reference.hpp"

#include <doctest.h>

#include <set>

using namespace prvass;

namespace {

MinskyMachine corpus(const std::string &name) {
    return parse_minsky(read_file(std::string(CORPUS_DIR) + "/" + name + ".minsky"));
}

// The closure of `start` under successors(), with the same pruning rules as the
// search but no depth bookkeeping.
std::set<Configuration> naive_reachable(const System &sys, const Configuration &start,
                                        const Bounds &b, bool &pruned) {
    std::set<Configuration> seen{start};
    std::vector<Configuration> work{start};
    pruned = false;
    while (!work.empty()) {
        const Configuration c = work.back();
        work.pop_back();
        for (auto &s : successors(sys, c)) {
            if (s.config.stack.size() > b.max_stack || s.config.counter > b.max_counter) {
                pruned = true;
                continue;
            }
            if (seen.insert(s.config).second)
                work.push_back(std::move(s.config));
        }
    }
    return seen;
}

System toy(std::vector<Action> actions) {
    Prvass p;
    p.states = {"q", "r", "u"};
    p.stack_alphabet = {"a", "z"};
    p.actions = std::move(actions);
    p.init = "q";
    return System(std::move(p));
}

}  // namespace

TEST_CASE("bounded_cover outcomes") {
    const System sys = toy({{"q", {Instruction::push("a")}, "q"},
                            {"q", {Instruction::pop("a"), Instruction::pop("a")}, "r"}});
    const auto q = sys.state("q"), r = sys.state("r"), u = sys.state("u");

    Verdict v = bounded_cover(sys, {q, {}, 0}, r, {});
    REQUIRE(v.outcome == Outcome::covered);
    CHECK(v.trace.steps.size() == 3);
    CHECK(v.trace.last() == Configuration{r, {}, 0});
    CHECK(replay_trace(sys, v.trace));

    // u is unreachable but the push loop never ends
    v = bounded_cover(sys, {q, {}, 0}, u, {});
    CHECK(v.outcome == Outcome::bounds_hit);

    const System finite = toy({{"q", {Instruction::inc()}, "r"}, {"r", {Instruction::dec()}, "r"}});
    v = bounded_cover(finite, {finite.state("q"), {}, 0}, finite.state("u"), {});
    CHECK(v.outcome == Outcome::exhausted_no_cover);
    CHECK(v.stats.visited == 3);

    // start already at the target
    v = bounded_cover(finite, {finite.state("r"), {}, 4}, finite.state("r"), {});
    CHECK(v.outcome == Outcome::covered);
    CHECK(v.trace.steps.empty());

    Bounds tiny;
    tiny.max_visited = 2;
    v = bounded_cover(sys, {q, {}, 0}, u, tiny);
    CHECK(v.outcome == Outcome::bounds_hit);
    CHECK(v.stats.visited == 2);

    Bounds zero;
    zero.max_stack = 0;
    CHECK_THROWS_AS(bounded_cover(sys, {q, {}, 0}, r, zero), std::invalid_argument);
}

TEST_CASE("minsky_bounded_reach") {
    auto v = minsky_bounded_reach(corpus("inc-dec"), {});
    REQUIRE(v.outcome == Outcome::covered);
    CHECK(v.trace.steps.size() == 2);
    CHECK(replay_minsky_trace(corpus("inc-dec"), v.trace));

    CHECK(minsky_bounded_reach(corpus("inc-only"), {}).outcome == Outcome::exhausted_no_cover);
    CHECK(minsky_bounded_reach(corpus("dead"), {}).outcome == Outcome::exhausted_no_cover);

    const MinskyMachine pump{"", {"s", "t"}, {{"s", 0, MinskyOp::increment, "s"}}, "s", "t"};
    Bounds b;
    b.max_counter = 20;
    const auto p = minsky_bounded_reach(pump, b);
    CHECK(p.outcome == Outcome::bounds_hit);
    CHECK(p.stats.visited == 21);
}

TEST_CASE("replay rejects altered traces") {
    const MinskyMachine m = corpus("swap");
    const auto d = differential_check(m, {}, {});
    REQUIRE(d.compiled.outcome == Outcome::covered);
    const System sys(d.compiled_system.system);
    const Trace &tr = d.compiled.trace;
    CHECK(replay_trace(sys, tr));
    CHECK(replay_trace(sys, Trace{tr.start, {}}));

    for (std::size_t i : {std::size_t{0}, tr.steps.size() / 2, tr.steps.size() - 1}) {
        Trace bad = tr;
        bad.steps[i].config.counter += 1;
        const auto res = replay_trace(sys, bad);
        CHECK_FALSE(res.ok);
        CHECK(res.failed_step == i);
    }

    MinskyTrace mt = d.minsky.trace;
    REQUIRE_FALSE(mt.steps.empty());
    mt.steps[0].config.counters[1] = 7;
    CHECK(replay_minsky_trace(m, mt).failed_step == 0);
}

TEST_CASE("differential check on the corpus") {
    const std::vector<std::pair<std::string, Outcome>> expected{
        {"inc-dec", Outcome::covered},           {"zero-gated", Outcome::covered},
        {"swap", Outcome::covered},              {"double-inc-dec", Outcome::covered},
        {"counter1-round-trip", Outcome::covered}, {"interleaved", Outcome::covered},
        {"branch-match", Outcome::covered},      {"inc-only", Outcome::exhausted_no_cover},
        {"dead", Outcome::exhausted_no_cover},   {"dec-at-zero", Outcome::exhausted_no_cover},
        {"inc-then-zero", Outcome::exhausted_no_cover},
        {"wrong-counter", Outcome::exhausted_no_cover},
        {"branch-mismatch", Outcome::exhausted_no_cover},
        {"gate-blocked", Outcome::exhausted_no_cover},
    };
    for (const auto &[name, outcome] : expected) {
        const auto d = differential_check(corpus(name), {}, {}, {1, true});
        CHECK_MESSAGE(d.agreement == Agreement::agree, name);
        CHECK_MESSAGE(d.minsky.outcome == outcome, name);
        CHECK_MESSAGE(d.compiled.outcome == outcome, name);
        CHECK_MESSAGE(d.boundary_violations == 0, name);
        CHECK(d.boundary_checked > 0);
    }
}

TEST_CASE("large encodings are reported as inconclusive") {
    MinskyMachine m{"big", {}, {}, "s", "t"};
    for (int i = 0; i <= 16; ++i)
        m.states.push_back("q" + std::to_string(i));
    m.source = "q0";
    m.target = "q16";
    for (int i = 0; i < 8; ++i)
        m.actions.push_back({"q" + std::to_string(i), 0, MinskyOp::increment,
                             "q" + std::to_string(i + 1)});
    for (int i = 8; i < 16; ++i)
        m.actions.push_back({"q" + std::to_string(i), 0, MinskyOp::decrement,
                             "q" + std::to_string(i + 1)});
    const auto d = differential_check(m, {}, {});
    CHECK(d.minsky.outcome == Outcome::covered);
    CHECK(d.compiled.outcome == Outcome::bounds_hit);
    CHECK(d.agreement == Agreement::inconclusive);
}

TEST_CASE("search results do not depend on the thread count") {
    for (const char *name : {"swap", "interleaved", "gate-blocked"}) {
        const auto cs = compile(corpus(name));
        const System sys(cs.system);
        const Configuration start{sys.state(cs.start), {}, 0};
        const auto target = sys.state(cs.cover_target);
        const Verdict one = bounded_cover(sys, start, target, {}, {1, {}, true});
        const Verdict four = bounded_cover(sys, start, target, {}, {4, {}, true});
        const Verdict ref = reference::bounded_cover(sys, start, target, {});
        CHECK(one.outcome == four.outcome);
        CHECK(one.outcome == ref.outcome);
        CHECK(one.trace == four.trace);
        CHECK(one.trace == ref.trace);
        CHECK(one.stats.visited == four.stats.visited);
        CHECK(one.stats.visited == ref.stats.visited);
        CHECK(one.per_state == four.per_state);

        std::vector<Configuration> order1, order4;
        bounded_cover(sys, start, target, {}, {1, [&](const Configuration &c) { order1.push_back(c); }});
        bounded_cover(sys, start, target, {}, {4, [&](const Configuration &c) { order4.push_back(c); }});
        CHECK(order1 == order4);
    }
}

TEST_CASE("full enumeration matches a naive fixpoint") {
    for (const char *name : {"inc-dec", "gate-blocked", "branch-mismatch", "interleaved"}) {
        const auto cs = compile(corpus(name));
        const System sys(cs.system);
        const Configuration start{sys.state(cs.start), {}, 0};
        const Verdict v = bounded_cover(sys, start, std::nullopt, {}, {2, {}, true});
        bool pruned = false;
        const auto naive = naive_reachable(sys, start, {}, pruned);
        CHECK(v.outcome == (pruned ? Outcome::bounds_hit : Outcome::exhausted_no_cover));
        CHECK(v.stats.visited == naive.size());
        std::vector<std::uint64_t> per_state(sys.state_count(), 0);
        for (const auto &c : naive)
            ++per_state[c.state.index];
        CHECK(v.per_state == per_state);
    }
    const System sys = toy({{"q", {Instruction::push("z")}, "q"}});
    Bounds b;
    b.max_stack = 5;
    const Verdict v = bounded_cover(sys, {sys.state("q"), {}, 0}, std::nullopt, b);
    CHECK(v.outcome == Outcome::bounds_hit);
    CHECK(v.stats.visited == 6);
}

TEST_CASE("negative verdicts survive doubled bounds") {
    for (const char *name : {"inc-only", "dec-at-zero", "wrong-counter", "branch-mismatch"}) {
        const MinskyMachine m = corpus(name);
        const Bounds b;
        const auto d1 = differential_check(m, b, b);
        const auto d2 = differential_check(m, b.scaled(2), b.scaled(2));
        CHECK(d1.compiled.outcome == Outcome::exhausted_no_cover);
        CHECK(d2.compiled.outcome == Outcome::exhausted_no_cover);
        CHECK(d1.compiled.stats.visited == d2.compiled.stats.visited);
    }
}
