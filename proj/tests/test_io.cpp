#include "prvass/explorer.hpp"
#include "prvass/io.hpp"
#include "prvass/reduction.hpp"

#include <doctest.h>

#include <filesystem>

using namespace prvass;

namespace {

std::string corpus_text(const std::string &name) {
    return read_file(std::string(CORPUS_DIR) + "/" + name + ".minsky");
}

std::size_t error_line(std::string_view text, bool minsky) {
    try {
        if (minsky)
            parse_minsky(text);
        else
            parse_prvass(text);
    } catch (const ParseError &e) {
        return e.line();
    }
    return 0;
}

}  // namespace

TEST_CASE("parse a corpus machine") {
    const MinskyMachine m = parse_minsky(corpus_text("inc-dec"));
    CHECK(m.name == "inc-dec");
    CHECK(m.states == std::vector<std::string>{"s", "q", "t"});
    CHECK(m.source == "s");
    CHECK(m.target == "t");
    REQUIRE(m.actions.size() == 2);
    CHECK(m.actions[0].op == MinskyOp::increment);
    CHECK(m.actions[1].counter == 0);
    CHECK(m.actions[1].op == MinskyOp::decrement);
    CHECK(m.actions[1].target == "t");
    CHECK(detect_kind(corpus_text("inc-dec")) == ModelKind::minsky);
}

TEST_CASE("parse errors carry the offending line") {
    const std::string bad_op = "minsky\nstates: s t\ninit: s\nfinal: t\ns 0 inc t\ns 1 foo t\n";
    CHECK(error_line(bad_op, true) == 6);
    try {
        parse_minsky(bad_op);
    } catch (const ParseError &e) {
        CHECK(std::string(e.what()).find("foo") != std::string::npos);
    }

    CHECK(error_line("minsky\nstates: s t\ninit: s\nfinal: t\ns 2 inc t\n", true) == 5);
    CHECK(error_line("minsky\nstates: s t\ninit: s\nfinal: t\ns 0 inc u\n", true) == 5);
    CHECK(error_line("minsky\nstates: s t\ninit: s\n", true) > 0);
    CHECK(error_line("", true) == 1);
    CHECK(error_line("prvass\nstates: q\nstack: a\n", true) == 1);

    const std::string unknown_pop = "prvass\nstates: q r\nstack: a\n# comment\nq -> r : pop(b)\n";
    CHECK(error_line(unknown_pop, false) == 5);
    CHECK(error_line("prvass\nstates: q r\nstack: a\nq => r : inc\n", false) == 4);
    CHECK(error_line("prvass\nstates: q r\nstack: a\nq -> r : twiddle\n", false) == 4);
}

TEST_CASE("canonical machines round-trip byte for byte") {
    for (const char *name : {"inc-dec", "zero-gated", "double-inc-dec", "counter1-round-trip",
                             "interleaved", "branch-match", "inc-only", "dec-at-zero",
                             "inc-then-zero", "wrong-counter", "gate-blocked"}) {
        const std::string text = corpus_text(name);
        CHECK_MESSAGE(serialize_minsky(parse_minsky(text)) == text, name);
    }
}

TEST_CASE("serialization is idempotent") {
    for (const char *name : {"swap", "dead", "branch-mismatch"}) {
        const std::string once = serialize_minsky(parse_minsky(corpus_text(name)));
        CHECK(serialize_minsky(parse_minsky(once)) == once);
        CHECK(parse_minsky(once).actions.size() == parse_minsky(corpus_text(name)).actions.size());
    }
}

TEST_CASE("prvass text format") {
    const std::string text = "prvass toy\n"
                             "states: q1 q2\n"
                             "stack: a bot hash\n"
                             "init: q1\n"
                             "q1 -> q2 : pop(a), inc, inc\n";
    const Prvass p = parse_prvass(text);
    CHECK(p.name == "toy");
    REQUIRE(p.actions.size() == 1);
    CHECK(p.actions[0].body ==
          std::vector<Instruction>{Instruction::pop("a"), Instruction::inc(), Instruction::inc()});
    CHECK(serialize_prvass(p) == text);

    const Prvass eps = parse_prvass("prvass\nstates: q r\nstack: a\nq -> r :\nr -> q : reset, dec, push(a)\n");
    CHECK(eps.actions[0].body.empty());
    CHECK(eps.actions[1].body.size() == 3);
    CHECK(parse_prvass(serialize_prvass(eps)).actions[1].body == eps.actions[1].body);
}

TEST_CASE("compiled systems round-trip") {
    const CompiledSystem cs = compile(parse_minsky(corpus_text("inc-dec")));
    const std::string text = serialize_prvass(cs.system);
    const Prvass back = parse_prvass(text);
    CHECK(back.states == cs.system.states);
    CHECK(back.stack_alphabet == cs.system.stack_alphabet);
    CHECK(back.init == cs.system.init);
    REQUIRE(back.actions.size() == cs.system.actions.size());
    for (std::size_t i = 0; i < back.actions.size(); ++i) {
        CHECK(back.actions[i].source == cs.system.actions[i].source);
        CHECK(back.actions[i].body == cs.system.actions[i].body);
        CHECK(back.actions[i].target == cs.system.actions[i].target);
    }
    CHECK(serialize_prvass(back) == text);
    CHECK(detect_kind(text) == ModelKind::prvass);
}

TEST_CASE("content hash") {
    CHECK(content_hash("") == "cbf29ce484222325");
    CHECK(content_hash("a") == "af63dc4c8601ec8c");
    CHECK(content_hash("a") != content_hash("b"));
}

TEST_CASE("traces survive a write/read cycle") {
    const CompiledSystem cs = compile(parse_minsky(corpus_text("swap")));
    const std::string text = serialize_prvass(cs.system);
    const System sys(parse_prvass(text));
    const Verdict v = bounded_cover(sys, {sys.state(cs.start), {}, 0}, sys.state(cs.cover_target), {});
    REQUIRE(v.outcome == Outcome::covered);

    const std::string written = write_trace(sys, v.trace, text);
    CHECK(written.rfind("# trace system-hash=" + content_hash(text) + "\n", 0) == 0);
    const Trace read = read_trace(sys, written, text);
    CHECK(read.start == v.trace.start);
    REQUIRE(read.steps.size() == v.trace.steps.size());
    for (std::size_t i = 0; i < read.steps.size(); ++i)
        CHECK(read.steps[i].config == v.trace.steps[i].config);
    CHECK(replay_trace(sys, read));

    CHECK_THROWS_AS(read_trace(sys, written, text + "\n"), ParseError);

    // a step no action produces is rejected at replay
    std::string tampered = written;
    const auto pos = tampered.rfind("\t0\n");
    REQUIRE(pos != std::string::npos);
    tampered.replace(pos, 3, "\t5\n");
    const Trace bad = read_trace(sys, tampered, text);
    CHECK_FALSE(replay_trace(sys, bad));
}

TEST_CASE("files") {
    const auto path = std::filesystem::temp_directory_path() / "prvass_io_test.txt";
    write_file(path.string(), "hello\n");
    CHECK(read_file(path.string()) == "hello\n");
    std::filesystem::remove(path);
    CHECK_THROWS(read_file(path.string()));
}
