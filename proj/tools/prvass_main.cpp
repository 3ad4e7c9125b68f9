// prvass: compile two-counter machines to 1-PRVASS, search for covering runs,
// and run the brute-force relation checks.
//
// Exit codes: 0 definitive and expected, 1 definitive but negative,
// 2 bounds hit / inconclusive, 3 usage or parse error.

#include "prvass/explorer.hpp"
#include "prvass/io.hpp"
#include "prvass/reduction.hpp"
#include "prvass/weak.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <iostream>
#include <sstream>

using namespace prvass;
using nlohmann::json;

namespace {

enum Exit : int { ok = 0, negative = 1, inconclusive = 2, usage = 3 };

struct BoundFlags {
    Bounds bounds;

    void attach(CLI::App *cmd) {
        if (const char *env = std::getenv("PRVASS_MAX_VISITED")) {
            try {
                bounds.max_visited = std::stoull(env);
            } catch (const std::exception &) {
                std::cerr << "warning: ignoring malformed PRVASS_MAX_VISITED\n";
            }
        }
        cmd->add_option("--max-steps", bounds.max_steps, "BFS depth budget")->capture_default_str();
        cmd->add_option("--max-stack", bounds.max_stack, "stack height bound")->capture_default_str();
        cmd->add_option("--max-counter", bounds.max_counter, "counter bound")->capture_default_str();
        cmd->add_option("--max-visited", bounds.max_visited, "global configuration budget")
            ->capture_default_str();
    }
};

void print_stats(std::ostream &out, const SearchStats &s, const std::string &prefix = "") {
    out << prefix << "visited=" << s.visited << "\n"
        << prefix << "frontier_peak=" << s.frontier_peak << "\n"
        << prefix << "depth=" << s.depth << "\n";
    std::cerr << prefix << "elapsed_ms=" << s.elapsed_ms << "\n";
}

json stats_json(const SearchStats &s) {
    return {{"visited", s.visited}, {"frontier_peak", s.frontier_peak}, {"depth", s.depth}};
}

int run_compile(const std::string &in, const std::string &out) {
    const MinskyMachine m = parse_minsky(read_file(in));
    const CompiledSystem cs = compile(m);
    write_file(out, serialize_prvass(cs.system));
    std::cout << "states=" << cs.system.states.size() << "\n"
              << "actions=" << cs.system.actions.size() << "\n"
              << "start=" << cs.start << "\n"
              << "cover_target=" << cs.cover_target << "\n";
    return ok;
}

struct CoverArgs {
    std::string path, from, to, expect = "covered", trace_path;
    BoundFlags flags;
    int threads = 1;
    bool as_json = false;
};

int run_cover(const CoverArgs &args) {
    const std::string text = read_file(args.path);
    const System sys(parse_prvass(text));
    const std::string from = args.from.empty() ? sys.model().init : args.from;
    if (from.empty()) {
        std::cerr << "error: no --from given and the system has no init state\n";
        return usage;
    }
    const auto start_state = sys.find_state(from);
    const auto target = sys.find_state(args.to);
    if (!start_state || !target) {
        std::cerr << "error: unknown state '" << (start_state ? args.to : from) << "'\n";
        return usage;
    }

    SearchOptions opts;
    opts.threads = args.threads;
    const Verdict v = bounded_cover(sys, Configuration{*start_state, {}, 0}, *target,
                                    args.flags.bounds, opts);

    if (v.outcome == Outcome::covered && !args.trace_path.empty())
        write_file(args.trace_path, write_trace(sys, v.trace, text));

    if (args.as_json) {
        json j = stats_json(v.stats);
        j["verdict"] = to_string(v.outcome);
        if (v.outcome == Outcome::covered) {
            j["trace_length"] = v.trace.steps.size();
            json steps = json::array();
            for (const auto &s : v.trace.steps)
                steps.push_back({{"action", s.action}, {"config", sys.render(s.config)}});
            j["trace"] = steps;
        }
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "VERDICT=" << to_string(v.outcome) << "\n";
        print_stats(std::cout, v.stats);
        if (v.outcome == Outcome::covered) {
            std::cout << "trace_length=" << v.trace.steps.size() << "\n";
            std::cout << "  " << sys.render(v.trace.start) << "\n";
            for (const auto &s : v.trace.steps)
                std::cout << "  --" << s.action << "--> " << sys.render(s.config) << "\n";
        }
    }

    if (v.outcome == Outcome::bounds_hit)
        return inconclusive;
    const Outcome wanted =
        args.expect == "no-cover" ? Outcome::exhausted_no_cover : Outcome::covered;
    return v.outcome == wanted ? ok : negative;
}

struct SimulateArgs {
    std::string path, state, stack, counters;
    Counter counter = 0;
    BoundFlags flags;
    int threads = 1;
    bool as_json = false;
};

int run_simulate(const SimulateArgs &args) {
    const std::string text = read_file(args.path);
    json j;
    bool closed = false;
    if (detect_kind(text) == ModelKind::minsky) {
        const MinskyMachine m = parse_minsky(text);
        MinskyConfig start{args.state.empty() ? m.source : args.state, {0, 0}};
        if (!args.counters.empty()) {
            char comma = 0;
            std::istringstream in(args.counters);
            if (!(in >> start.counters[0] >> comma >> start.counters[1]) || comma != ',') {
                std::cerr << "error: --counters expects N0,N1\n";
                return usage;
            }
        }
        const MinskyVerdict v = minsky_bounded_reach_from(m, start, args.flags.bounds, false);
        closed = v.outcome == Outcome::exhausted_no_cover;
        j = stats_json(v.stats);
        j["model"] = "minsky";
        j["start"] = render(start);
    } else {
        const System sys(parse_prvass(text));
        const std::string st = args.state.empty() ? sys.model().init : args.state;
        if (!sys.find_state(st)) {
            std::cerr << "error: unknown start state '" << st << "'\n";
            return usage;
        }
        std::vector<std::string> names;
        std::istringstream in(args.stack);
        for (std::string s; in >> s;)
            names.push_back(s);
        const Configuration start = sys.config(st, names, args.counter);
        SearchOptions opts;
        opts.threads = args.threads;
        opts.count_states = true;
        const Verdict v = bounded_cover(sys, start, std::nullopt, args.flags.bounds, opts);
        closed = v.outcome == Outcome::exhausted_no_cover;
        j = stats_json(v.stats);
        j["model"] = "prvass";
        j["start"] = sys.render(start);
        json per_state = json::object();
        for (std::size_t i = 0; i < v.per_state.size(); ++i)
            if (v.per_state[i])
                per_state[sys.name(StateId{static_cast<std::uint32_t>(i)})] = v.per_state[i];
        j["per_state"] = per_state;
    }
    j["closed"] = closed;

    if (args.as_json) {
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "model=" << j["model"].get<std::string>() << "\n"
                  << "start=" << j["start"].get<std::string>() << "\n"
                  << "closed=" << (closed ? "yes" : "no") << "\n"
                  << "configurations=" << j["visited"] << "\n"
                  << "depth=" << j["depth"] << "\n"
                  << "frontier_peak=" << j["frontier_peak"] << "\n";
        if (j.contains("per_state"))
            for (const auto &[name, count] : j["per_state"].items())
                std::cout << "state " << name << " " << count << "\n";
    }
    return closed ? ok : inconclusive;
}

struct Prop1Args {
    std::vector<std::string> tokens;
    Value domain = 100;
    std::size_t max_length = 4;
    bool lemma = false;
    bool as_json = false;
};

int run_prop1(const Prop1Args &args) {
    std::vector<DeltaSymbol> seq;
    for (const auto &t : args.tokens) {
        auto s = parse_delta(t);
        if (!s) {
            std::cerr << "error: unknown operation '" << t << "' (expected m2 m3 d2 d3 t2 t3)\n";
            return usage;
        }
        seq.push_back(*s);
    }
    if (seq.empty() || seq.size() > args.max_length) {
        std::cerr << "error: sequence length must be between 1 and " << args.max_length << "\n";
        return usage;
    }

    const Prop1Report r = check_two_approximations(seq, args.domain);
    std::optional<LemmaReport> lr;
    if (args.lemma)
        lr = check_monotone_pairs_lemma(seq, args.domain);

    if (args.as_json) {
        json j{{"sequence", to_string(seq)},
               {"domain_bound", r.domain_bound},
               {"intermediate_bound", r.intermediate_bound},
               {"holds", r.holds}};
        if (r.counterexample)
            j["counterexample"] = {r.counterexample->first, r.counterexample->second};
        if (lr) {
            j["lemma_holds"] = lr->holds;
            if (lr->violation)
                j["lemma_violation"] = {lr->violation->m, lr->violation->n, lr->violation->m2,
                                        lr->violation->n2};
        }
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "sequence=" << to_string(seq) << "\n"
                  << "domain_bound=" << r.domain_bound << "\n"
                  << "intermediate_bound=" << r.intermediate_bound << "\n";
        if (r.holds) {
            std::cout << "holds\n";
        } else {
            std::cout << "fails";
            if (r.counterexample)
                std::cout << " counterexample=(" << r.counterexample->first << ","
                          << r.counterexample->second << ")";
            if (r.bound_exceeded)
                std::cout << " intermediate bound exceeded";
            std::cout << "\n";
        }
        if (lr) {
            std::cout << "lemma=" << (lr->holds ? "holds" : "fails");
            if (lr->violation)
                std::cout << " violation=(" << lr->violation->m << "," << lr->violation->n
                          << ")/(" << lr->violation->m2 << "," << lr->violation->n2 << ")";
            std::cout << "\n";
        }
    }
    return r.holds && (!lr || lr->holds) ? ok : negative;
}

struct DiffArgs {
    std::string path;
    BoundFlags flags;
    int threads = 1;
    bool check_boundary = false;
    bool as_json = false;
};

int run_diff(const DiffArgs &args) {
    const MinskyMachine m = parse_minsky(read_file(args.path));
    DiffOptions opts;
    opts.threads = args.threads;
    opts.check_boundary = args.check_boundary;
    const DiffReport r = differential_check(m, args.flags.bounds, args.flags.bounds, opts);

    if (args.as_json) {
        json j{{"minsky", stats_json(r.minsky.stats)},
               {"compiled", stats_json(r.compiled.stats)},
               {"result", to_string(r.agreement)}};
        j["minsky"]["verdict"] = to_string(r.minsky.outcome);
        j["compiled"]["verdict"] = to_string(r.compiled.outcome);
        if (args.check_boundary) {
            j["boundary_checked"] = r.boundary_checked;
            j["boundary_violations"] = r.boundary_violations;
        }
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "minsky VERDICT=" << to_string(r.minsky.outcome) << "\n";
        print_stats(std::cout, r.minsky.stats, "minsky ");
        std::cout << "compiled VERDICT=" << to_string(r.compiled.outcome) << "\n";
        print_stats(std::cout, r.compiled.stats, "compiled ");
        if (args.check_boundary)
            std::cout << "boundary_checked=" << r.boundary_checked << "\n"
                      << "boundary_violations=" << r.boundary_violations << "\n";
        std::cout << "RESULT=" << to_string(r.agreement) << "\n";
    }
    switch (r.agreement) {
    case Agreement::agree:
        return args.check_boundary && r.boundary_violations ? negative : ok;
    case Agreement::disagree:
        return negative;
    case Agreement::inconclusive:
        return inconclusive;
    }
    return inconclusive;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Pushdown VASS with resets: reduction from two-counter machines and bounded "
                 "coverability"};
    app.require_subcommand(1);
    int code = usage;

    std::string compile_in, compile_out;
    auto *compile_cmd = app.add_subcommand("compile", "compile a minsky file into a prvass file");
    compile_cmd->add_option("input", compile_in, "minsky file")->required();
    compile_cmd->add_option("output", compile_out, "prvass file to write")->required();
    compile_cmd->callback([&] { code = run_compile(compile_in, compile_out); });

    CoverArgs cover;
    auto *cover_cmd = app.add_subcommand("cover", "bounded coverability search");
    cover_cmd->add_option("system", cover.path, "prvass file")->required();
    cover_cmd->add_option("--from", cover.from, "start state (default: init)");
    cover_cmd->add_option("--to", cover.to, "state to cover")->required();
    cover_cmd->add_option("--expect", cover.expect, "expected verdict")
        ->check(CLI::IsMember({"covered", "no-cover"}))
        ->capture_default_str();
    cover_cmd->add_option("--trace", cover.trace_path, "write the witness trace here");
    cover_cmd->add_option("--threads", cover.threads, "frontier expansion threads (0 = all)");
    cover_cmd->add_flag("--json", cover.as_json, "structured output");
    cover.flags.attach(cover_cmd);
    cover_cmd->callback([&] { code = run_cover(cover); });

    SimulateArgs sim;
    auto *sim_cmd = app.add_subcommand("simulate", "enumerate the bounded reachable set");
    sim_cmd->add_option("model", sim.path, "minsky or prvass file")->required();
    sim_cmd->add_option("--state", sim.state, "start state (default: init)");
    sim_cmd->add_option("--stack", sim.stack, "prvass start stack, bottom first");
    sim_cmd->add_option("--counter", sim.counter, "prvass start counter");
    sim_cmd->add_option("--counters", sim.counters, "minsky start counters N0,N1");
    sim_cmd->add_option("--threads", sim.threads, "frontier expansion threads (0 = all)");
    sim_cmd->add_flag("--json", sim.as_json, "structured output");
    sim.flags.attach(sim_cmd);
    sim_cmd->add_option("--steps", sim.flags.bounds.max_steps, "step budget (alias of --max-steps)");
    sim_cmd->callback([&] { code = run_simulate(sim); });

    Prop1Args prop1;
    auto *prop1_cmd =
        app.add_subcommand("prop1", "check exact = forward-weak ∩ backward-weak composition");
    prop1_cmd->add_option("ops", prop1.tokens, "operations: m2 m3 d2 d3 t2 t3")->required();
    prop1_cmd->add_option("--domain", prop1.domain, "check all (m, n) up to this bound")
        ->capture_default_str();
    prop1_cmd->add_option("--max-length", prop1.max_length, "sequence length cap")
        ->capture_default_str();
    prop1_cmd->add_flag("--lemma", prop1.lemma, "also check the monotone-pairs lemma");
    prop1_cmd->add_flag("--json", prop1.as_json, "structured output");
    prop1_cmd->callback([&] { code = run_prop1(prop1); });

    DiffArgs diff;
    auto *diff_cmd = app.add_subcommand("diff", "compare machine reachability with compiled coverability");
    diff_cmd->add_option("machine", diff.path, "minsky file")->required();
    diff_cmd->add_option("--threads", diff.threads, "frontier expansion threads (0 = all)");
    diff_cmd->add_flag("--check-boundary", diff.check_boundary, "assert the boundary stack shape");
    diff_cmd->add_flag("--json", diff.as_json, "structured output");
    diff.flags.attach(diff_cmd);
    diff_cmd->callback([&] { code = run_diff(diff); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return usage;
    } catch (const ParseError &e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return usage;
    } catch (const ValidationError &e) {
        std::cerr << e.what() << "\n";
        return usage;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return usage;
    }
    return code;
}
