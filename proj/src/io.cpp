#include "prvass/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

namespace prvass {

namespace {

struct Token {
    std::string text;
    std::size_t column;  // 1-based
};

struct Line {
    std::size_t number;
    std::string text;  // comment stripped, may have surrounding blanks
};

bool is_blank(char c) { return c == ' ' || c == '\t' || c == '\r'; }

bool is_ident_char(char c) {
    return !is_blank(c) && c != '\n' && c != ',' && c != '(' && c != ')' && c != ':' && c != '#';
}

std::vector<Line> logical_lines(std::string_view text) {
    std::vector<Line> out;
    std::size_t number = 0;
    while (!text.empty()) {
        ++number;
        const auto nl = text.find('\n');
        std::string_view raw = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        if (auto hash = raw.find('#'); hash != std::string_view::npos)
            raw = raw.substr(0, hash);
        bool blank = true;
        for (char c : raw)
            blank = blank && is_blank(c);
        if (!blank)
            out.push_back({number, std::string(raw)});
    }
    return out;
}

std::vector<Token> split_blanks(std::string_view s, std::size_t offset = 0) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && is_blank(s[i]))
            ++i;
        const std::size_t start = i;
        while (i < s.size() && !is_blank(s[i]))
            ++i;
        if (i > start)
            out.push_back({std::string(s.substr(start, i - start)), offset + start + 1});
    }
    return out;
}

void expect_identifier(const Line &line, const Token &tok, const char *what) {
    for (char c : tok.text)
        if (!is_ident_char(c))
            throw ParseError(line.number, tok.column,
                             std::string("invalid character in ") + what + " '" + tok.text + "'");
}

// "key: a b c" → key and the tokens after the colon; nullopt if not a directive.
std::optional<std::pair<std::string, std::vector<Token>>> directive(const Line &line) {
    const auto toks = split_blanks(line.text);
    if (toks.empty())
        return std::nullopt;
    const std::string &head = toks[0].text;
    if (head.size() < 2 || head.back() != ':')
        return std::nullopt;
    const std::string key = head.substr(0, head.size() - 1);
    if (key != "states" && key != "init" && key != "final" && key != "stack")
        return std::nullopt;
    return std::pair{key, std::vector<Token>(toks.begin() + 1, toks.end())};
}

struct Header {
    ModelKind kind;
    std::string name;
};

Header parse_header(const std::vector<Line> &lines) {
    if (lines.empty())
        throw ParseError(1, 1, "empty file: expected 'minsky' or 'prvass' header");
    const auto toks = split_blanks(lines[0].text);
    Header h{};
    if (toks[0].text == "minsky")
        h.kind = ModelKind::minsky;
    else if (toks[0].text == "prvass")
        h.kind = ModelKind::prvass;
    else
        throw ParseError(lines[0].number, toks[0].column,
                         "expected 'minsky' or 'prvass' header, found '" + toks[0].text + "'");
    if (toks.size() > 2)
        throw ParseError(lines[0].number, toks[2].column, "unexpected token after model name");
    if (toks.size() == 2) {
        expect_identifier(lines[0], toks[1], "model name");
        h.name = toks[1].text;
    }
    return h;
}

std::string single_value(const Line &line, const std::string &key,
                         const std::vector<Token> &vals) {
    if (vals.size() != 1)
        throw ParseError(line.number, 1, "'" + key + ":' takes exactly one state");
    expect_identifier(line, vals[0], "state");
    return vals[0].text;
}

struct Directives {
    std::map<std::string, std::size_t> seen;  // key → line

    void mark(const Line &line, const std::string &key) {
        if (!seen.emplace(key, line.number).second)
            throw ParseError(line.number, 1, "duplicate '" + key + ":' directive");
    }
    std::size_t line_of(const std::string &key) const {
        auto it = seen.find(key);
        return it == seen.end() ? 1 : it->second;
    }
};

[[noreturn]] void report(const Diagnostic &d, const std::vector<std::size_t> &action_lines,
                         std::size_t fallback_line) {
    const std::size_t line = d.action ? action_lines[*d.action] : fallback_line;
    throw ParseError(line, 1, d.message);
}

std::string join(const std::vector<std::string> &items) {
    std::string out;
    for (const auto &s : items) {
        out += ' ';
        out += s;
    }
    return out;
}

Instruction parse_instruction(const Line &line, std::string_view text, std::size_t column) {
    // trim
    while (!text.empty() && is_blank(text.front())) {
        text.remove_prefix(1);
        ++column;
    }
    while (!text.empty() && is_blank(text.back()))
        text.remove_suffix(1);
    if (text.empty())
        throw ParseError(line.number, column, "empty instruction");
    if (text == "inc")
        return Instruction::inc();
    if (text == "dec")
        return Instruction::dec();
    if (text == "reset")
        return Instruction::reset();
    for (const std::string_view op : {"push", "pop"}) {
        if (text.size() > op.size() + 2 && text.substr(0, op.size()) == op &&
            text[op.size()] == '(' && text.back() == ')') {
            const std::string sym(text.substr(op.size() + 1, text.size() - op.size() - 2));
            for (char c : sym)
                if (!is_ident_char(c))
                    throw ParseError(line.number, column, "invalid stack symbol '" + sym + "'");
            return op == "push" ? Instruction::push(sym) : Instruction::pop(sym);
        }
    }
    throw ParseError(line.number, column,
                     "expected push(X), pop(X), inc, dec or reset, found '" + std::string(text) +
                         "'");
}

std::string render_instruction(const Instruction &ins) {
    switch (ins.kind) {
    case InstrKind::push:
        return "push(" + ins.symbol + ")";
    case InstrKind::pop:
        return "pop(" + ins.symbol + ")";
    case InstrKind::increment:
        return "inc";
    case InstrKind::decrement:
        return "dec";
    case InstrKind::reset:
        return "reset";
    }
    return "?";
}

}  // namespace

ParseError::ParseError(std::size_t line, std::size_t column, const std::string &message)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                         ": " + message),
      line_(line), column_(column) {}

ModelKind detect_kind(std::string_view text) { return parse_header(logical_lines(text)).kind; }

MinskyMachine parse_minsky(std::string_view text) {
    const auto lines = logical_lines(text);
    const Header header = parse_header(lines);
    if (header.kind != ModelKind::minsky)
        throw ParseError(lines[0].number, 1, "expected a 'minsky' file");

    MinskyMachine m;
    m.name = header.name;
    Directives dirs;
    std::vector<std::size_t> action_lines;

    for (std::size_t i = 1; i < lines.size(); ++i) {
        const Line &line = lines[i];
        if (auto d = directive(line)) {
            auto &[key, vals] = *d;
            dirs.mark(line, key);
            if (key == "states") {
                for (const auto &t : vals) {
                    expect_identifier(line, t, "state");
                    m.states.push_back(t.text);
                }
            } else if (key == "init") {
                m.source = single_value(line, key, vals);
            } else if (key == "final") {
                m.target = single_value(line, key, vals);
            } else {
                throw ParseError(line.number, 1, "'stack:' is not valid in a minsky file");
            }
            continue;
        }
        const auto toks = split_blanks(line.text);
        if (toks.size() != 4)
            throw ParseError(line.number, toks.empty() ? 1 : toks[0].column,
                             "expected '<source> <counter> <op> <target>'");
        expect_identifier(line, toks[0], "state");
        expect_identifier(line, toks[3], "state");
        MinskyAction a;
        a.source = toks[0].text;
        a.target = toks[3].text;
        if (toks[1].text == "0")
            a.counter = 0;
        else if (toks[1].text == "1")
            a.counter = 1;
        else
            throw ParseError(line.number, toks[1].column,
                             "expected counter index 0 or 1, found '" + toks[1].text + "'");
        if (toks[2].text == "inc")
            a.op = MinskyOp::increment;
        else if (toks[2].text == "dec")
            a.op = MinskyOp::decrement;
        else if (toks[2].text == "zero")
            a.op = MinskyOp::zero_test;
        else
            throw ParseError(line.number, toks[2].column,
                             "expected op inc, dec or zero, found '" + toks[2].text + "'");
        m.actions.push_back(std::move(a));
        action_lines.push_back(line.number);
    }

    for (const char *key : {"states", "init", "final"})
        if (!dirs.seen.contains(key))
            throw ParseError(lines.back().number, 1, std::string("missing '") + key + ":' line");
    if (auto diags = validate(m); !diags.empty())
        report(diags.front(), action_lines, dirs.line_of("states"));
    return m;
}

std::string serialize_minsky(const MinskyMachine &m) {
    std::string out = "minsky";
    if (!m.name.empty())
        out += " " + m.name;
    out += "\nstates:" + join(m.states) + "\n";
    out += "init: " + m.source + "\n";
    out += "final: " + m.target + "\n";
    for (const auto &a : m.actions)
        out += a.source + " " + std::to_string(a.counter) + " " + to_string(a.op) + " " +
               a.target + "\n";
    return out;
}

Prvass parse_prvass(std::string_view text) {
    const auto lines = logical_lines(text);
    const Header header = parse_header(lines);
    if (header.kind != ModelKind::prvass)
        throw ParseError(lines[0].number, 1, "expected a 'prvass' file");

    Prvass sys;
    sys.name = header.name;
    Directives dirs;
    std::vector<std::size_t> action_lines;

    for (std::size_t i = 1; i < lines.size(); ++i) {
        const Line &line = lines[i];
        if (auto d = directive(line)) {
            auto &[key, vals] = *d;
            dirs.mark(line, key);
            if (key == "states" || key == "stack") {
                auto &dest = key == "states" ? sys.states : sys.stack_alphabet;
                for (const auto &t : vals) {
                    expect_identifier(line, t, key == "states" ? "state" : "stack symbol");
                    dest.push_back(t.text);
                }
            } else if (key == "init") {
                sys.init = single_value(line, key, vals);
            } else {
                throw ParseError(line.number, 1, "'final:' is not valid in a prvass file");
            }
            continue;
        }

        const std::string_view text_view = line.text;
        const auto colon = text_view.find(':');
        if (colon == std::string_view::npos)
            throw ParseError(line.number, 1, "expected '<source> -> <target> : <instructions>'");
        const auto lhs = split_blanks(text_view.substr(0, colon));
        if (lhs.size() != 3 || lhs[1].text != "->")
            throw ParseError(line.number, lhs.empty() ? 1 : lhs[0].column,
                             "expected '<source> -> <target>' before ':'");
        expect_identifier(line, lhs[0], "state");
        expect_identifier(line, lhs[2], "state");

        Action a{lhs[0].text, {}, lhs[2].text};
        std::string_view rhs = text_view.substr(colon + 1);
        std::size_t column = colon + 2;
        bool rhs_blank = true;
        for (char c : rhs)
            rhs_blank = rhs_blank && is_blank(c);
        while (!rhs_blank) {
            const auto comma = rhs.find(',');
            a.body.push_back(parse_instruction(line, rhs.substr(0, comma), column));
            if (comma == std::string_view::npos)
                break;
            rhs.remove_prefix(comma + 1);
            column += comma + 1;
        }
        sys.actions.push_back(std::move(a));
        action_lines.push_back(line.number);
    }

    if (!dirs.seen.contains("states"))
        throw ParseError(lines.back().number, 1, "missing 'states:' line");
    if (auto diags = validate(sys); !diags.empty())
        report(diags.front(), action_lines, dirs.line_of("states"));
    return sys;
}

std::string serialize_prvass(const Prvass &sys) {
    std::string out = "prvass";
    if (!sys.name.empty())
        out += " " + sys.name;
    out += "\nstates:" + join(sys.states) + "\n";
    out += "stack:" + join(sys.stack_alphabet) + "\n";
    if (!sys.init.empty())
        out += "init: " + sys.init + "\n";
    for (const auto &a : sys.actions) {
        out += a.source + " -> " + a.target + " :";
        for (std::size_t i = 0; i < a.body.size(); ++i)
            out += (i ? ", " : " ") + render_instruction(a.body[i]);
        out += "\n";
    }
    return out;
}

std::string content_hash(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string write_trace(const System &sys, const Trace &tr, std::string_view system_text) {
    std::string out = "# trace system-hash=" + content_hash(system_text) + "\n";
    auto line = [&](const Configuration &c) {
        out += sys.name(c.state) + "\t" + sys.render_stack(c.stack) + "\t" +
               std::to_string(c.counter) + "\n";
    };
    line(tr.start);
    for (const auto &step : tr.steps)
        line(step.config);
    return out;
}

Trace read_trace(const System &sys, std::string_view trace_text, std::string_view system_text) {
    std::vector<std::pair<std::size_t, std::string>> rows;
    std::size_t number = 0;
    std::optional<std::string> hash;
    while (!trace_text.empty()) {
        ++number;
        const auto nl = trace_text.find('\n');
        std::string raw(trace_text.substr(0, nl));
        trace_text = nl == std::string_view::npos ? std::string_view{} : trace_text.substr(nl + 1);
        if (!raw.empty() && raw.back() == '\r')
            raw.pop_back();
        if (raw.empty())
            continue;
        if (raw.front() == '#') {
            const std::string key = "system-hash=";
            if (auto pos = raw.find(key); pos != std::string::npos)
                hash = raw.substr(pos + key.size());
            continue;
        }
        rows.emplace_back(number, std::move(raw));
    }
    if (!hash)
        throw ParseError(1, 1, "trace header with system-hash is missing");
    if (*hash != content_hash(system_text))
        throw ParseError(1, 1, "trace was recorded against a different system (hash mismatch)");
    if (rows.empty())
        throw ParseError(number, 1, "trace has no configurations");

    auto parse_config = [&](std::size_t ln, const std::string &row) {
        const auto t1 = row.find('\t');
        const auto t2 = t1 == std::string::npos ? t1 : row.find('\t', t1 + 1);
        if (t2 == std::string::npos)
            throw ParseError(ln, 1, "expected 'state<TAB>stack<TAB>counter'");
        Configuration c;
        const auto st = sys.find_state(row.substr(0, t1));
        if (!st)
            throw ParseError(ln, 1, "unknown state '" + row.substr(0, t1) + "'");
        c.state = *st;
        for (const auto &tok : split_blanks(std::string_view(row).substr(t1 + 1, t2 - t1 - 1))) {
            const auto sym = sys.find_symbol(tok.text);
            if (!sym)
                throw ParseError(ln, t1 + 1 + tok.column, "unknown stack symbol '" + tok.text + "'");
            c.stack.push_back(*sym);
        }
        const std::string count = row.substr(t2 + 1);
        const auto [ptr, ec] = std::from_chars(count.data(), count.data() + count.size(), c.counter);
        if (ec != std::errc{} || ptr != count.data() + count.size())
            throw ParseError(ln, t2 + 2, "invalid counter '" + count + "'");
        return c;
    };

    Trace tr;
    tr.start = parse_config(rows[0].first, rows[0].second);
    const Configuration *prev = &tr.start;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        TraceStep step{UINT32_MAX, parse_config(rows[i].first, rows[i].second)};
        for (const auto &succ : successors(sys, *prev)) {
            if (succ.config == step.config) {
                step.action = succ.action;
                break;
            }
        }
        tr.steps.push_back(std::move(step));
        prev = &tr.steps.back().config;
    }
    return tr;
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string &path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write '" + path + "'");
    out << contents;
}

}  // namespace prvass
