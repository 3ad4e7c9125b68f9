#pragma once

// Line-oriented text formats for machines, systems and traces.
//
//   minsky [name]               prvass [name]
//   states: s q t               states: q1 q2
//   init: s                     stack: a bot hash
//   final: t                    init: q1
//   s 0 inc q                   q1 -> q2 : pop(a), inc, inc
//
// '#' starts a comment. Identifiers are runs of characters other than
// whitespace and , ( ) : #.

#include "prvass/explorer.hpp"
#include "prvass/model.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace prvass {

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string &message);
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

enum class ModelKind : std::uint8_t { minsky, prvass };

/// Kind named by the header line. Throws ParseError.
ModelKind detect_kind(std::string_view text);

/// Both parsers also validate the result and report violations as ParseError
/// at the offending line.
MinskyMachine parse_minsky(std::string_view text);
std::string serialize_minsky(const MinskyMachine &m);

Prvass parse_prvass(std::string_view text);
std::string serialize_prvass(const Prvass &sys);

/// FNV-1a, rendered as 16 lowercase hex digits.
std::string content_hash(std::string_view bytes);

/// Header "# trace system-hash=<hash>", then one "state<TAB>stack<TAB>counter"
/// line per configuration, starting with the initial one.
std::string write_trace(const System &sys, const Trace &tr, std::string_view system_text);

/// Rebuilds a Trace, attributing each step to the first action that produces
/// it. Steps no action produces get an out-of-range action id so replay_trace
/// rejects them. Throws ParseError on malformed lines, unknown names, or a
/// hash mismatch.
Trace read_trace(const System &sys, std::string_view trace_text, std::string_view system_text);

std::string read_file(const std::string &path);
void write_file(const std::string &path, std::string_view contents);

}  // namespace prvass
