#include "prvass/weak.hpp"

#include "prvass/weak_kernels.hpp"

#include <stdexcept>

namespace prvass {

namespace {

Value checked_mul(Value a, Value b) {
    Value out = 0;
    if (__builtin_mul_overflow(a, b, &out))
        throw std::overflow_error("value exceeds 64 bits");
    return out;
}

}  // namespace

std::string to_string(DeltaSymbol s) {
    const char kind = s.kind == DeltaKind::mult ? 'm' : s.kind == DeltaKind::div ? 'd' : 't';
    return std::string(1, kind) + std::to_string(s.factor);
}

std::optional<DeltaSymbol> parse_delta(std::string_view token) {
    for (DeltaSymbol s : delta_alphabet)
        if (to_string(s) == token)
            return s;
    return std::nullopt;
}

std::string to_string(std::span<const DeltaSymbol> word) {
    std::string out;
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (i)
            out += ' ';
        out += to_string(word[i]);
    }
    return out;
}

std::string to_string(WeakMode mode) {
    switch (mode) {
    case WeakMode::exact:
        return "exact";
    case WeakMode::forward_weak:
        return "forward_weak";
    case WeakMode::backward_weak:
        return "backward_weak";
    }
    return "?";
}

std::optional<Value> RelationSpec::apply(Value m) const {
    const Value f = symbol.factor;
    switch (symbol.kind) {
    case DeltaKind::mult:
        return checked_mul(f, m);
    case DeltaKind::div:
        if (m % f != 0)
            return std::nullopt;
        return m / f;
    case DeltaKind::test:
        if (m % f == 0)
            return std::nullopt;
        return m;
    }
    return std::nullopt;
}

bool RelationSpec::backward_member(Value m, Value n) const {
    const Value f = symbol.factor;
    switch (symbol.kind) {
    case DeltaKind::mult:  // the unique preimage of n is n / f
        return n % f == 0 && n / f >= m;
    case DeltaKind::div:  // the unique preimage of n is f · n
        return checked_mul(f, n) >= m;
    case DeltaKind::test:
        return n % f != 0 && n >= m;
    }
    return false;
}

Value godel_encode(Counter n0, Counter n1) {
    Value v = 1;
    for (Counter i = 0; i < n0; ++i)
        v = checked_mul(v, 2);
    for (Counter i = 0; i < n1; ++i)
        v = checked_mul(v, 3);
    return v;
}

std::optional<std::pair<Counter, Counter>> godel_decode(Value v) {
    if (v == 0)
        return std::nullopt;
    Counter n0 = 0, n1 = 0;
    while (v % 2 == 0) {
        v /= 2;
        ++n0;
    }
    while (v % 3 == 0) {
        v /= 3;
        ++n1;
    }
    if (v != 1)
        return std::nullopt;
    return std::pair{n0, n1};
}

std::optional<Value> rel_apply(RelationSpec r, Value m) { return r.apply(m); }

bool weak_member(RelationSpec r, WeakMode mode, Value m, Value n) {
    switch (mode) {
    case WeakMode::exact:
        return r.apply(m) == n;
    case WeakMode::forward_weak: {
        auto y = r.apply(m);
        return y && *y >= n;
    }
    case WeakMode::backward_weak:
        return r.backward_member(m, n);
    }
    return false;
}

ComposeResult compose_member(std::span<const RelationSpec> rs, WeakMode mode, Value m, Value n,
                             Value bound) {
    const kernels::Image img = kernels::image(rs, mode, m, bound);
    return {n <= bound && img.values[n] != 0, img.escaped};
}

bool is_strictly_monotone(std::span<const std::pair<Value, Value>> graph) {
    for (const auto &[m, n] : graph)
        for (const auto &[m2, n2] : graph)
            if ((m < m2) != (n < n2))
                return false;
    return true;
}

bool is_strictly_monotone(RelationSpec r, Value domain_bound) {
    std::vector<std::pair<Value, Value>> graph;
    for (Value m = 0; m <= domain_bound; ++m)
        if (auto n = r.apply(m))
            graph.emplace_back(m, *n);
    return is_strictly_monotone(graph);
}

std::vector<RelationSpec> relations_of(std::span<const DeltaSymbol> seq) {
    std::vector<RelationSpec> rs;
    rs.reserve(seq.size());
    for (DeltaSymbol s : seq)
        rs.push_back({s});
    return rs;
}

Value default_intermediate_bound(Value domain_bound, std::size_t length) {
    Value bound = std::max<Value>(domain_bound, 1);
    for (std::size_t i = 0; i < length; ++i)
        bound = checked_mul(bound, 3);
    return bound;
}

Prop1Report check_two_approximations(std::span<const DeltaSymbol> seq, Value domain_bound) {
    const auto rs = relations_of(seq);
    Prop1Report report;
    report.sequence.assign(seq.begin(), seq.end());
    report.domain_bound = domain_bound;
    report.intermediate_bound = default_intermediate_bound(domain_bound, seq.size());
    const auto res = kernels::two_approximations<RelationSpec>(rs, domain_bound,
                                                               report.intermediate_bound);
    report.holds = res.holds;
    report.counterexample = res.counterexample;
    report.bound_exceeded = res.bound_exceeded;
    return report;
}

LemmaReport check_monotone_pairs_lemma(std::span<const DeltaSymbol> seq, Value domain_bound) {
    const auto rs = relations_of(seq);
    LemmaReport report;
    report.sequence.assign(seq.begin(), seq.end());
    report.domain_bound = domain_bound;
    report.violation = kernels::monotone_pairs<RelationSpec>(
        rs, domain_bound, default_intermediate_bound(domain_bound, seq.size()));
    report.holds = !report.violation.has_value();
    return report;
}

DeltaSymbol minsky_action_to_symbol(const MinskyAction &a) {
    const unsigned factor = a.counter == 0 ? 2 : 3;
    switch (a.op) {
    case MinskyOp::increment:
        return {DeltaKind::mult, factor};
    case MinskyOp::decrement:
        return {DeltaKind::div, factor};
    case MinskyOp::zero_test:
        return {DeltaKind::test, factor};
    }
    return {DeltaKind::mult, factor};
}

}  // namespace prvass
