// Serial, structure-agnostic versions of the relation checks. Every step is
// an explicit pairwise membership test over [0, bound]; nothing relies on
// downward closure. Kept for cross-checking the parallel kernels.

#include "prvass/reference.hpp"

namespace prvass::reference {

std::vector<char> compose_image(std::span<const RelationSpec> rs, WeakMode mode, Value m,
                                Value bound) {
    std::vector<char> current(bound + 1, 0);
    if (m > bound)
        return current;
    current[m] = 1;
    for (const RelationSpec &r : rs) {
        std::vector<char> next(bound + 1, 0);
        for (Value x = 0; x <= bound; ++x) {
            if (!current[x])
                continue;
            for (Value y = 0; y <= bound; ++y)
                if (!next[y] && weak_member(r, mode, x, y))
                    next[y] = 1;
        }
        current.swap(next);
    }
    return current;
}

bool compose_member(std::span<const RelationSpec> rs, WeakMode mode, Value m, Value n,
                    Value bound) {
    return n <= bound && compose_image(rs, mode, m, bound)[n];
}

Prop1Report check_two_approximations(std::span<const DeltaSymbol> seq, Value domain_bound) {
    const auto rs = relations_of(seq);
    Prop1Report report;
    report.sequence.assign(seq.begin(), seq.end());
    report.domain_bound = domain_bound;
    report.intermediate_bound = default_intermediate_bound(domain_bound, seq.size());
    report.holds = true;
    const Value bound = report.intermediate_bound;
    for (Value m = 0; m <= domain_bound && report.holds; ++m) {
        const auto ex = compose_image(rs, WeakMode::exact, m, bound);
        const auto fw = compose_image(rs, WeakMode::forward_weak, m, bound);
        const auto bw = compose_image(rs, WeakMode::backward_weak, m, bound);
        for (Value n = 0; n <= domain_bound; ++n) {
            if (static_cast<bool>(ex[n]) != (fw[n] && bw[n])) {
                report.holds = false;
                report.counterexample = std::pair{m, n};
                break;
            }
        }
    }
    return report;
}

LemmaReport check_monotone_pairs_lemma(std::span<const DeltaSymbol> seq, Value domain_bound) {
    const auto rs = relations_of(seq);
    const Value bound = default_intermediate_bound(domain_bound, seq.size());
    std::vector<std::pair<Value, Value>> forward, backward;
    for (Value m = 0; m <= domain_bound; ++m) {
        const auto fw = compose_image(rs, WeakMode::forward_weak, m, bound);
        const auto bw = compose_image(rs, WeakMode::backward_weak, m, bound);
        for (Value n = 0; n <= domain_bound; ++n) {
            if (fw[n])
                forward.emplace_back(m, n);
            if (bw[n])
                backward.emplace_back(m, n);
        }
    }

    LemmaReport report;
    report.sequence.assign(seq.begin(), seq.end());
    report.domain_bound = domain_bound;
    report.holds = true;
    for (const auto &[m, n] : forward) {
        for (const auto &[m2, n2] : backward) {
            const bool weak_bad = n2 <= n && !(m2 <= m);
            const bool strict_bad = n2 < n && !(m2 < m);
            if (weak_bad || strict_bad) {
                report.holds = false;
                report.violation = LemmaViolation{m, n, m2, n2, !weak_bad};
                return report;
            }
        }
    }
    return report;
}

}  // namespace prvass::reference
