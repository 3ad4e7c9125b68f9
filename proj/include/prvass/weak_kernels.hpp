#pragma once

// Composition kernels shared by the primitive relations and by test-only
// relations. Reachable values are kept as dense bitmaps over [0, bound].

#include "prvass/weak.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include <omp.h>

namespace prvass::kernels {

using Bitmap = std::vector<char>;

struct Image {
    Bitmap values;
    bool escaped = false;
};

// Forward-weak images are downward closed and determined by the largest exact
// image; backward-weak membership is downward closed in the argument, so only
// the least element of the current set matters.
template <Relation R>
bool step_image(const R &r, WeakMode mode, const Bitmap &in, Bitmap &out, Value bound) {
    std::fill(out.begin(), out.end(), 0);
    bool escaped = false;
    switch (mode) {
    case WeakMode::exact:
        for (Value x = 0; x <= bound; ++x) {
            if (!in[x])
                continue;
            if (auto y = r.apply(x)) {
                if (*y > bound)
                    escaped = true;
                else
                    out[*y] = 1;
            }
        }
        break;
    case WeakMode::forward_weak: {
        std::optional<Value> ceiling;
        for (Value x = 0; x <= bound; ++x) {
            if (!in[x])
                continue;
            if (auto y = r.apply(x); y && (!ceiling || *y > *ceiling))
                ceiling = y;
        }
        if (ceiling) {
            if (*ceiling > bound) {
                escaped = true;
                ceiling = bound;
            }
            std::fill(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(*ceiling) + 1, 1);
        }
        break;
    }
    case WeakMode::backward_weak: {
        auto first = std::find(in.begin(), in.end(), 1);
        if (first == in.end())
            break;
        const Value least = static_cast<Value>(first - in.begin());
        for (Value y = 0; y <= bound; ++y)
            out[y] = r.backward_member(least, y) ? 1 : 0;
        break;
    }
    }
    return escaped;
}

template <Relation R>
Image image(std::span<const R> rs, WeakMode mode, Value m, Value bound) {
    Image result{Bitmap(bound + 1, 0), false};
    if (m > bound) {
        result.escaped = true;
        return result;
    }
    result.values[m] = 1;
    Bitmap scratch(bound + 1, 0);
    for (const R &r : rs) {
        result.escaped |= step_image(r, mode, result.values, scratch, bound);
        result.values.swap(scratch);
    }
    return result;
}

struct TwoApproxResult {
    bool holds = true;
    std::optional<std::pair<Value, Value>> counterexample;
    bool bound_exceeded = false;
};

/// Compares exact composition with the intersection of both weak
/// compositions for every (m, n) in [0, domain]². The first mismatch in
/// lexicographic order is reported regardless of thread count.
template <Relation R>
TwoApproxResult two_approximations(std::span<const R> rs, Value domain, Value bound) {
    const auto rows = static_cast<std::int64_t>(domain) + 1;
    std::vector<std::optional<Value>> first_bad(static_cast<std::size_t>(rows));
    std::vector<char> escaped(static_cast<std::size_t>(rows), 0);

#pragma omp parallel for schedule(dynamic, 4)
    for (std::int64_t row = 0; row < rows; ++row) {
        const auto m = static_cast<Value>(row);
        const Image ex = image(rs, WeakMode::exact, m, bound);
        const Image fw = image(rs, WeakMode::forward_weak, m, bound);
        const Image bw = image(rs, WeakMode::backward_weak, m, bound);
        escaped[row] = ex.escaped || fw.escaped || bw.escaped;
        for (Value n = 0; n <= domain; ++n) {
            if (static_cast<bool>(ex.values[n]) != (fw.values[n] && bw.values[n])) {
                first_bad[row] = n;
                break;
            }
        }
    }

    TwoApproxResult out;
    out.bound_exceeded = std::any_of(escaped.begin(), escaped.end(), [](char c) { return c; });
    for (std::int64_t row = 0; row < rows; ++row) {
        if (first_bad[row]) {
            out.holds = false;
            out.counterexample = std::pair{static_cast<Value>(row), *first_bad[row]};
            break;
        }
    }
    if (out.bound_exceeded)
        out.holds = false;
    return out;
}

/// Monotone-pairs check. A violation of "n' ≤ n ⇒ m' ≤ m" exists at m iff
/// some m' > m has a backward pair below the largest forward image of m;
/// similarly for the strict form with m' ≥ m.
template <Relation R>
std::optional<LemmaViolation> monotone_pairs(std::span<const R> rs, Value domain, Value bound) {
    const auto rows = static_cast<std::int64_t>(domain) + 1;
    constexpr Value none = std::numeric_limits<Value>::max();
    std::vector<Value> fw_max(static_cast<std::size_t>(rows), none);
    std::vector<Value> bw_min(static_cast<std::size_t>(rows), none);

#pragma omp parallel for schedule(dynamic, 4)
    for (std::int64_t row = 0; row < rows; ++row) {
        const auto m = static_cast<Value>(row);
        const Image fw = image(rs, WeakMode::forward_weak, m, bound);
        const Image bw = image(rs, WeakMode::backward_weak, m, bound);
        for (Value n = domain + 1; n-- > 0;) {
            if (fw.values[n]) {
                fw_max[row] = n;
                break;
            }
        }
        for (Value n = 0; n <= domain; ++n) {
            if (bw.values[n]) {
                bw_min[row] = n;
                break;
            }
        }
    }

    for (Value m = 0; m <= domain; ++m) {
        const Value n = fw_max[m];
        if (n == none)
            continue;
        for (Value m2 = m; m2 <= domain; ++m2) {
            const Value n2 = bw_min[m2];
            if (n2 == none)
                continue;
            if (m2 > m && n2 <= n)
                return LemmaViolation{m, n, m2, n2, false};
            if (n2 < n)
                return LemmaViolation{m, n, m2, n2, true};
        }
    }
    return std::nullopt;
}

}  // namespace prvass::kernels
