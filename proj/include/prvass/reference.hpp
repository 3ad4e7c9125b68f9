#pragma once

// Straightforward serial implementations kept as test oracles and benchmark
// baselines for the parallel kernels.

#include "prvass/explorer.hpp"
#include "prvass/weak.hpp"

#include <span>
#include <vector>

namespace prvass::reference {

/// Reachable endpoints by explicit pairwise weak_member tests.
std::vector<char> compose_image(std::span<const RelationSpec> rs, WeakMode mode, Value m,
                                Value bound);
bool compose_member(std::span<const RelationSpec> rs, WeakMode mode, Value m, Value n,
                    Value bound);
Prop1Report check_two_approximations(std::span<const DeltaSymbol> seq, Value domain_bound);
LemmaReport check_monotone_pairs_lemma(std::span<const DeltaSymbol> seq, Value domain_bound);

/// Same search discipline as prvass::bounded_cover, over materialized
/// configurations and the model-level successors().
Verdict bounded_cover(const System &sys, const Configuration &start,
                      std::optional<StateId> target, const Bounds &b);

}  // namespace prvass::reference
