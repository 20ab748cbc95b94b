#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "aifm/arena.hpp"
#include "aifm/skeleton.hpp"
#include "aifm/strategy.hpp"

namespace aifm {

// Bijection between product states and reachable (base state, memory state)
// pairs. Actions are unchanged by the product.
struct ProductMap {
  std::map<std::string, std::pair<std::string, std::string>> forward;
};

struct ProductArena {
  InitializedArena arena;
  ProductMap map;
};

// Synchronized product of an initialized arena with a memory skeleton,
// restricted to the reachable part. Product state names are "base|mem".
ProductArena product_arena(const InitializedArena& a, const MemorySkeleton& k);

// Coverability witness: the unique consistent memory assignment, or the
// first conflicting state together with both derivations.
struct CoverConflict {
  std::string state;
  std::string mem_a, mem_b;      // two distinct memory states forced at `state`
  std::string via_a, via_b;      // how each was derived, for diagnostics
};
struct CoverResult {
  std::optional<std::map<std::string, std::string>> witness;  // state -> memory state
  std::optional<CoverConflict> conflict;
  bool covered() const { return witness.has_value(); }
};
CoverResult cover_witness(const InitializedArena& a, const MemorySkeleton& k);

// Strategy transfer between an arena and its product with the strategy's
// skeleton: a Mealy strategy corresponds to a memoryless strategy on the
// product, with the same induced color distribution.
struct MealyToMemorylessResult {
  ProductArena product;
  PureMemorylessStrategy strategy;
};
MealyToMemorylessResult mealy_to_memoryless(const InitializedArena& a,
                                            const MealyStrategy& sigma);

// Inverse direction: a memoryless strategy on the product becomes a Mealy
// strategy on k. For (state, memory) pairs with no product state, the
// next-action table defaults to the state's first action.
MealyStrategy memoryless_to_mealy(const InitializedArena& base,
                                  const ProductArena& product,
                                  const PureMemorylessStrategy& tau,
                                  const MemorySkeleton& k);

// Transfers a strategy of the base arena onto its split on t (relabeling
// histories by the last action taken at t; `seed` before the first visit).
// Memoryless strategies stay memoryless; Mealy strategies keep their
// skeleton, since the split state already carries the last-action label.
PureMemorylessStrategy strategy_across_split(const SplitResult& sp,
                                             const PureMemorylessStrategy& sigma,
                                             const std::string& seed);
MealyStrategy strategy_across_split(const SplitResult& sp, const MealyStrategy& sigma,
                                    const std::string& seed);

// Projects a profile on the split back to the base arena by stripping action
// labels from the a*-copy, where a* is the action the owner of t plays at t.
// Requires that owner's strategy to be memoryless with choice seed at t
// (SeedMismatch otherwise). Base states whose a*-copy was pruned from the
// split take their choice from the first surviving copy in t's action order,
// falling back to the state's first action.
std::pair<PureMemorylessStrategy, PureMemorylessStrategy> split_projection(
    const InitializedArena& base, const SplitResult& sp, const std::string& t,
    const PureMemorylessStrategy& sigma1, const PureMemorylessStrategy& sigma2,
    const std::string& seed);

}  // namespace aifm
