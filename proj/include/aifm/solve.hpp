#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "aifm/chain.hpp"
#include "aifm/construct.hpp"
#include "aifm/objective.hpp"
#include "aifm/strategy.hpp"

namespace aifm {

inline constexpr std::int64_t kDefaultEnumerationCap = 2'000'000;

struct SolveOptions {
  std::int64_t cap = kDefaultEnumerationCap;
  bool keep_table = false;
  bool parallel = true;  // OpenMP enumeration kernel; serial path kept for testing
};

struct SolveReport {
  Value best;                       // worst-initial value of the witness
  PureMemorylessStrategy witness;
  std::int64_t enumeration_size = 0;
  bool uniformly_optimal = true;    // witness attains the per-initial optimum everywhere
  // Optional per-strategy value table (worst-initial aggregation), in
  // enumeration order.
  std::vector<Value> table;
};

struct Verdict {
  bool holds = true;
  // Counterexample, when holds is false.
  std::optional<Player> deviator;
  std::optional<PureMemorylessStrategy> deviation;
  std::string at_state;      // initial state (check_ne) or product pair (check_sp)
  std::string context_note;  // context class / witness word, when relevant
  std::optional<Value> value_before, value_after;
};

// Evaluates every pure memoryless strategy of the owner exactly from every
// initial state and returns the optimum for the owner's orientation (max for
// P1, min for P2) over the worst initial state, plus the witness. Prefers
// witnesses that attain the per-initial optimum at every initial state
// simultaneously (one always exists on the covered instances this library
// targets); ties broken by lexicographic enumeration order (state name, then
// declared action order). Throws NotOnePlayer / EnumerationCapExceeded.
SolveReport enumerate_memoryless_optimal(const InitializedArena& a,
                                         const ObjectiveSpec& spec,
                                         const ObjectiveContext& ctx,
                                         const SolveOptions& opts = {});

// Identifies the player with choices in a one-player arena (P1 when neither
// player has any choice). Throws NotOnePlayer when both have choices.
Player one_player_owner(const InitializedArena& a);

// Product with k, memoryless enumeration, transfer back through the product.
struct MdpSolveResult {
  MealyStrategy strategy;
  Value value;
};
MdpSolveResult mdp_solve_with_memory(const InitializedArena& a, const MemorySkeleton& k,
                                     const ObjectiveSpec& spec,
                                     const SolveOptions& opts = {});

// Edge-induction synthesis of a pure memoryless NE (induction on the number
// of choices, via subarenas and splits, one pass per player, cross-mixed).
struct NeSynthesisResult {
  PureMemorylessStrategy sigma1, sigma2;
  std::vector<std::string> trace;
};
NeSynthesisResult synthesize_ne_edge_induction(const InitializedArena& a,
                                               const ObjectiveSpec& spec,
                                               const SolveOptions& opts = {},
                                               int recursion_budget = 64);

// Product with k1 x k2, NE synthesis there, both strategies transferred back
// as Mealy strategies on k1 x k2.
struct LiftResult {
  MealyStrategy sigma1, sigma2;
  Value value;
  std::vector<std::string> trace;
};
LiftResult lift_two_player(const InitializedArena& a, const MemorySkeleton& k1,
                           const MemorySkeleton& k2, const ObjectiveSpec& spec,
                           const SolveOptions& opts = {});

// Deviation class for equilibrium checks: pure memoryless strategies, or
// pure Mealy strategies on a fixed skeleton (checked on the product).
struct DeviationClass {
  bool mealy = false;
  MemorySkeleton skeleton;  // used when mealy
  static DeviationClass memoryless() { return {}; }
  static DeviationClass mealy_on(MemorySkeleton k) { return {true, std::move(k)}; }
};

// No unilateral deviation in the class strictly improves the deviating
// player's value from any initial state.
Verdict check_ne(const InitializedArena& a, const ObjectiveSpec& spec,
                 const StrategyRef& sigma1, const StrategyRef& sigma2,
                 const DeviationClass& cls,
                 const ObjectiveContext& ctx = ObjectiveContext{},
                 const SolveOptions& opts = {});

// Subgame perfection over the finitely many (state, context class) pairs
// reachable in the product of `a` with the objective's context automaton.
// Valid exactly for families whose shifted preference depends on the prefix
// only through its context class; Disc* raises
// UnsupportedContextEnumeration. Requires `a` covered by `k`.
Verdict check_sp(const InitializedArena& a, const MemorySkeleton& k,
                 const ObjectiveSpec& spec, const PureMemorylessStrategy& sigma1,
                 const PureMemorylessStrategy& sigma2, const SolveOptions& opts = {});

// Theorem-style refinement loop: re-solve, check subgame perfection, extend
// the arena by the violating class's witness word, repeat. Returns the final
// strategy restricted to the original arena.
struct RefineResult {
  PureMemorylessStrategy strategy;
  int iterations = 0;
  std::vector<std::string> log;
};
RefineResult refine_to_sp(const InitializedArena& a, const MemorySkeleton& k,
                          const ObjectiveSpec& spec, const SolveOptions& opts = {});

// Lemma-style mixing check: cross-paired profiles of two NE are NE.
Verdict cross_mix_check(const InitializedArena& a, const ObjectiveSpec& spec,
                        const PureMemorylessStrategy& s1a, const PureMemorylessStrategy& s2a,
                        const PureMemorylessStrategy& s1b, const PureMemorylessStrategy& s2b,
                        const DeviationClass& cls, const SolveOptions& opts = {});

}  // namespace aifm
