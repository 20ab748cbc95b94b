#pragma once

#include <string>
#include <vector>

#include "aifm/arena.hpp"
#include "aifm/objective.hpp"
#include "aifm/skeleton.hpp"
#include "aifm/solve.hpp"

namespace aifm {

// Finite sample of the (generally infinite) language of words reaching
// memory state m from the initial state. Every word is verified by run().
struct WitnessFamily {
  std::string mem_state;
  std::vector<std::vector<Rat>> words;
  std::string provenance;
};
WitnessFamily make_witness_family(const MemorySkeleton& k, const std::string& mem_state,
                                  std::vector<std::vector<Rat>> words,
                                  std::string provenance = "user");

struct CharacterizeVerdict {
  bool holds = true;
  std::string detail;                       // counterexample description
  std::vector<Rat> word_a, word_b;          // refuting word pair (monotony)
  std::vector<std::pair<std::string, Value>> values;  // per-word best values, for reports
};

// Bounded monotony check: holds iff some i in {1,2} has
// best(a_{3-i}, w) <= best(a_i, w) for every w in W, best values computed by
// the memoryless oracle on a_i producted with the evaluation skeleton.
CharacterizeVerdict check_monotony(const ObjectiveSpec& spec, const MemorySkeleton& k,
                                   const std::string& m, const InitializedArena& a1,
                                   const InitializedArena& a2, const WitnessFamily& W,
                                   const MemorySkeleton& eval_skeleton,
                                   const SolveOptions& opts = {});

// Bounded selectivity check: merge the two arenas at their initial states and
// require best(merged, w) <= max(best(a1, w), best(a2, w)) for every w in W.
// Preconditions: cycle_class_check on both sides (CyclePreconditionViolated).
CharacterizeVerdict check_selectivity(const ObjectiveSpec& spec, const MemorySkeleton& k,
                                      const std::string& m, const InitializedArena& a1,
                                      const InitializedArena& a2, const WitnessFamily& W,
                                      const MemorySkeleton& eval_skeleton,
                                      const SolveOptions& opts = {});

// Anti-AIFM construction for the discounted threshold objective: an arena on
// which strategies based on `k` are strictly suboptimal. Built from the
// minimal n < m with run(k, 1^n) = run(k, 1^m).
struct DiscCounterexample {
  InitializedArena arena;
  long n = 0, m = 0;            // colliding prefix lengths in k
  long encoded_n = 0, encoded_m = 0;  // prefix lengths realized by the arena
  Rat b_color, a_bad_color;     // the two negative payload colors
  Value optimal;                // best over strategies aware of the taken branch
  Value mealy_best;             // best over Mealy(k) strategies
  std::string report;
};
DiscCounterexample counterexample_discounted(const MemorySkeleton& k, const Rat& lambda,
                                             const Rat& theta = 0,
                                             const SolveOptions& opts = {});

// Samples random finite convex combinations realized as branching chains and
// asserts that improving a component value never decreases the combined
// value. Exact arithmetic throughout.
Verdict mixing_useless_sample(const ObjectiveSpec& spec, int samples,
                              std::uint64_t seed = 0);

}  // namespace aifm
