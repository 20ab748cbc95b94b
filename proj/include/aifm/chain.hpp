#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "aifm/arena.hpp"
#include "aifm/construct.hpp"
#include "aifm/objective.hpp"
#include "aifm/strategy.hpp"

namespace aifm {

// Finite colored Markov chain induced by an initialized arena and a pure
// strategy profile. Nodes are reachable (arena state, memory1, memory2)
// tuples; outgoing probabilities sum to 1 at every node.
struct InducedChain {
  struct Edge {
    Rat color;
    Rat prob;
    int to;
  };
  std::vector<std::vector<Edge>> out;
  std::vector<std::string> node_names;
  std::vector<int> initial;                 // node ids, parallel to arena initials
  std::map<std::string, int> initial_node;  // arena state name -> node id
};

using StrategyRef = std::variant<PureMemorylessStrategy, MealyStrategy>;

// Deterministic product of the arena with both strategy machines. Strategies
// must be total on the arena (PartialStrategy otherwise) and their skeleton
// alphabets must cover the arena's colors.
InducedChain induce_chain(const InitializedArena& a, const StrategyRef& sigma1,
                          const StrategyRef& sigma2);

// Bottom strongly connected components (no outgoing edges), via Tarjan.
std::vector<std::vector<int>> bsccs(const InducedChain& chain);

// Exact absorption probabilities from `from` into each BSCC; they sum to 1.
std::vector<Rat> absorption_probabilities(const InducedChain& chain,
                                          const std::vector<std::vector<int>>& sccs,
                                          int from);
// Same, solved simultaneously for all nodes: result[node][bscc].
std::vector<std::vector<Rat>> absorption_probabilities_all(
    const InducedChain& chain, const std::vector<std::vector<int>>& sccs);

// Family evaluators; each returns the value from the given chain node under
// the given prefix context.
Value weak_parity_value(const InducedChain& chain, const ObjectiveContext& ctx, int from);
Value reachability_value(const InducedChain& chain, const ObjectiveContext& ctx,
                         const Rat& target, int from);
Value disc_expectation_value(const InducedChain& chain, const ObjectiveContext& ctx,
                             const Rat& lambda, int from);
// Supported fragment: all-zero BSCC internals with an acyclic transient part;
// UnsupportedChainShape otherwise.
Value disc_threshold_value(const InducedChain& chain, const ObjectiveContext& ctx,
                           const Rat& lambda, const Rat& theta, int from);

Value value_from(const InducedChain& chain, const ObjectiveSpec& spec,
                 const ObjectiveContext& ctx, int from);

// Induces the chain and evaluates from every initial state.
std::map<std::string, Value> evaluate_per_initial(const InitializedArena& a,
                                                  const StrategyRef& sigma1,
                                                  const StrategyRef& sigma2,
                                                  const ObjectiveSpec& spec,
                                                  const ObjectiveContext& ctx);

// Single value: the worst initial for `orientation` (min over initials for
// P1, max for P2).
Value evaluate(const InitializedArena& a, const StrategyRef& sigma1,
               const StrategyRef& sigma2, const ObjectiveSpec& spec,
               const ObjectiveContext& ctx, Player orientation = Player::P1);

}  // namespace aifm
