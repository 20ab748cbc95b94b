#pragma once

// Shared helpers for the unit tests, including independent path-enumeration
// oracles used to derive expected values. The oracles only handle chains
// whose cycles are pure self-loops (all fixtures have that shape) and stay
// independent of the library's BSCC / elimination code paths.

#include <functional>
#include <stdexcept>
#include <vector>

#include "aifm/arena.hpp"
#include "aifm/chain.hpp"
#include "aifm/rational.hpp"
#include "aifm/strategy.hpp"

namespace aifm::testing {

inline bool is_self_loop_sink(const InducedChain& chain, int node) {
  return chain.out[node].size() == 1 && chain.out[node][0].to == node;
}

// Exact weak-parity win probability by path enumeration. `acc` is the
// running maximum (-1 for none).
inline Rat wp_win_prob_paths(const InducedChain& chain, int node, Rat acc,
                             int depth = 0) {
  if (depth > 64) throw std::runtime_error("path oracle: depth exceeded");
  if (is_self_loop_sink(chain, node)) {
    Rat final_max = std::max(acc, chain.out[node][0].color);
    bool even = mpz_even_p(final_max.get_num().get_mpz_t()) != 0;
    return even ? Rat(1) : Rat(0);
  }
  Rat total = 0;
  for (const auto& e : chain.out[node])
    total += e.prob * wp_win_prob_paths(chain, e.to, std::max(acc, e.color), depth + 1);
  return total;
}

// Exact discounted path sums: (probability, total) per terminal path, where
// terminals are 0-colored self-loop sinks contributing nothing.
inline void disc_paths(const InducedChain& chain, int node, const Rat& lambda, Rat prob,
                       Rat acc, Rat scale, std::vector<std::pair<Rat, Rat>>& out,
                       int depth = 0) {
  if (depth > 64) throw std::runtime_error("path oracle: depth exceeded");
  if (is_self_loop_sink(chain, node)) {
    if (chain.out[node][0].color != 0)
      throw std::runtime_error("path oracle: sink with non-zero color");
    out.push_back({prob, acc});
    return;
  }
  for (const auto& e : chain.out[node])
    disc_paths(chain, e.to, lambda, prob * e.prob, acc + scale * e.color, scale * lambda,
               out, depth + 1);
}

inline Rat disc_threshold_paths(const InducedChain& chain, int node, const Rat& lambda,
                                const Rat& theta) {
  std::vector<std::pair<Rat, Rat>> paths;
  disc_paths(chain, node, lambda, Rat(1), Rat(0), Rat(1), paths);
  Rat win = 0;
  for (const auto& [p, total] : paths)
    if (total >= theta) win += p;
  return win;
}

inline PureMemorylessStrategy strat(
    Player p, std::vector<std::pair<std::string, std::string>> choices) {
  PureMemorylessStrategy s;
  s.player = p;
  for (auto& [state, action] : choices) s.choice[state] = action;
  return s;
}

// The unique strategy of a player that has no real choices.
inline PureMemorylessStrategy first_action_strategy(const InitializedArena& a, Player p) {
  PureMemorylessStrategy s;
  s.player = p;
  for (const State& st : a.arena().states())
    if (st.owner == p) s.choice[st.name] = st.actions.front().name;
  return s;
}

}  // namespace aifm::testing
