#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "aifm/arena.hpp"
#include "aifm/skeleton.hpp"
#include "aifm/strategy.hpp"

namespace aifm {

// Seeded generators for the randomized test corpora. All outputs are valid
// by construction (non-blocking, distributions summing to 1, reachable).
class RandomGen {
public:
  explicit RandomGen(std::uint64_t seed) : rng_(seed) {}

  struct ArenaParams {
    int max_states = 4;
    int max_actions = 2;
    // Palette of colors actions draw from.
    std::vector<Rat> colors = {Rat(0), Rat(1), Rat(2)};
    bool deterministic = false;
    // Players that may own choice states; P2 states get a single action
    // when one_player_of is set.
    bool one_player = false;
    Player owner = Player::P1;
    // Upper bound on the number of states with more than one action.
    int max_choice_states = 2;
  };

  InitializedArena arena(const ArenaParams& p);
  MemorySkeleton skeleton(const std::vector<Rat>& alphabet, int max_states);
  PureMemorylessStrategy memoryless_strategy(const InitializedArena& a, Player p);
  MealyStrategy mealy_strategy(const InitializedArena& a, Player p,
                               const MemorySkeleton& k);

  int uniform(int lo, int hi);  // inclusive bounds
  Rat probability_split(int parts, std::vector<Rat>& out);  // positive, sums to 1

  std::mt19937_64& engine() { return rng_; }

private:
  std::mt19937_64 rng_;
};

}  // namespace aifm
