#pragma once

#include <map>
#include <string>

#include "aifm/arena.hpp"
#include "aifm/skeleton.hpp"

namespace aifm {

// Pure memoryless strategy: one action name per state owned by the player.
struct PureMemorylessStrategy {
  Player player = Player::P1;
  std::map<std::string, std::string> choice;  // state name -> action name

  const std::string& at(const std::string& state) const;
};

// Pure finite-memory strategy as a Mealy machine: a skeleton plus a
// next-action table over (owned state, memory state).
struct MealyStrategy {
  Player player = Player::P1;
  MemorySkeleton skeleton;
  std::map<std::string, std::map<std::string, std::string>> next;  // state -> mem -> action

  const std::string& at(const std::string& state, const std::string& mem) const;
};

// Wraps a memoryless strategy as a Mealy strategy on the trivial skeleton.
MealyStrategy as_mealy(const PureMemorylessStrategy& s, const std::vector<Rat>& alphabet);

// Checks that the strategy is total over the owner's states (and, for Mealy,
// over all (owned state, memory state) pairs) and picks existing actions.
// Throws PartialStrategy / UnknownAction on violation.
void check_total(const PureMemorylessStrategy& s, const Arena& a);
void check_total(const MealyStrategy& s, const Arena& a);

}  // namespace aifm
