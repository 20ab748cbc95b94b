#pragma once

#include <string>
#include <vector>

#include "aifm/arena.hpp"
#include "aifm/rational.hpp"

namespace aifm {

// Weak-parity regression fixture (one-player, colors {0,1,2}): a fair coin
// reads color 0 or 1, then a choice between a safe action and a risky action
// whose branches read 1 or 2. Optimal play wins with probability 3/4 using
// the greatest-seen-color memory, 1/2 memoryless.
InitializedArena fig3_arena();

// Discounted-threshold regression fixture at lambda = 1/2: the generated
// counterexample arena for the trivial skeleton.
InitializedArena fig4_arena();

// Registry for the CLI `fixtures` subcommand: "fig3" and "fig4".
InitializedArena fixture_by_name(const std::string& name);
std::vector<std::string> fixture_names();

}  // namespace aifm
