#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "aifm/rational.hpp"

namespace aifm {

enum class Player { P1 = 1, P2 = 2 };

inline Player opponent(Player p) { return p == Player::P1 ? Player::P2 : Player::P1; }
inline int player_index(Player p) { return p == Player::P1 ? 1 : 2; }

// One available action at a state: a name (unique per state), the color read
// when the action is taken, and an exact distribution over successor states.
struct Action {
  std::string name;
  Rat color;
  std::vector<std::pair<int, Rat>> dist;  // (target state index, probability)
};

struct State {
  std::string name;
  Player owner = Player::P1;
  std::vector<Action> actions;
};

// Finite colored stochastic turn-based game graph. States and actions are
// identified by name; indices are an internal detail and not stable across
// operations that rebuild the arena.
class Arena {
public:
  Arena() = default;
  explicit Arena(std::vector<State> states);

  int size() const { return (int)states_.size(); }
  const State& state(int i) const { return states_[i]; }
  const std::vector<State>& states() const { return states_; }

  int index_of(const std::string& name) const;          // -1 if absent
  int require_index(const std::string& name) const;     // throws UnknownState

  const Action& action(int state, const std::string& name) const;  // throws UnknownAction
  int action_index(int state, const std::string& name) const;      // -1 if absent

  bool deterministic() const;
  // True when every state of `other` has exactly one action.
  bool one_player_of(Player p) const;

private:
  std::vector<State> states_;
  std::map<std::string, int> index_;
};

// Arena plus a non-empty set of initial states. Construction prunes states
// that are unreachable from the initial set via positive-probability
// transitions, enforcing the reachability convention.
class InitializedArena {
public:
  InitializedArena() = default;
  InitializedArena(Arena arena, std::vector<std::string> initial_names);

  const Arena& arena() const { return arena_; }
  const std::vector<int>& initial() const { return initial_; }
  std::vector<std::string> initial_names() const;
  bool is_initial(int state) const;

private:
  Arena arena_;
  std::vector<int> initial_;  // sorted state indices
};

// Named diagnostics; empty iff all arena invariants hold.
std::vector<std::string> validate(const Arena& a);

// Sum over states of |A(s)|, minus |S|.
long choice_count(const Arena& a);

// Restricts available actions per state. Keys absent from `keep` retain all
// actions. Throws EmptyActionSet if some state would become blocking.
InitializedArena subarena(const InitializedArena& a,
                          const std::map<std::string, std::vector<std::string>>& keep);

// Convenience: keep only `action` at `state`.
InitializedArena subarena_fix_action(const InitializedArena& a,
                                     const std::string& state,
                                     const std::string& action);

// Re-initializes the arena at the given states (pruning accordingly).
InitializedArena reinitialize(const InitializedArena& a,
                              const std::vector<std::string>& initial_names);

// Adds a chain of |w| fresh P1 states reading w and ending at `state` with
// probability 1. The head of the chain joins the initial set. Returns the
// extended arena and the name of the chain head.
std::pair<InitializedArena, std::string> prefix_extend(const InitializedArena& a,
                                                       const std::vector<Rat>& word,
                                                       const std::string& state);

// Merges two arenas at states s1/s2 of the same owner into one arena with a
// single merged state `t`. Requires disjoint state names and disjoint action
// names at s1/s2. Initial set of the result: the merged state.
struct MergeResult {
  InitializedArena merged;   // initialized at t
  std::string merged_state;  // name of t
};
MergeResult merge(const InitializedArena& a1, const std::string& s1,
                  const InitializedArena& a2, const std::string& s2,
                  const std::string& merged_name = "t");

// Split on t: one copy of every state except t per action available at t;
// action x at t leads into the x-copy. The labeling maps each split state to
// (base state, action label); t maps to (t, "").
struct SplitResult {
  InitializedArena arena;
  std::map<std::string, std::pair<std::string, std::string>> labeling;
  // Initial states belonging to copy x (t included in every copy when initial).
  std::vector<std::string> initials_of_copy(const std::string& action) const;
};
SplitResult split(const InitializedArena& a, const std::string& t);

// Witness bijections for isomorphism of initialized arenas.
struct Isomorphism {
  std::map<std::string, std::string> states;                          // psi_S
  std::map<std::string, std::map<std::string, std::string>> actions;  // psi_A per state
};

// Backtracking search for a witness; intended for desk-scale arenas.
// Throws SizeLimitExceeded above `max_states`.
std::optional<Isomorphism> isomorphic(const InitializedArena& a1,
                                      const InitializedArena& a2,
                                      int max_states = 12);

}  // namespace aifm
