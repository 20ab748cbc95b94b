#include "aifm/random_gen.hpp"

#include <algorithm>
#include <set>

#include "aifm/error.hpp"

namespace aifm {

int RandomGen::uniform(int lo, int hi) {
  return (int)(lo + (std::int64_t)(rng_() % (std::uint64_t)(hi - lo + 1)));
}

Rat RandomGen::probability_split(int parts, std::vector<Rat>& out) {
  out.clear();
  int total = 0;
  std::vector<int> raw(parts);
  for (int& r : raw) {
    r = uniform(1, 4);
    total += r;
  }
  for (int r : raw) out.push_back(make_rat(r, total));
  return Rat(1);
}

InitializedArena RandomGen::arena(const ArenaParams& p) {
  int n = uniform(1, p.max_states);
  std::vector<State> states;
  // Choice states are rationed to keep enumeration-based oracles cheap.
  int choice_budget = p.max_choice_states;
  for (int i = 0; i < n; ++i) {
    State s;
    s.name = "q" + std::to_string(i);
    if (p.one_player)
      s.owner = p.owner;
    else
      s.owner = uniform(0, 1) ? Player::P1 : Player::P2;
    int n_actions = 1;
    if (choice_budget > 0 && uniform(0, 1)) {
      n_actions = uniform(2, p.max_actions);
      --choice_budget;
    }
    if (p.one_player && s.owner != p.owner) n_actions = 1;
    for (int x = 0; x < n_actions; ++x) {
      Action act;
      act.name = std::string(1, (char)('a' + x));
      act.color = p.colors[uniform(0, (int)p.colors.size() - 1)];
      int support = p.deterministic ? 1 : uniform(1, std::min(3, n));
      std::set<int> targets;
      while ((int)targets.size() < support) targets.insert(uniform(0, n - 1));
      std::vector<Rat> probs;
      probability_split((int)targets.size(), probs);
      int j = 0;
      for (int t : targets) act.dist.push_back({t, probs[j++]});
      s.actions.push_back(std::move(act));
    }
    states.push_back(std::move(s));
  }
  // One random initial state; unreachable states are pruned by construction.
  std::string initial = "q" + std::to_string(uniform(0, n - 1));
  return InitializedArena(Arena(std::move(states)), {initial});
}

MemorySkeleton RandomGen::skeleton(const std::vector<Rat>& alphabet, int max_states) {
  std::vector<Rat> al = alphabet;
  std::sort(al.begin(), al.end());
  al.erase(std::unique(al.begin(), al.end()), al.end());
  int n = uniform(1, max_states);
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("m" + std::to_string(i));
  std::vector<std::vector<int>> update;
  for (int i = 0; i < n; ++i) {
    std::vector<int> row;
    for (size_t c = 0; c < al.size(); ++c) row.push_back(uniform(0, n - 1));
    update.push_back(std::move(row));
  }
  return MemorySkeleton(al, names, 0, update);
}

PureMemorylessStrategy RandomGen::memoryless_strategy(const InitializedArena& a, Player p) {
  PureMemorylessStrategy s;
  s.player = p;
  for (const State& st : a.arena().states())
    if (st.owner == p)
      s.choice[st.name] = st.actions[uniform(0, (int)st.actions.size() - 1)].name;
  return s;
}

MealyStrategy RandomGen::mealy_strategy(const InitializedArena& a, Player p,
                                        const MemorySkeleton& k) {
  MealyStrategy s;
  s.player = p;
  s.skeleton = k;
  for (const State& st : a.arena().states()) {
    if (st.owner != p) continue;
    for (int m = 0; m < k.size(); ++m)
      s.next[st.name][k.state_name(m)] =
          st.actions[uniform(0, (int)st.actions.size() - 1)].name;
  }
  return s;
}

}  // namespace aifm
