#include "aifm/arena.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>

#include "aifm/error.hpp"

namespace aifm {

Arena::Arena(std::vector<State> states) : states_(std::move(states)) {
  for (int i = 0; i < (int)states_.size(); ++i) {
    auto [it, fresh] = index_.emplace(states_[i].name, i);
    if (!fresh)
      throw Error("DuplicateState", "state name '" + states_[i].name + "' used twice");
  }
}

int Arena::index_of(const std::string& name) const {
  auto it = index_.find(name);
  return it == index_.end() ? -1 : it->second;
}

int Arena::require_index(const std::string& name) const {
  int i = index_of(name);
  if (i < 0) throw Error("UnknownState", "no state named '" + name + "'");
  return i;
}

const Action& Arena::action(int state, const std::string& name) const {
  for (const Action& x : states_[state].actions)
    if (x.name == name) return x;
  throw Error("UnknownAction",
              "no action '" + name + "' at state '" + states_[state].name + "'");
}

int Arena::action_index(int state, const std::string& name) const {
  const auto& acts = states_[state].actions;
  for (int i = 0; i < (int)acts.size(); ++i)
    if (acts[i].name == name) return i;
  return -1;
}

bool Arena::deterministic() const {
  for (const State& s : states_)
    for (const Action& x : s.actions)
      if (x.dist.size() != 1) return false;
  return true;
}

bool Arena::one_player_of(Player p) const {
  Player other = opponent(p);
  for (const State& s : states_)
    if (s.owner == other && s.actions.size() != 1) return false;
  return true;
}

std::vector<std::string> validate(const Arena& a) {
  std::vector<std::string> diags;
  for (const State& s : a.states()) {
    if (s.actions.empty()) {
      diags.push_back("blocking state " + s.name);
      continue;
    }
    std::set<std::string> names;
    for (const Action& x : s.actions) {
      if (!names.insert(x.name).second)
        diags.push_back("duplicate action name '" + x.name + "' at state " + s.name);
      if (x.dist.empty()) {
        diags.push_back("empty distribution for action '" + x.name + "' at state " +
                        s.name);
        continue;
      }
      Rat total = 0;
      std::set<int> targets;
      for (const auto& [to, p] : x.dist) {
        if (to < 0 || to >= a.size())
          diags.push_back("dangling target in action '" + x.name + "' at state " + s.name);
        else if (!targets.insert(to).second)
          diags.push_back("repeated target in action '" + x.name + "' at state " + s.name);
        if (p <= 0)
          diags.push_back("non-positive probability in action '" + x.name + "' at state " +
                          s.name);
        total += p;
      }
      if (total != 1)
        diags.push_back("distribution sum != 1 for action '" + x.name + "' at state " +
                        s.name);
    }
  }
  return diags;
}

long choice_count(const Arena& a) {
  long total = 0;
  for (const State& s : a.states()) total += (long)s.actions.size();
  return total - a.size();
}

namespace {

// Keeps only states reachable from `roots`, remapping indices and preserving
// state order. Used by the InitializedArena constructor.
Arena prune_unreachable(const Arena& a, const std::vector<int>& roots,
                        std::vector<int>* new_roots) {
  std::vector<bool> seen(a.size(), false);
  std::deque<int> queue;
  for (int r : roots)
    if (!seen[r]) {
      seen[r] = true;
      queue.push_back(r);
    }
  while (!queue.empty()) {
    int s = queue.front();
    queue.pop_front();
    for (const Action& x : a.state(s).actions)
      for (const auto& [to, p] : x.dist)
        if (p > 0 && !seen[to]) {
          seen[to] = true;
          queue.push_back(to);
        }
  }
  std::vector<int> remap(a.size(), -1);
  std::vector<State> kept;
  for (int s = 0; s < a.size(); ++s)
    if (seen[s]) {
      remap[s] = (int)kept.size();
      kept.push_back(a.state(s));
    }
  for (State& s : kept)
    for (Action& x : s.actions)
      for (auto& [to, p] : x.dist) to = remap[to];
  new_roots->clear();
  for (int r : roots) new_roots->push_back(remap[r]);
  std::sort(new_roots->begin(), new_roots->end());
  new_roots->erase(std::unique(new_roots->begin(), new_roots->end()), new_roots->end());
  return Arena(std::move(kept));
}

}  // namespace

InitializedArena::InitializedArena(Arena arena, std::vector<std::string> initial_names) {
  if (initial_names.empty())
    throw Error("EmptyInitialSet", "initialized arena needs at least one initial state");
  std::vector<int> roots;
  for (const std::string& n : initial_names) roots.push_back(arena.require_index(n));
  arena_ = prune_unreachable(arena, roots, &initial_);
}

std::vector<std::string> InitializedArena::initial_names() const {
  std::vector<std::string> out;
  for (int i : initial_) out.push_back(arena_.state(i).name);
  return out;
}

bool InitializedArena::is_initial(int state) const {
  return std::binary_search(initial_.begin(), initial_.end(), state);
}

InitializedArena subarena(const InitializedArena& a,
                          const std::map<std::string, std::vector<std::string>>& keep) {
  std::vector<State> states;
  for (const State& s : a.arena().states()) {
    State copy = s;
    auto it = keep.find(s.name);
    if (it != keep.end()) {
      if (it->second.empty())
        throw Error("EmptyActionSet", "state '" + s.name + "' would become blocking");
      std::vector<Action> retained;
      for (const Action& x : s.actions)
        if (std::find(it->second.begin(), it->second.end(), x.name) != it->second.end())
          retained.push_back(x);
      if (retained.size() != it->second.size())
        throw Error("UnknownAction", "subarena keeps a missing action at '" + s.name + "'");
      copy.actions = std::move(retained);
    }
    states.push_back(std::move(copy));
  }
  return InitializedArena(Arena(std::move(states)), a.initial_names());
}

InitializedArena subarena_fix_action(const InitializedArena& a, const std::string& state,
                                     const std::string& action) {
  return subarena(a, {{state, {action}}});
}

InitializedArena reinitialize(const InitializedArena& a,
                              const std::vector<std::string>& initial_names) {
  return InitializedArena(a.arena(), initial_names);
}

std::pair<InitializedArena, std::string> prefix_extend(const InitializedArena& a,
                                                       const std::vector<Rat>& word,
                                                       const std::string& state) {
  if (word.empty()) throw Error("EmptyWord", "prefix extension needs a non-empty word");
  int target = a.arena().require_index(state);
  std::vector<State> states = a.arena().states();
  // Fresh chain state names.
  auto fresh = [&](int i) {
    std::string base = "pfx" + std::to_string(i) + "@" + state;
    std::string name = base;
    int k = 0;
    while (a.arena().index_of(name) >= 0) name = base + "'" + std::to_string(++k);
    return name;
  };
  int n = (int)word.size();
  int base = (int)states.size();
  std::vector<std::string> chain_names;
  for (int i = 0; i < n; ++i) chain_names.push_back(fresh(i));
  for (int i = 0; i < n; ++i) {
    int next = (i + 1 < n) ? base + i + 1 : target;
    State s;
    s.name = chain_names[i];
    s.owner = Player::P1;
    s.actions.push_back(Action{"step", word[i], {{next, Rat(1)}}});
    states.push_back(std::move(s));
  }
  std::vector<std::string> initials = a.initial_names();
  initials.push_back(chain_names[0]);
  return {InitializedArena(Arena(std::move(states)), initials), chain_names[0]};
}

MergeResult merge(const InitializedArena& a1, const std::string& s1,
                  const InitializedArena& a2, const std::string& s2,
                  const std::string& merged_name) {
  int i1 = a1.arena().require_index(s1);
  int i2 = a2.arena().require_index(s2);
  const State& st1 = a1.arena().state(i1);
  const State& st2 = a2.arena().state(i2);
  if (st1.owner != st2.owner)
    throw Error("OwnerMismatch", "merged states must have the same owner");
  for (const State& s : a1.arena().states())
    if (a2.arena().index_of(s.name) >= 0)
      throw Error("StateNameClash", "state '" + s.name + "' exists in both arenas");
  for (const Action& x : st1.actions)
    for (const Action& y : st2.actions)
      if (x.name == y.name)
        throw Error("ActionNameClash", "action '" + x.name + "' available at both states");

  std::string t = merged_name;
  while (a1.arena().index_of(t) >= 0 || a2.arena().index_of(t) >= 0) t += "'";

  std::vector<State> states;
  State merged;
  merged.name = t;
  merged.owner = st1.owner;
  states.push_back(merged);  // index 0; actions filled after remapping

  std::vector<int> remap1(a1.arena().size()), remap2(a2.arena().size());
  for (int s = 0; s < a1.arena().size(); ++s) {
    if (s == i1) {
      remap1[s] = 0;
      continue;
    }
    remap1[s] = (int)states.size();
    states.push_back(a1.arena().state(s));
  }
  for (int s = 0; s < a2.arena().size(); ++s) {
    if (s == i2) {
      remap2[s] = 0;
      continue;
    }
    remap2[s] = (int)states.size();
    states.push_back(a2.arena().state(s));
  }
  auto remap_actions = [](std::vector<Action> actions, const std::vector<int>& remap) {
    for (Action& x : actions)
      for (auto& [to, p] : x.dist) to = remap[to];
    return actions;
  };
  std::vector<Action> merged_actions = remap_actions(st1.actions, remap1);
  for (Action& x : remap_actions(st2.actions, remap2)) merged_actions.push_back(x);
  states[0].actions = std::move(merged_actions);
  for (int s = 0; s < a1.arena().size(); ++s)
    if (s != i1) states[remap1[s]].actions = remap_actions(states[remap1[s]].actions, remap1);
  for (int s = 0; s < a2.arena().size(); ++s)
    if (s != i2) states[remap2[s]].actions = remap_actions(states[remap2[s]].actions, remap2);

  return MergeResult{InitializedArena(Arena(std::move(states)), {t}), t};
}

std::vector<std::string> SplitResult::initials_of_copy(const std::string& action) const {
  std::vector<std::string> out;
  for (const std::string& name : arena.initial_names()) {
    auto it = labeling.find(name);
    if (it == labeling.end()) continue;
    if (it->second.second == action || it->second.second.empty()) out.push_back(name);
  }
  return out;
}

SplitResult split(const InitializedArena& a, const std::string& t) {
  int ti = a.arena().require_index(t);
  const State& ts = a.arena().state(ti);

  SplitResult result;
  std::vector<State> states;
  std::map<std::pair<int, int>, int> copy_index;  // (base state, action idx) -> new idx

  // t itself is shared across copies and keeps all its actions.
  State tcopy = ts;
  states.push_back(tcopy);
  result.labeling[t] = {t, ""};

  auto copy_name = [&](const std::string& base, const std::string& action) {
    return base + "@" + action;
  };
  for (int xi = 0; xi < (int)ts.actions.size(); ++xi) {
    const std::string& xname = ts.actions[xi].name;
    for (int s = 0; s < a.arena().size(); ++s) {
      if (s == ti) continue;
      State copy = a.arena().state(s);
      copy.name = copy_name(copy.name, xname);
      copy_index[{s, xi}] = (int)states.size();
      result.labeling[copy.name] = {a.arena().state(s).name, xname};
      states.push_back(std::move(copy));
    }
  }
  auto target_in_copy = [&](int to, int xi) {
    return to == ti ? 0 : copy_index.at({to, xi});
  };
  // Action x at t leads into the x-copy.
  for (int xi = 0; xi < (int)ts.actions.size(); ++xi)
    for (auto& [to, p] : states[0].actions[xi].dist) to = target_in_copy(to, xi);
  // Within copy x, all transitions stay in copy x (t shared).
  for (int xi = 0; xi < (int)ts.actions.size(); ++xi)
    for (int s = 0; s < a.arena().size(); ++s) {
      if (s == ti) continue;
      State& copy = states[copy_index.at({s, xi})];
      for (Action& x : copy.actions)
        for (auto& [to, p] : x.dist) to = target_in_copy(to, xi);
    }

  std::vector<std::string> initials;
  for (const std::string& init : a.initial_names()) {
    if (init == t) {
      initials.push_back(t);
      continue;
    }
    for (const Action& x : ts.actions) initials.push_back(copy_name(init, x.name));
  }
  result.arena = InitializedArena(Arena(std::move(states)), initials);
  // Drop labeling entries for pruned copies.
  for (auto it = result.labeling.begin(); it != result.labeling.end();) {
    if (result.arena.arena().index_of(it->first) < 0)
      it = result.labeling.erase(it);
    else
      ++it;
  }
  return result;
}

namespace {

// Local signature used to prune the isomorphism search.
struct StateSig {
  Player owner;
  bool initial;
  std::vector<std::pair<Rat, std::vector<Rat>>> actions;  // (color, sorted probs)

  bool operator==(const StateSig&) const = default;
};

StateSig signature(const InitializedArena& a, int s) {
  StateSig sig;
  const State& st = a.arena().state(s);
  sig.owner = st.owner;
  sig.initial = a.is_initial(s);
  for (const Action& x : st.actions) {
    std::vector<Rat> probs;
    for (const auto& [to, p] : x.dist) probs.push_back(p);
    std::sort(probs.begin(), probs.end());
    sig.actions.push_back({x.color, probs});
  }
  std::sort(sig.actions.begin(), sig.actions.end(),
            [](const auto& l, const auto& r) {
              return l.first < r.first || (l.first == r.first && l.second < r.second);
            });
  return sig;
}

// Distributions as maps for order-independent comparison.
std::map<int, Rat> dist_map(const Action& x) {
  std::map<int, Rat> m;
  for (const auto& [to, p] : x.dist) m[to] += p;
  return m;
}

bool actions_compatible(const Action& x, const Action& y, const std::vector<int>& psi) {
  if (x.color != y.color) return false;
  std::map<int, Rat> mx;
  for (const auto& [to, p] : x.dist) {
    if (psi[to] < 0) return false;  // target not yet mapped
    mx[psi[to]] += p;
  }
  return mx == dist_map(y);
}

// Perfect matching of actions at a mapped state pair, by backtracking.
bool match_actions(const State& s1, const State& s2, const std::vector<int>& psi,
                   std::map<std::string, std::string>* out) {
  int n = (int)s1.actions.size();
  if (n != (int)s2.actions.size()) return false;
  std::vector<int> assign(n, -1);
  std::vector<bool> used(n, false);
  std::function<bool(int)> rec = [&](int i) {
    if (i == n) return true;
    for (int j = 0; j < n; ++j) {
      if (used[j]) continue;
      if (!actions_compatible(s1.actions[i], s2.actions[j], psi)) continue;
      used[j] = true;
      assign[i] = j;
      if (rec(i + 1)) return true;
      used[j] = false;
    }
    return false;
  };
  if (!rec(0)) return false;
  if (out)
    for (int i = 0; i < n; ++i) (*out)[s1.actions[i].name] = s2.actions[assign[i]].name;
  return true;
}

}  // namespace

std::optional<Isomorphism> isomorphic(const InitializedArena& a1,
                                      const InitializedArena& a2, int max_states) {
  const int n = a1.arena().size();
  if (n != a2.arena().size()) return std::nullopt;
  if (n > max_states)
    throw Error("SizeLimitExceeded", "isomorphism search capped at " +
                                         std::to_string(max_states) + " states");
  if (a1.initial().size() != a2.initial().size()) return std::nullopt;

  std::vector<StateSig> sig1, sig2;
  for (int s = 0; s < n; ++s) sig1.push_back(signature(a1, s));
  for (int s = 0; s < n; ++s) sig2.push_back(signature(a2, s));

  std::vector<int> psi(n, -1);    // a1 state -> a2 state
  std::vector<bool> used(n, false);

  // Match states in order; verify full action structure once all targets of a
  // state are mapped. Simpler: assign all states first, verify at the end of
  // each full assignment via match_actions (cheap at these sizes).
  std::function<bool(int)> rec = [&](int i) -> bool {
    if (i == n) {
      for (int s = 0; s < n; ++s)
        if (!match_actions(a1.arena().state(s), a2.arena().state(psi[s]), psi, nullptr))
          return false;
      return true;
    }
    for (int j = 0; j < n; ++j) {
      if (used[j] || !(sig1[i] == sig2[j])) continue;
      psi[i] = j;
      used[j] = true;
      if (rec(i + 1)) return true;
      used[j] = false;
      psi[i] = -1;
    }
    return false;
  };
  if (!rec(0)) return std::nullopt;

  Isomorphism iso;
  for (int s = 0; s < n; ++s) {
    iso.states[a1.arena().state(s).name] = a2.arena().state(psi[s]).name;
    std::map<std::string, std::string> am;
    match_actions(a1.arena().state(s), a2.arena().state(psi[s]), psi, &am);
    iso.actions[a1.arena().state(s).name] = std::move(am);
  }
  return iso;
}

}  // namespace aifm
