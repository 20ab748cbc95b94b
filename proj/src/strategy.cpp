#include "aifm/strategy.hpp"

#include "aifm/error.hpp"

namespace aifm {

const std::string& PureMemorylessStrategy::at(const std::string& state) const {
  auto it = choice.find(state);
  if (it == choice.end())
    throw Error("PartialStrategy", "no choice at state '" + state + "'");
  return it->second;
}

const std::string& MealyStrategy::at(const std::string& state,
                                     const std::string& mem) const {
  auto it = next.find(state);
  if (it == next.end())
    throw Error("PartialStrategy", "no next-action row for state '" + state + "'");
  auto jt = it->second.find(mem);
  if (jt == it->second.end())
    throw Error("PartialStrategy",
                "no next action at (" + state + ", " + mem + ")");
  return jt->second;
}

MealyStrategy as_mealy(const PureMemorylessStrategy& s, const std::vector<Rat>& alphabet) {
  MealyStrategy out;
  out.player = s.player;
  out.skeleton = trivial_skeleton(alphabet);
  const std::string& mem = out.skeleton.state_name(0);
  for (const auto& [state, action] : s.choice) out.next[state][mem] = action;
  return out;
}

void check_total(const PureMemorylessStrategy& s, const Arena& a) {
  for (int i = 0; i < a.size(); ++i) {
    const State& st = a.state(i);
    if (st.owner != s.player) continue;
    const std::string& act = s.at(st.name);
    if (a.action_index(i, act) < 0)
      throw Error("UnknownAction",
                  "strategy picks missing action '" + act + "' at '" + st.name + "'");
  }
}

void check_total(const MealyStrategy& s, const Arena& a) {
  for (int i = 0; i < a.size(); ++i) {
    const State& st = a.state(i);
    if (st.owner != s.player) continue;
    for (int m = 0; m < s.skeleton.size(); ++m) {
      const std::string& act = s.at(st.name, s.skeleton.state_name(m));
      if (a.action_index(i, act) < 0)
        throw Error("UnknownAction",
                    "strategy picks missing action '" + act + "' at '" + st.name + "'");
    }
  }
}

}  // namespace aifm
