#include "aifm/fixtures.hpp"

#include "aifm/characterize.hpp"
#include "aifm/error.hpp"
#include "aifm/skeleton.hpp"

namespace aifm {

InitializedArena fig3_arena() {
  // Branch colors of the source figure are encoded through intermediate
  // single-action states; the inserted 0 colors cannot change weak-parity
  // outcomes since 0 is the minimum color.
  std::vector<State> states;
  auto add = [&](State s) {
    states.push_back(std::move(s));
    return (int)states.size() - 1;
  };
  int r = add(State{"r", Player::P1, {Action{"loop", Rat(0), {}}}});
  states[r].actions[0].dist = {{r, Rat(1)}};
  int v1 = add(State{"v1", Player::P1, {Action{"step", Rat(1), {{r, Rat(1)}}}}});
  int v2 = add(State{"v2", Player::P1, {Action{"step", Rat(2), {{r, Rat(1)}}}}});
  State s2{"s2", Player::P1, {}};
  s2.actions.push_back(Action{"a", Rat(0), {{r, Rat(1)}}});
  s2.actions.push_back(Action{"b", Rat(0), {{v1, Rat(1, 2)}, {v2, Rat(1, 2)}}});
  int s2i = add(s2);
  int u0 = add(State{"u0", Player::P1, {Action{"step", Rat(0), {{s2i, Rat(1)}}}}});
  int u1 = add(State{"u1", Player::P1, {Action{"step", Rat(1), {{s2i, Rat(1)}}}}});
  State s1{"s1", Player::P1, {}};
  s1.actions.push_back(Action{"go", Rat(0), {{u0, Rat(1, 2)}, {u1, Rat(1, 2)}}});
  add(s1);
  return InitializedArena(Arena(std::move(states)), {"s1"});
}

InitializedArena fig4_arena() {
  MemorySkeleton triv = trivial_skeleton({Rat(1)});
  return counterexample_discounted(triv, Rat(1, 2)).arena;
}

InitializedArena fixture_by_name(const std::string& name) {
  if (name == "fig3") return fig3_arena();
  if (name == "fig4") return fig4_arena();
  throw Error("UnknownFixture", "no fixture named '" + name + "' (try fig3, fig4)");
}

std::vector<std::string> fixture_names() { return {"fig3", "fig4"}; }

}  // namespace aifm
