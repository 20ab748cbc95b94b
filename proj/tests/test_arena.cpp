#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "aifm/arena.hpp"
#include "aifm/error.hpp"
#include "aifm/fixtures.hpp"
#include "test_support.hpp"

using namespace aifm;

namespace {

InitializedArena zero_loop_state(const std::string& name, const std::string& action) {
  State s{name, Player::P1, {Action{action, Rat(0), {{0, Rat(1)}}}}};
  return InitializedArena(Arena({s}), {name});
}

}  // namespace

TEST_CASE("validate accepts the weak-parity fixture") {
  CHECK(validate(fig3_arena().arena()).empty());
}

TEST_CASE("validate flags blocking states and bad distributions") {
  {
    Arena a({State{"s", Player::P1, {}}});
    auto diags = validate(a);
    REQUIRE(diags.size() == 1);
    CHECK(diags[0] == "blocking state s");
  }
  {
    // 1/2 + 1/3 != 1
    State s{"s", Player::P1, {Action{"x", Rat(0), {{0, Rat(1, 2)}, {0, Rat(1, 3)}}}}};
    auto diags = validate(Arena({s}));
    bool found = false;
    for (const auto& d : diags)
      if (d.find("distribution sum != 1") != std::string::npos) found = true;
    CHECK(found);
  }
}

TEST_CASE("choice_count") {
  CHECK(choice_count(fig3_arena().arena()) == 1);  // only s2 has two actions
  CHECK(choice_count(zero_loop_state("s", "x").arena()) == 0);
  auto sub = subarena_fix_action(fig3_arena(), "s2", "b");
  CHECK(choice_count(sub.arena()) == 0);
}

TEST_CASE("subarena restricts and prunes") {
  auto fig3 = fig3_arena();
  auto sub = subarena(fig3, {{"s2", {"a"}}});
  int s2 = sub.arena().require_index("s2");
  CHECK(sub.arena().state(s2).actions.size() == 1);
  // The b-branch targets v1, v2 become unreachable and are pruned.
  CHECK(sub.arena().index_of("v1") == -1);
  CHECK(sub.arena().index_of("v2") == -1);

  // Keeping everything yields an isomorphic arena.
  std::map<std::string, std::vector<std::string>> all;
  for (const State& st : fig3.arena().states()) {
    for (const Action& x : st.actions) all[st.name].push_back(x.name);
  }
  auto same = subarena(fig3, all);
  CHECK(isomorphic(fig3, same).has_value());

  CHECK_THROWS_AS(subarena(fig3, {{"s2", {}}}), Error);
}

TEST_CASE("prefix_extend adds a fresh chain") {
  auto fig3 = fig3_arena();
  long before_states = fig3.arena().size();
  long before_choices = choice_count(fig3.arena());

  auto [ext, head] = prefix_extend(fig3, {Rat(0), Rat(1)}, "s2");
  CHECK(ext.arena().size() == before_states + 2);
  CHECK(choice_count(ext.arena()) == before_choices);
  CHECK(ext.arena().index_of(head) >= 0);
  // New initial set contains the chain head and the old initials.
  auto initials = ext.initial_names();
  CHECK(std::find(initials.begin(), initials.end(), head) != initials.end());
  CHECK(std::find(initials.begin(), initials.end(), "s1") != initials.end());
  // Chain states have exactly one action; old states keep their actions.
  int hi = ext.arena().require_index(head);
  REQUIRE(ext.arena().state(hi).actions.size() == 1);
  CHECK(ext.arena().state(hi).actions[0].color == Rat(0));
  int s2 = ext.arena().require_index("s2");
  CHECK(ext.arena().state(s2).actions.size() == 2);

  CHECK_THROWS_AS(prefix_extend(fig3, {}, "s2"), Error);
}

TEST_CASE("merge combines two states of the same owner") {
  auto a1 = zero_loop_state("p", "x");
  auto a2 = zero_loop_state("q", "y");
  auto merged = merge(a1, "p", a2, "q");
  CHECK(merged.merged.arena().size() == 1);
  int t = merged.merged.arena().require_index(merged.merged_state);
  CHECK(merged.merged.arena().state(t).actions.size() == 2);
  CHECK(validate(merged.merged.arena()).empty());

  // Action name clash is rejected.
  auto a3 = zero_loop_state("z", "x");
  CHECK_THROWS_AS(merge(a1, "p", a3, "z"), Error);

  // Owner mismatch is rejected.
  State p2_state{"w", Player::P2, {Action{"y", Rat(0), {{0, Rat(1)}}}}};
  InitializedArena a4(Arena({p2_state}), {"w"});
  CHECK_THROWS_AS(merge(a1, "p", a4, "w"), Error);
}

TEST_CASE("split on a single-action state is isomorphic to the input") {
  auto fig3 = fig3_arena();
  auto sp = split(fig3, "s1");
  CHECK(isomorphic(fig3, sp.arena).has_value());
}

TEST_CASE("split on the choice state duplicates the rest") {
  auto fig3 = fig3_arena();
  auto sp = split(fig3, "s2");
  // t = s2 is shared; every other reachable state appears per action label.
  CHECK(sp.arena.arena().index_of("s2") >= 0);
  CHECK(sp.arena.arena().index_of("r@a") >= 0);
  CHECK(sp.arena.arena().index_of("r@b") >= 0);
  CHECK(sp.arena.arena().index_of("v1@b") >= 0);
  // v1 is only reachable in the b-copy.
  CHECK(sp.arena.arena().index_of("v1@a") == -1);
  CHECK(validate(sp.arena.arena()).empty());

  // Labeling maps to base states with identical owner and colors.
  for (const auto& [name, pr] : sp.labeling) {
    int si = sp.arena.arena().require_index(name);
    int bi = fig3.arena().index_of(pr.first);
    REQUIRE(bi >= 0);
    CHECK(sp.arena.arena().state(si).owner == fig3.arena().state(bi).owner);
  }

  // choice_count is preserved at t: s2 keeps both actions.
  int t = sp.arena.arena().require_index("s2");
  CHECK(sp.arena.arena().state(t).actions.size() == 2);

  // Initial copies: s1 appears once per action at s2.
  auto ia = sp.initials_of_copy("a");
  auto ib = sp.initials_of_copy("b");
  CHECK(ia == std::vector<std::string>{"s1@a"});
  CHECK(ib == std::vector<std::string>{"s1@b"});

  CHECK_THROWS_AS(split(fig3, "nope"), Error);
}

TEST_CASE("isomorphic finds witnesses and respects structure") {
  auto fig3 = fig3_arena();
  // Identity.
  auto self = isomorphic(fig3, fig3);
  REQUIRE(self.has_value());
  CHECK(self->states.at("s1") == "s1");

  // Relabeled copy.
  std::vector<State> renamed;
  for (const State& st : fig3.arena().states()) {
    State copy = st;
    copy.name = st.name + "'";
    renamed.push_back(copy);
  }
  InitializedArena relabeled(Arena(renamed), {"s1'"});
  auto witness = isomorphic(fig3, relabeled);
  REQUIRE(witness.has_value());
  CHECK(witness->states.at("s2") == "s2'");

  // Different shape: no witness.
  CHECK_FALSE(isomorphic(fig3, zero_loop_state("s", "x")).has_value());

  // Size cap.
  CHECK_THROWS_AS(isomorphic(fig3, fig3, 3), Error);
}

TEST_CASE("initialized arena prunes unreachable states") {
  State a{"a", Player::P1, {Action{"x", Rat(0), {{0, Rat(1)}}}}};
  State b{"b", Player::P1, {Action{"x", Rat(0), {{0, Rat(1)}}}}};  // points at a
  InitializedArena init(Arena({a, b}), {"a"});
  CHECK(init.arena().size() == 1);
  CHECK(init.arena().index_of("b") == -1);
}

TEST_CASE("arena operations keep validity") {
  auto fig3 = fig3_arena();
  CHECK(validate(subarena_fix_action(fig3, "s2", "a").arena()).empty());
  CHECK(validate(prefix_extend(fig3, {Rat(1)}, "s2").first.arena()).empty());
  CHECK(validate(split(fig3, "s2").arena.arena()).empty());
}
