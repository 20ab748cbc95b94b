#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "aifm/chain.hpp"
#include "aifm/error.hpp"
#include "aifm/fixtures.hpp"
#include "aifm/random_gen.hpp"
#include "test_support.hpp"

using namespace aifm;
using namespace aifm::testing;

namespace {

InducedChain fig3_chain(const std::string& s2_action) {
  auto fig3 = fig3_arena();
  auto sigma = strat(Player::P1, {{"s1", "go"}, {"u0", "step"}, {"u1", "step"},
                                  {"s2", s2_action}, {"r", "loop"}, {"v1", "step"},
                                  {"v2", "step"}});
  return induce_chain(fig3, sigma, first_action_strategy(fig3, Player::P2));
}

InitializedArena one_state_loop(const Rat& color) {
  State s{"s", Player::P1, {Action{"loop", color, {{0, Rat(1)}}}}};
  return InitializedArena(Arena({s}), {"s"});
}

}  // namespace

TEST_CASE("induce_chain on the fixture") {
  InducedChain chain = fig3_chain("a");
  // Memoryless profile: nodes are exactly the reachable arena states
  // (v1, v2 are unreachable when s2 plays a).
  CHECK(chain.out.size() == 5);
  int terminals = 0;
  for (int v = 0; v < (int)chain.out.size(); ++v)
    if (is_self_loop_sink(chain, v)) ++terminals;
  CHECK(terminals == 1);

  // One-state arena: one node with a self-loop.
  auto tiny = one_state_loop(Rat(0));
  auto s1 = first_action_strategy(tiny, Player::P1);
  auto s2 = first_action_strategy(tiny, Player::P2);
  InducedChain tc = induce_chain(tiny, s1, s2);
  CHECK(tc.out.size() == 1);
  CHECK(is_self_loop_sink(tc, 0));
}

TEST_CASE("chains from covered products match base chains up to relabeling") {
  auto fig3 = fig3_arena();
  auto mm = m_max({Rat(0), Rat(1), Rat(2)});
  RandomGen gen(42);
  MealyStrategy sigma = gen.mealy_strategy(fig3, Player::P1, mm);
  auto sigma2 = first_action_strategy(fig3, Player::P2);

  auto transfer = mealy_to_memoryless(fig3, sigma);
  auto sigma2p = first_action_strategy(transfer.product.arena, Player::P2);
  InducedChain base = induce_chain(fig3, sigma, sigma2);
  InducedChain prod = induce_chain(transfer.product.arena, transfer.strategy, sigma2p);
  CHECK(base.out.size() == prod.out.size());
}

TEST_CASE("bsccs") {
  {
    auto tc = induce_chain(one_state_loop(Rat(0)),
                           first_action_strategy(one_state_loop(Rat(0)), Player::P1),
                           first_action_strategy(one_state_loop(Rat(0)), Player::P2));
    auto comps = bsccs(tc);
    REQUIRE(comps.size() == 1);
    CHECK(comps[0] == std::vector<int>{0});
  }
  {
    // Optimal-profile fixture chain: two absorbing components.
    InducedChain chain = fig3_chain("b");
    auto comps = bsccs(chain);
    CHECK(comps.size() == 1);  // all paths end in the shared sink r
  }
}

TEST_CASE("absorption probabilities") {
  // Fair coin into two sinks.
  std::vector<State> states;
  states.push_back(State{"l", Player::P1, {Action{"loop", Rat(0), {{0, Rat(1)}}}}});
  states.push_back(State{"r", Player::P1, {Action{"loop", Rat(0), {{1, Rat(1)}}}}});
  states.push_back(
      State{"c", Player::P1, {Action{"flip", Rat(0), {{0, Rat(1, 2)}, {1, Rat(1, 2)}}}}});
  InitializedArena coin(Arena(std::move(states)), {"c"});
  auto chain = induce_chain(coin, first_action_strategy(coin, Player::P1),
                            first_action_strategy(coin, Player::P2));
  auto comps = bsccs(chain);
  REQUIRE(comps.size() == 2);
  int start = chain.initial_node.at("c");
  auto absorb = absorption_probabilities(chain, comps, start);
  CHECK(absorb[0] == Rat(1, 2));
  CHECK(absorb[1] == Rat(1, 2));
  CHECK(absorb[0] + absorb[1] == Rat(1));

  // From inside a component the mass is 1 on it.
  auto from_sink = absorption_probabilities(chain, comps, comps[0][0]);
  CHECK(from_sink[0] == Rat(1));
}

TEST_CASE("absorption probabilities sum to 1 on random chains") {
  RandomGen gen(77);
  for (int trial = 0; trial < 40; ++trial) {
    RandomGen::ArenaParams p;
    p.one_player = true;
    auto a = gen.arena(p);
    auto sigma = gen.memoryless_strategy(a, Player::P1);
    auto chain = induce_chain(a, sigma, first_action_strategy(a, Player::P2));
    auto comps = bsccs(chain);
    auto all = absorption_probabilities_all(chain, comps);
    for (const auto& row : all) {
      Rat total = 0;
      for (const Rat& x : row) {
        CHECK(x >= 0);
        total += x;
      }
      CHECK(total == Rat(1));
    }
  }
}

TEST_CASE("weak parity values on the fixture") {
  auto spec = ObjectiveSpec::weak_parity();
  ObjectiveContext none = initial_context(spec);

  // Expected values from the independent path oracle, frozen below.
  {
    InducedChain chain = fig3_chain("a");
    int start = chain.initial_node.at("s1");
    Rat oracle = wp_win_prob_paths(chain, start, Rat(-1));
    CHECK(oracle == Rat(1, 2));
    CHECK(weak_parity_value(chain, none, start).v == oracle);
  }
  {
    InducedChain chain = fig3_chain("b");
    int start = chain.initial_node.at("s1");
    Rat oracle = wp_win_prob_paths(chain, start, Rat(-1));
    CHECK(oracle == Rat(1, 2));
    CHECK(weak_parity_value(chain, none, start).v == oracle);
  }
  {
    // The figure-optimal Mealy profile reaches 3/4.
    auto fig3 = fig3_arena();
    auto mm = m_max({Rat(0), Rat(1), Rat(2)});
    MealyStrategy sigma;
    sigma.player = Player::P1;
    sigma.skeleton = mm;
    for (const State& st : fig3.arena().states()) {
      if (st.owner != Player::P1) continue;
      for (int m = 0; m < mm.size(); ++m)
        sigma.next[st.name][mm.state_name(m)] =
            st.name == "s2" ? (mm.state_name(m) == "0" ? "a" : "b")
                            : st.actions.front().name;
    }
    auto chain = induce_chain(fig3, sigma, first_action_strategy(fig3, Player::P2));
    int start = chain.initial_node.at("s1");
    Rat oracle = wp_win_prob_paths(chain, start, Rat(-1));
    CHECK(oracle == Rat(3, 4));
    CHECK(weak_parity_value(chain, none, start).v == Rat(3, 4));
  }
  {
    // A chain emitting color 2 then looping on 0 wins surely.
    std::vector<State> states;
    states.push_back(State{"end", Player::P1, {Action{"loop", Rat(0), {{0, Rat(1)}}}}});
    states.push_back(State{"s", Player::P1, {Action{"step", Rat(2), {{0, Rat(1)}}}}});
    InitializedArena a(Arena(std::move(states)), {"s"});
    auto chain = induce_chain(a, first_action_strategy(a, Player::P1),
                              first_action_strategy(a, Player::P2));
    CHECK(weak_parity_value(chain, none, chain.initial_node.at("s")).v == Rat(1));
  }

  // Context shifts: under max=2 everything wins, under max=1 the a-chain
  // loses surely.
  {
    InducedChain chain = fig3_chain("a");
    int start = chain.initial_node.at("s1");
    ObjectiveContext two;
    two.running_max = Rat(2);
    CHECK(weak_parity_value(chain, two, start).v == Rat(1));
    ObjectiveContext one;
    one.running_max = Rat(1);
    // Only the branch reading color 2 can top the odd maximum... the a-chain
    // never reads above 1, so everything stays at max 1.
    CHECK(weak_parity_value(chain, one, start).v == Rat(0));
  }

  CHECK_THROWS_AS(
      [&] {
        auto bad = one_state_loop(Rat(1, 2));
        auto chain = induce_chain(bad, first_action_strategy(bad, Player::P1),
                                  first_action_strategy(bad, Player::P2));
        weak_parity_value(chain, none, 0);
      }(),
      Error);
}

TEST_CASE("reachability values") {
  auto spec = ObjectiveSpec::reach_color(Rat(2));
  ObjectiveContext fresh = initial_context(spec);
  {
    InducedChain chain = fig3_chain("b");
    int start = chain.initial_node.at("s1");
    // Color 2 is read on the v2 branch only: probability 1/2 * 1/2... on both
    // coin outcomes s2 plays b, so 1/2 overall.
    CHECK(reachability_value(chain, fresh, Rat(2), start).v == Rat(1, 2));
    ObjectiveContext seen;
    seen.seen = true;
    CHECK(reachability_value(chain, seen, Rat(2), start).v == Rat(1));
    // Absent color: probability 0.
    CHECK(reachability_value(chain, fresh, Rat(9), start).v == Rat(0));
  }
  {
    // Target on every initial edge.
    auto tiny = one_state_loop(Rat(2));
    auto chain = induce_chain(tiny, first_action_strategy(tiny, Player::P1),
                              first_action_strategy(tiny, Player::P2));
    CHECK(reachability_value(chain, fresh, Rat(2), 0).v == Rat(1));
  }
}

TEST_CASE("discounted expectation values") {
  ObjectiveContext fresh;
  {
    // Self-loop on color c: value c / (1 - lambda); with lambda=1/2, c=1: 2.
    auto tiny = one_state_loop(Rat(1));
    auto chain = induce_chain(tiny, first_action_strategy(tiny, Player::P1),
                              first_action_strategy(tiny, Player::P2));
    CHECK(disc_expectation_value(chain, fresh, Rat(1, 2), 0).v == Rat(2));
    CHECK(disc_expectation_value(chain, fresh, Rat(1, 3), 0).v == Rat(3, 2));
  }
  {
    // All-zero chain: the context offset.
    auto tiny = one_state_loop(Rat(0));
    auto chain = induce_chain(tiny, first_action_strategy(tiny, Player::P1),
                              first_action_strategy(tiny, Player::P2));
    ObjectiveContext ctx;
    ctx.offset = Rat(7, 3);
    ctx.scale = Rat(1, 4);
    CHECK(disc_expectation_value(chain, ctx, Rat(1, 2), 0).v == Rat(7, 3));
  }
}

TEST_CASE("discounted threshold values on the generated fixture") {
  auto fig4 = fig4_arena();
  auto spec = ObjectiveSpec::disc_threshold(Rat(1, 2));
  ObjectiveContext fresh = initial_context(spec);

  // Path oracle cross-check, then frozen values: a-always and b-always both
  // reach 1/2.
  for (const char* action : {"a", "b"}) {
    PureMemorylessStrategy sigma = first_action_strategy(fig4, Player::P1);
    sigma.choice["s2"] = action;
    auto chain =
        induce_chain(fig4, sigma, first_action_strategy(fig4, Player::P2));
    int start = chain.initial_node.at("s1");
    Rat oracle = disc_threshold_paths(chain, start, Rat(1, 2), Rat(0));
    CHECK(oracle == Rat(1, 2));
    CHECK(disc_threshold_value(chain, fresh, Rat(1, 2), Rat(0), start).v == oracle);
  }

  // A transient cycle is outside the supported fragment.
  {
    std::vector<State> states;
    states.push_back(State{"end", Player::P1, {Action{"loop", Rat(0), {{0, Rat(1)}}}}});
    states.push_back(State{"u", Player::P1, {Action{"go", Rat(1), {}}}});
    states.push_back(State{"w", Player::P1,
                           {Action{"back", Rat(1), {{1, Rat(1, 2)}, {0, Rat(1, 2)}}}}});
    states[1].actions[0].dist = {{2, Rat(1)}};
    InitializedArena a(Arena(std::move(states)), {"u"});
    auto chain = induce_chain(a, first_action_strategy(a, Player::P1),
                              first_action_strategy(a, Player::P2));
    CHECK_THROWS_AS(disc_threshold_value(chain, fresh, Rat(1, 2), Rat(0),
                                         chain.initial_node.at("u")),
                    Error);
  }
}

TEST_CASE("evaluate matches shifted evaluation on prefix extensions") {
  // Shift consistency: evaluating from the head of a prefix chain equals
  // evaluating at the target under the shifted context.
  auto fig3 = fig3_arena();
  std::vector<std::vector<Rat>> words = {{Rat(1)}, {Rat(0), Rat(1)}, {Rat(2), Rat(0)}};
  auto spec = ObjectiveSpec::weak_parity();
  for (const auto& w : words) {
    auto [ext, head] = prefix_extend(fig3, w, "s2");
    for (const char* action : {"a", "b"}) {
      PureMemorylessStrategy sigma = first_action_strategy(ext, Player::P1);
      sigma.choice["s2"] = action;
      auto sigma2 = first_action_strategy(ext, Player::P2);
      auto vals = evaluate_per_initial(ext, sigma, sigma2, spec, initial_context(spec));

      PureMemorylessStrategy base_sigma = first_action_strategy(fig3, Player::P1);
      base_sigma.choice["s2"] = action;
      auto at_s2 = reinitialize(fig3, {"s2"});
      ObjectiveContext shifted = shift_context(spec, initial_context(spec), w);
      auto base_vals = evaluate_per_initial(at_s2, base_sigma,
                                            first_action_strategy(fig3, Player::P2),
                                            spec, shifted);
      CHECK(vals.at(head).v == base_vals.at("s2").v);
    }
  }
}

TEST_CASE("evaluate is invariant under state renaming") {
  auto fig3 = fig3_arena();
  std::vector<State> renamed;
  for (const State& st : fig3.arena().states()) {
    State copy = st;
    copy.name = "x" + st.name;
    renamed.push_back(copy);
  }
  InitializedArena relabeled(Arena(renamed), {"xs1"});
  auto spec = ObjectiveSpec::weak_parity();
  for (const char* action : {"a", "b"}) {
    PureMemorylessStrategy sigma = first_action_strategy(fig3, Player::P1);
    sigma.choice["s2"] = action;
    PureMemorylessStrategy rsigma = first_action_strategy(relabeled, Player::P1);
    rsigma.choice["xs2"] = action;
    CHECK(evaluate(fig3, sigma, first_action_strategy(fig3, Player::P2), spec,
                   initial_context(spec))
              .v ==
          evaluate(relabeled, rsigma, first_action_strategy(relabeled, Player::P2), spec,
                   initial_context(spec))
              .v);
  }
}

TEST_CASE("strategies must be total") {
  auto fig3 = fig3_arena();
  PureMemorylessStrategy partial;
  partial.player = Player::P1;
  partial.choice["s1"] = "go";  // missing the rest
  CHECK_THROWS_AS(
      induce_chain(fig3, partial, first_action_strategy(fig3, Player::P2)), Error);
}
