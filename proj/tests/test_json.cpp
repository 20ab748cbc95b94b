#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "aifm/error.hpp"
#include "aifm/fixtures.hpp"
#include "aifm/json_io.hpp"

using namespace aifm;

TEST_CASE("arena JSON round-trip is the identity up to index renumbering") {
  auto fig3 = fig3_arena();
  Json j = arena_to_json(fig3);
  auto back = arena_from_json(j);
  auto witness = isomorphic(fig3, back);
  REQUIRE(witness.has_value());
  for (const auto& [from, to] : witness->states) CHECK(from == to);
  // Byte-identical re-serialization.
  CHECK(arena_to_json(back).dump(2) == j.dump(2));
}

TEST_CASE("skeleton JSON round-trip") {
  auto mm = m_max({Rat(0), Rat(1), Rat(2)});
  Json j = skeleton_to_json(mm);
  auto back = skeleton_from_json(j);
  CHECK(back.state_names() == mm.state_names());
  CHECK(back.alphabet() == mm.alphabet());
  for (int m = 0; m < mm.size(); ++m)
    for (int c = 0; c < (int)mm.alphabet().size(); ++c)
      CHECK(back.step_by_index(m, c) == mm.step_by_index(m, c));
}

TEST_CASE("strategy JSON round-trips") {
  PureMemorylessStrategy s;
  s.player = Player::P2;
  s.choice = {{"p", "x"}, {"q", "y"}};
  Json j = strategy_to_json(s);
  CHECK_FALSE(json_is_mealy_strategy(j));
  auto back = memoryless_from_json(j);
  CHECK(back.player == Player::P2);
  CHECK(back.choice == s.choice);

  MealyStrategy ms;
  ms.player = Player::P1;
  ms.skeleton = m_max({Rat(0), Rat(1)});
  ms.next["s"]["0"] = "a";
  ms.next["s"]["1"] = "b";
  Json mj = strategy_to_json(ms);
  CHECK(json_is_mealy_strategy(mj));
  auto mback = mealy_from_json(mj);
  CHECK(mback.next.at("s").at("1") == "b");
  CHECK(mback.skeleton.state_names() == ms.skeleton.state_names());
}

TEST_CASE("parsers reject floats and malformed rationals") {
  CHECK_THROWS_AS(rat_from_string("0.5"), Error);
  CHECK_THROWS_AS(rat_from_string("1e-3"), Error);
  CHECK_THROWS_AS(rat_from_string(""), Error);
  CHECK_THROWS_AS(rat_from_string("1/0"), Error);
  CHECK(rat_from_string("-6/4") == Rat(-3, 2));
  CHECK(rat_to_string(Rat(3)) == "3");
  CHECK(rat_to_string(Rat(-3, 4)) == "-3/4");

  Json bad = {{"states", Json::array({{{"name", "s"}, {"owner", 1}}})},
              {"actions",
               {{"s", Json::array({{{"name", "x"},
                                    {"color", 0.5},
                                    {"dist", Json::array({Json::array({"s", "1"})})}}})}}},
              {"initial", Json::array({"s"})}};
  CHECK_THROWS_AS(arena_from_json(bad), Error);
}

TEST_CASE("fixture registry") {
  CHECK(fixture_names() == std::vector<std::string>{"fig3", "fig4"});
  CHECK(fixture_by_name("fig3").arena().index_of("s2") >= 0);
  CHECK(fixture_by_name("fig4").arena().index_of("s2") >= 0);
  CHECK_THROWS_AS(fixture_by_name("fig5"), Error);
}
