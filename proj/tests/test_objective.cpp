#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "aifm/error.hpp"
#include "aifm/objective.hpp"

using namespace aifm;

TEST_CASE("objective parsing") {
  CHECK(ObjectiveSpec::parse("weak-parity").family == ObjectiveFamily::WeakParity);
  auto reach = ObjectiveSpec::parse("reach:2");
  CHECK(reach.family == ObjectiveFamily::ReachColor);
  CHECK(reach.target == Rat(2));
  auto de = ObjectiveSpec::parse("disc-expect:1/2");
  CHECK(de.lambda == Rat(1, 2));
  auto dt = ObjectiveSpec::parse("disc-threshold:1/3:-2");
  CHECK(dt.lambda == Rat(1, 3));
  CHECK(dt.threshold == Rat(-2));
  CHECK(ObjectiveSpec::parse("disc-threshold:2/3").threshold == Rat(0));
  CHECK_THROWS_AS(ObjectiveSpec::parse("parity"), Error);
  CHECK_THROWS_AS(ObjectiveSpec::parse("disc-expect:3/2"), Error);
  CHECK_THROWS_AS(ObjectiveSpec::parse("disc-expect:0.5"), Error);

  for (const char* text : {"weak-parity", "reach:2", "disc-expect:1/2",
                           "disc-threshold:1/2:0"})
    CHECK(ObjectiveSpec::parse(text).to_cli_string() == text);
}

TEST_CASE("initial contexts") {
  CHECK_FALSE(initial_context(ObjectiveSpec::weak_parity()).running_max.has_value());
  CHECK_FALSE(initial_context(ObjectiveSpec::reach_color(Rat(2))).seen);
  auto ctx = initial_context(ObjectiveSpec::disc_threshold(Rat(1, 2)));
  CHECK(ctx.offset == 0);
  CHECK(ctx.scale == 1);
}

TEST_CASE("shift_context per family") {
  auto wp = ObjectiveSpec::weak_parity();
  auto ctx = shift_context(wp, initial_context(wp), {Rat(1), Rat(0)});
  CHECK(*ctx.running_max == Rat(1));

  auto dt = ObjectiveSpec::disc_threshold(Rat(1, 2));
  auto dctx = shift_context(dt, initial_context(dt), {Rat(1)});
  CHECK(dctx.offset == Rat(1));
  CHECK(dctx.scale == Rat(1, 2));

  auto rc = ObjectiveSpec::reach_color(Rat(2));
  CHECK(shift_context(rc, initial_context(rc), {Rat(0), Rat(2)}).seen);
  CHECK_FALSE(shift_context(rc, initial_context(rc), {Rat(0)}).seen);
}

TEST_CASE("shift_context is a monoid action") {
  std::mt19937_64 rng(5);
  std::vector<ObjectiveSpec> specs = {
      ObjectiveSpec::weak_parity(), ObjectiveSpec::reach_color(Rat(1)),
      ObjectiveSpec::disc_expect(Rat(2, 3)), ObjectiveSpec::disc_threshold(Rat(1, 2))};
  for (const auto& spec : specs) {
    for (int trial = 0; trial < 40; ++trial) {
      std::vector<Rat> u, v;
      for (int i = 0, n = (int)(rng() % 4); i < n; ++i) u.push_back(Rat((int)(rng() % 3)));
      for (int i = 0, n = (int)(rng() % 4); i < n; ++i) v.push_back(Rat((int)(rng() % 3)));
      std::vector<Rat> uv = u;
      uv.insert(uv.end(), v.begin(), v.end());
      CHECK(shift_context(spec, initial_context(spec), uv) ==
            shift_context(spec, shift_context(spec, initial_context(spec), u), v));
    }
  }
}

TEST_CASE("value comparison") {
  Value half{ObjectiveFamily::WeakParity, Rat(1, 2)};
  Value threequarters{ObjectiveFamily::WeakParity, Rat(3, 4)};
  CHECK(compare(half, threequarters) < 0);
  CHECK(compare(half, half) == 0);
  CHECK(improves(Player::P1, threequarters, half));
  CHECK_FALSE(improves(Player::P2, threequarters, half));
  CHECK(improves(Player::P2, half, threequarters));
  Value other{ObjectiveFamily::ReachColor, Rat(1, 2)};
  CHECK_THROWS_AS(compare(half, other), Error);
}

TEST_CASE("context classes") {
  auto wp = context_classes(ObjectiveSpec::weak_parity(), {Rat(0), Rat(1), Rat(2)});
  CHECK_FALSE(wp.unbounded);
  CHECK(wp.classes.size() == 4);  // none, 0, 1, 2
  CHECK(wp.witnesses[0].empty());

  auto rc = context_classes(ObjectiveSpec::reach_color(Rat(1)), {Rat(0), Rat(1)});
  CHECK(rc.classes.size() == 2);

  CHECK(context_classes(ObjectiveSpec::disc_threshold(Rat(1, 2)), {Rat(1)}).unbounded);
  CHECK(context_classes(ObjectiveSpec::disc_expect(Rat(1, 2)), {Rat(1)}).unbounded);
}
