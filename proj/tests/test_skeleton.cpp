#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "aifm/error.hpp"
#include "aifm/fixtures.hpp"
#include "aifm/skeleton.hpp"

using namespace aifm;

TEST_CASE("trivial skeleton") {
  auto k = trivial_skeleton({Rat(0), Rat(1)});
  CHECK(k.size() == 1);
  CHECK(run(k, {Rat(1), Rat(0), Rat(1)}) == k.initial());
  // Unit of the product.
  auto mm = m_max({Rat(0), Rat(1)});
  auto prod = skeleton_product(trivial_skeleton({Rat(0), Rat(1)}), mm);
  CHECK(prod.size() == mm.size());
}

TEST_CASE("m_max remembers the greatest color") {
  auto k = m_max({Rat(0), Rat(1), Rat(2)});
  CHECK(k.size() == 3);
  CHECK(k.state_name(run(k, {})) == "0");
  CHECK(k.state_name(run(k, {Rat(1), Rat(0), Rat(2)})) == "2");
  CHECK(k.state_name(run(k, {Rat(1), Rat(2), Rat(1)})) == "2");
  CHECK_THROWS_AS(m_max({Rat(1, 2)}), Error);
  CHECK_THROWS_AS(run(k, {Rat(7)}), Error);

  // Running maximum is monotone along any word.
  std::mt19937_64 rng(7);
  std::vector<Rat> alphabet = {Rat(0), Rat(1), Rat(2)};
  for (int trial = 0; trial < 50; ++trial) {
    int m = k.initial();
    Rat prev = rat_from_string(k.state_name(m));
    for (int i = 0; i < 10; ++i) {
      m = k.step(m, alphabet[rng() % 3]);
      Rat cur = rat_from_string(k.state_name(m));
      CHECK(cur >= prev);
      prev = cur;
    }
  }
}

TEST_CASE("skeleton product synchronizes components") {
  auto mm = m_max({Rat(0), Rat(1)});
  auto prod = skeleton_product(mm, mm);
  // Only the diagonal is reachable from (0,0).
  CHECK(prod.size() == mm.size());

  // run of the product tracks both components.
  std::mt19937_64 rng(11);
  std::vector<Rat> alphabet = {Rat(0), Rat(1)};
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Rat> word;
    for (int i = 0, n = (int)(rng() % 6); i < n; ++i) word.push_back(alphabet[rng() % 2]);
    int m = run(mm, word);
    CHECK(prod.state_name(run(prod, word)) ==
          "(" + mm.state_name(m) + "," + mm.state_name(m) + ")");
  }

  CHECK_THROWS_AS(skeleton_product(mm, m_max({Rat(0), Rat(1), Rat(2)})), Error);
}

TEST_CASE("run is a monoid action") {
  auto k = m_max({Rat(0), Rat(1), Rat(2)});
  std::mt19937_64 rng(3);
  std::vector<Rat> alphabet = {Rat(0), Rat(1), Rat(2)};
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Rat> u, v;
    for (int i = 0, n = (int)(rng() % 5); i < n; ++i) u.push_back(alphabet[rng() % 3]);
    for (int i = 0, n = (int)(rng() % 5); i < n; ++i) v.push_back(alphabet[rng() % 3]);
    std::vector<Rat> uv = u;
    uv.insert(uv.end(), v.begin(), v.end());
    CHECK(run(k, uv) == run_from(k, run(k, u), v));
  }
}

TEST_CASE("representative_word finds shortest witnesses") {
  auto k = m_max({Rat(0), Rat(1), Rat(2)});
  auto w = representative_word(k, k.state_index("0"), k.state_index("2"));
  REQUIRE(w.has_value());
  CHECK(*w == std::vector<Rat>{Rat(2)});
  CHECK(representative_word(k, k.state_index("0"), k.state_index("0"))->empty());
  // m_max never forgets: 2 -> 0 unreachable.
  CHECK_FALSE(representative_word(k, k.state_index("2"), k.state_index("0")).has_value());
  auto triv = trivial_skeleton({Rat(0)});
  CHECK(representative_word(triv, 0, 0)->empty());
}

TEST_CASE("cycle_class_check") {
  auto fig3 = fig3_arena();
  auto triv = trivial_skeleton({Rat(0), Rat(1), Rat(2)});
  CHECK(cycle_class_check(fig3, "s1", triv, 0));

  auto mm = m_max({Rat(0), Rat(1), Rat(2)});
  // The 0-loop sink keeps any memory state fixed.
  CHECK(cycle_class_check(fig3, "r", mm, mm.state_index("0")));
  CHECK(cycle_class_check(fig3, "r", mm, mm.state_index("1")));

  // A state with a cycle reading color 2 leaves memory state 1.
  State s{"s", Player::P1, {Action{"x", Rat(2), {{0, Rat(1)}}}}};
  InitializedArena loop2(Arena({s}), {"s"});
  CHECK_FALSE(cycle_class_check(loop2, "s", mm, mm.state_index("1")));
  CHECK(cycle_class_check(loop2, "s", mm, mm.state_index("2")));
}

TEST_CASE("word formatting round-trips") {
  std::vector<Rat> w = {Rat(1), Rat(1, 2), Rat(-3)};
  CHECK(format_word(w) == "1 1/2 -3");
  CHECK(parse_word("1 1/2 -3") == w);
  CHECK(parse_word("").empty());
}
