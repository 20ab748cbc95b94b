#pragma once

#include <optional>
#include <string>
#include <vector>

#include "aifm/arena.hpp"
#include "aifm/rational.hpp"

namespace aifm {

enum class ObjectiveFamily { WeakParity, ReachColor, DiscExpect, DiscThreshold };

std::string family_name(ObjectiveFamily f);

// Value-representable preference relation. WeakParity, ReachColor and
// DiscThreshold are probability-valued; DiscExpect is an expectation.
struct ObjectiveSpec {
  ObjectiveFamily family = ObjectiveFamily::WeakParity;
  Rat lambda = Rat(1, 2);   // discount factor, 0 < lambda < 1 (Disc*)
  Rat target = 0;           // target color (ReachColor)
  Rat threshold = 0;        // winning threshold (DiscThreshold)

  static ObjectiveSpec weak_parity();
  static ObjectiveSpec reach_color(const Rat& c);
  static ObjectiveSpec disc_expect(const Rat& lambda);
  static ObjectiveSpec disc_threshold(const Rat& lambda, const Rat& theta = 0);

  // CLI syntax: weak-parity | reach:<color> | disc-expect:<l> | disc-threshold:<l>[:<t>]
  static ObjectiveSpec parse(const std::string& text);
  std::string to_cli_string() const;

  void check_params() const;  // 0 < lambda < 1 etc.
};

// Prefix summary implementing the shifted preference: the objective value of
// a continuation depends on the prefix only through this context.
struct ObjectiveContext {
  std::optional<Rat> running_max;  // WeakParity; nullopt for the empty prefix
  bool seen = false;               // ReachColor
  Rat offset = 0;                  // Disc*: accumulated discounted prefix sum
  Rat scale = 1;                   // Disc*: lambda^|prefix|

  bool operator==(const ObjectiveContext&) const = default;
};

struct Value {
  ObjectiveFamily family = ObjectiveFamily::WeakParity;
  Rat v;
};

ObjectiveContext initial_context(const ObjectiveSpec& spec);
ObjectiveContext shift_context(const ObjectiveSpec& spec, const ObjectiveContext& ctx,
                               const std::vector<Rat>& word);

// -1 / 0 / +1; higher preferred by P1, lower by P2. Throws FamilyMismatch.
int compare(const Value& a, const Value& b);

// True when `cand` strictly improves on `cur` for `p`.
bool improves(Player p, const Value& cand, const Value& cur);

// Reachable context classes, with a shortest witnessing word per class.
struct ContextClasses {
  bool unbounded = false;  // Disc*: contexts form an infinite family
  std::vector<ObjectiveContext> classes;
  std::vector<std::vector<Rat>> witnesses;  // parallel to classes
};
ContextClasses context_classes(const ObjectiveSpec& spec, const std::vector<Rat>& colors);

}  // namespace aifm
