#include "aifm/objective.hpp"

#include <algorithm>

#include "aifm/error.hpp"

namespace aifm {

std::string family_name(ObjectiveFamily f) {
  switch (f) {
    case ObjectiveFamily::WeakParity: return "weak-parity";
    case ObjectiveFamily::ReachColor: return "reach";
    case ObjectiveFamily::DiscExpect: return "disc-expect";
    case ObjectiveFamily::DiscThreshold: return "disc-threshold";
  }
  return "?";
}

ObjectiveSpec ObjectiveSpec::weak_parity() { return ObjectiveSpec{}; }

ObjectiveSpec ObjectiveSpec::reach_color(const Rat& c) {
  ObjectiveSpec s;
  s.family = ObjectiveFamily::ReachColor;
  s.target = c;
  return s;
}

ObjectiveSpec ObjectiveSpec::disc_expect(const Rat& lambda) {
  ObjectiveSpec s;
  s.family = ObjectiveFamily::DiscExpect;
  s.lambda = lambda;
  s.check_params();
  return s;
}

ObjectiveSpec ObjectiveSpec::disc_threshold(const Rat& lambda, const Rat& theta) {
  ObjectiveSpec s;
  s.family = ObjectiveFamily::DiscThreshold;
  s.lambda = lambda;
  s.threshold = theta;
  s.check_params();
  return s;
}

void ObjectiveSpec::check_params() const {
  if (family == ObjectiveFamily::DiscExpect || family == ObjectiveFamily::DiscThreshold) {
    if (!(lambda > 0 && lambda < 1))
      throw Error("BadDiscountFactor", "lambda must satisfy 0 < lambda < 1");
  }
}

ObjectiveSpec ObjectiveSpec::parse(const std::string& text) {
  auto split = [](const std::string& s) {
    std::vector<std::string> parts;
    size_t start = 0;
    while (true) {
      size_t colon = s.find(':', start);
      if (colon == std::string::npos) {
        parts.push_back(s.substr(start));
        break;
      }
      parts.push_back(s.substr(start, colon - start));
      start = colon + 1;
    }
    return parts;
  };
  std::vector<std::string> parts = split(text);
  const std::string& head = parts[0];
  if (head == "weak-parity") {
    if (parts.size() != 1) throw Error("BadObjective", "weak-parity takes no parameters");
    return weak_parity();
  }
  if (head == "reach") {
    if (parts.size() != 2) throw Error("BadObjective", "expected reach:<color>");
    return reach_color(rat_from_string(parts[1]));
  }
  if (head == "disc-expect") {
    if (parts.size() != 2) throw Error("BadObjective", "expected disc-expect:<lambda>");
    return disc_expect(rat_from_string(parts[1]));
  }
  if (head == "disc-threshold") {
    if (parts.size() != 2 && parts.size() != 3)
      throw Error("BadObjective", "expected disc-threshold:<lambda>[:<theta>]");
    Rat theta = parts.size() == 3 ? rat_from_string(parts[2]) : Rat(0);
    return disc_threshold(rat_from_string(parts[1]), theta);
  }
  throw Error("BadObjective", "unknown objective '" + text + "'");
}

std::string ObjectiveSpec::to_cli_string() const {
  switch (family) {
    case ObjectiveFamily::WeakParity: return "weak-parity";
    case ObjectiveFamily::ReachColor: return "reach:" + rat_to_string(target);
    case ObjectiveFamily::DiscExpect: return "disc-expect:" + rat_to_string(lambda);
    case ObjectiveFamily::DiscThreshold:
      return "disc-threshold:" + rat_to_string(lambda) + ":" + rat_to_string(threshold);
  }
  return "?";
}

ObjectiveContext initial_context(const ObjectiveSpec& spec) {
  (void)spec;
  return ObjectiveContext{};
}

ObjectiveContext shift_context(const ObjectiveSpec& spec, const ObjectiveContext& ctx,
                               const std::vector<Rat>& word) {
  ObjectiveContext out = ctx;
  switch (spec.family) {
    case ObjectiveFamily::WeakParity:
      for (const Rat& c : word) {
        if (!rat_is_nonneg_integer(c))
          throw Error("NonIntegerColor",
                      "weak parity needs non-negative integer colors");
        if (!out.running_max || c > *out.running_max) out.running_max = c;
      }
      break;
    case ObjectiveFamily::ReachColor:
      for (const Rat& c : word)
        if (c == spec.target) out.seen = true;
      break;
    case ObjectiveFamily::DiscExpect:
    case ObjectiveFamily::DiscThreshold:
      for (const Rat& c : word) {
        out.offset += out.scale * c;
        out.scale *= spec.lambda;
      }
      break;
  }
  return out;
}

int compare(const Value& a, const Value& b) {
  if (a.family != b.family)
    throw Error("FamilyMismatch", "comparing values of different objective families");
  return a.v < b.v ? -1 : (a.v == b.v ? 0 : 1);
}

bool improves(Player p, const Value& cand, const Value& cur) {
  int c = compare(cand, cur);
  return p == Player::P1 ? c > 0 : c < 0;
}

ContextClasses context_classes(const ObjectiveSpec& spec, const std::vector<Rat>& colors) {
  ContextClasses out;
  switch (spec.family) {
    case ObjectiveFamily::WeakParity: {
      out.classes.push_back(ObjectiveContext{});  // empty prefix
      out.witnesses.push_back({});
      std::vector<Rat> sorted = colors;
      std::sort(sorted.begin(), sorted.end());
      sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
      for (const Rat& c : sorted) {
        ObjectiveContext ctx;
        ctx.running_max = c;
        out.classes.push_back(ctx);
        out.witnesses.push_back({c});  // shortest witness: the color itself
      }
      break;
    }
    case ObjectiveFamily::ReachColor: {
      out.classes.push_back(ObjectiveContext{});
      out.witnesses.push_back({});
      ObjectiveContext seen;
      seen.seen = true;
      out.classes.push_back(seen);
      out.witnesses.push_back({spec.target});
      break;
    }
    case ObjectiveFamily::DiscExpect:
    case ObjectiveFamily::DiscThreshold:
      // The scale component never revisits a value, so the family of
      // reachable contexts is infinite.
      out.unbounded = true;
      break;
  }
  return out;
}

}  // namespace aifm
