#include "aifm/json_io.hpp"

#include <fstream>

#include "aifm/error.hpp"

namespace aifm {

namespace {

Rat rat_from_json(const Json& j) {
  if (!j.is_string())
    throw Error("BadRational", "rationals must be \"p/q\" strings, got " + j.dump());
  return rat_from_string(j.get<std::string>());
}

Player player_from_json(const Json& j) {
  if (!j.is_number_integer() || (j.get<int>() != 1 && j.get<int>() != 2))
    throw Error("BadPlayer", "owner/player must be 1 or 2");
  return j.get<int>() == 1 ? Player::P1 : Player::P2;
}

}  // namespace

Json arena_to_json(const InitializedArena& a) {
  Json j;
  j["states"] = Json::array();
  j["actions"] = Json::object();
  for (const State& s : a.arena().states()) {
    j["states"].push_back({{"name", s.name}, {"owner", player_index(s.owner)}});
    Json acts = Json::array();
    for (const Action& x : s.actions) {
      Json dist = Json::array();
      for (const auto& [to, p] : x.dist)
        dist.push_back(Json::array({a.arena().state(to).name, rat_to_string(p)}));
      acts.push_back({{"name", x.name},
                      {"color", rat_to_string(x.color)},
                      {"dist", dist}});
    }
    j["actions"][s.name] = acts;
  }
  j["initial"] = a.initial_names();
  return j;
}

InitializedArena arena_from_json(const Json& j) {
  if (!j.contains("states") || !j.contains("actions") || !j.contains("initial"))
    throw Error("BadArenaJson", "arena JSON needs states, actions, initial");
  std::vector<State> states;
  std::map<std::string, int> index;
  for (const Json& js : j.at("states")) {
    State s;
    s.name = js.at("name").get<std::string>();
    s.owner = player_from_json(js.at("owner"));
    index[s.name] = (int)states.size();
    states.push_back(std::move(s));
  }
  for (State& s : states) {
    if (!j.at("actions").contains(s.name))
      throw Error("BadArenaJson", "no actions for state '" + s.name + "'");
    for (const Json& jx : j.at("actions").at(s.name)) {
      Action x;
      x.name = jx.at("name").get<std::string>();
      x.color = rat_from_json(jx.at("color"));
      for (const Json& je : jx.at("dist")) {
        std::string target = je.at(0).get<std::string>();
        auto it = index.find(target);
        if (it == index.end())
          throw Error("BadArenaJson", "unknown transition target '" + target + "'");
        x.dist.push_back({it->second, rat_from_json(je.at(1))});
      }
      s.actions.push_back(std::move(x));
    }
  }
  std::vector<std::string> initial;
  for (const Json& ji : j.at("initial")) initial.push_back(ji.get<std::string>());
  return InitializedArena(Arena(std::move(states)), initial);
}

Json skeleton_to_json(const MemorySkeleton& k) {
  Json j;
  Json alphabet = Json::array();
  for (const Rat& c : k.alphabet()) alphabet.push_back(rat_to_string(c));
  j["alphabet"] = alphabet;
  j["states"] = k.state_names();
  j["initial"] = k.state_name(k.initial());
  Json update = Json::object();
  for (int m = 0; m < k.size(); ++m) {
    Json row = Json::object();
    for (int ci = 0; ci < (int)k.alphabet().size(); ++ci)
      row[rat_to_string(k.alphabet()[ci])] = k.state_name(k.step_by_index(m, ci));
    update[k.state_name(m)] = row;
  }
  j["update"] = update;
  return j;
}

MemorySkeleton skeleton_from_json(const Json& j) {
  std::vector<Rat> alphabet;
  for (const Json& jc : j.at("alphabet")) alphabet.push_back(rat_from_json(jc));
  std::vector<std::string> names;
  std::map<std::string, int> index;
  for (const Json& jn : j.at("states")) {
    names.push_back(jn.get<std::string>());
    index[names.back()] = (int)names.size() - 1;
  }
  std::vector<Rat> sorted = alphabet;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<std::vector<int>> update(names.size(),
                                       std::vector<int>(sorted.size(), -1));
  for (size_t m = 0; m < names.size(); ++m) {
    if (!j.at("update").contains(names[m]))
      throw Error("PartialUpdate", "no update row for memory state " + names[m]);
    const Json& row = j.at("update").at(names[m]);
    for (size_t ci = 0; ci < sorted.size(); ++ci) {
      std::string key = rat_to_string(sorted[ci]);
      if (!row.contains(key))
        throw Error("PartialUpdate",
                    "no update for (" + names[m] + ", " + key + ")");
      std::string target = row.at(key).get<std::string>();
      auto it = index.find(target);
      if (it == index.end())
        throw Error("UnknownMemoryState", "update targets unknown state " + target);
      update[m][ci] = it->second;
    }
  }
  auto init = index.find(j.at("initial").get<std::string>());
  if (init == index.end())
    throw Error("UnknownMemoryState", "initial memory state not in state list");
  return MemorySkeleton(sorted, names, init->second, update);
}

Json strategy_to_json(const PureMemorylessStrategy& s) {
  Json j;
  j["player"] = player_index(s.player);
  j["choice"] = s.choice;
  return j;
}

Json strategy_to_json(const MealyStrategy& s) {
  Json j;
  j["player"] = player_index(s.player);
  j["skeleton"] = skeleton_to_json(s.skeleton);
  j["next"] = s.next;
  return j;
}

bool json_is_mealy_strategy(const Json& j) { return j.contains("skeleton"); }

PureMemorylessStrategy memoryless_from_json(const Json& j) {
  PureMemorylessStrategy s;
  s.player = player_from_json(j.at("player"));
  for (const auto& [state, action] : j.at("choice").items())
    s.choice[state] = action.get<std::string>();
  return s;
}

MealyStrategy mealy_from_json(const Json& j) {
  MealyStrategy s;
  s.player = player_from_json(j.at("player"));
  s.skeleton = skeleton_from_json(j.at("skeleton"));
  for (const auto& [state, row] : j.at("next").items())
    for (const auto& [mem, action] : row.items()) s.next[state][mem] = action.get<std::string>();
  return s;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("FileNotFound", "cannot open '" + path + "'");
  Json j;
  try {
    in >> j;
  } catch (const Json::parse_error& e) {
    throw Error("BadJson", std::string("parse error in '") + path + "': " + e.what());
  }
  return j;
}

}  // namespace aifm
