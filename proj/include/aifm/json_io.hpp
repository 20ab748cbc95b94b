#pragma once

#include <string>

#include <json.hpp>

#include "aifm/arena.hpp"
#include "aifm/skeleton.hpp"
#include "aifm/strategy.hpp"

namespace aifm {

using Json = nlohmann::json;

// Arena schema:
//   {"states":[{"name":..,"owner":1|2},..],
//    "actions":{state:[{"name":..,"color":"p/q","dist":[[target,"p/q"],..]},..]},
//    "initial":[state,..]}
// All rationals are "p/q" strings ("3" means "3/1"); floats are rejected.
Json arena_to_json(const InitializedArena& a);
InitializedArena arena_from_json(const Json& j);

// Skeleton schema:
//   {"alphabet":["p/q",..],"states":[name,..],"initial":name,
//    "update":{state:{color:state}}}
Json skeleton_to_json(const MemorySkeleton& k);
MemorySkeleton skeleton_from_json(const Json& j);

// Strategy schemas:
//   memoryless: {"player":1,"choice":{state:action}}
//   Mealy:      {"player":1,"skeleton":<skeleton>,"next":{state:{mem:action}}}
Json strategy_to_json(const PureMemorylessStrategy& s);
Json strategy_to_json(const MealyStrategy& s);
bool json_is_mealy_strategy(const Json& j);
PureMemorylessStrategy memoryless_from_json(const Json& j);
MealyStrategy mealy_from_json(const Json& j);

Json load_json_file(const std::string& path);

}  // namespace aifm
