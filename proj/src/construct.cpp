#include "aifm/construct.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "aifm/error.hpp"

namespace aifm {

namespace {

std::string product_state_name(const std::string& base, const std::string& mem) {
  return base + "|" + mem;
}

}  // namespace

ProductArena product_arena(const InitializedArena& a, const MemorySkeleton& k) {
  // Reachable (state, memory) pairs from initial x {m_init}.
  std::map<std::pair<int, int>, int> index;
  std::vector<std::pair<int, int>> pairs;
  std::deque<int> queue;
  auto intern = [&](int s, int m) {
    auto [it, fresh] = index.emplace(std::make_pair(s, m), (int)pairs.size());
    if (fresh) {
      pairs.push_back({s, m});
      queue.push_back(it->second);
    }
    return it->second;
  };
  for (int s : a.initial()) intern(s, k.initial());

  std::vector<State> states;
  while (!queue.empty()) {
    int id = queue.front();
    queue.pop_front();
    auto [s, m] = pairs[id];
    const State& base = a.arena().state(s);
    State node;
    node.name = product_state_name(base.name, k.state_name(m));
    node.owner = base.owner;
    for (const Action& x : base.actions) {
      int m2 = k.step(m, x.color);
      Action px;
      px.name = x.name;
      px.color = x.color;
      for (const auto& [to, p] : x.dist) px.dist.push_back({intern(to, m2), p});
      node.actions.push_back(std::move(px));
    }
    states.push_back(std::move(node));
  }
  std::vector<std::string> initials;
  for (int s : a.initial())
    initials.push_back(product_state_name(a.arena().state(s).name, k.state_name(k.initial())));

  ProductArena out;
  out.arena = InitializedArena(Arena(std::move(states)), initials);
  for (size_t id = 0; id < pairs.size(); ++id) {
    auto [s, m] = pairs[id];
    out.map.forward[product_state_name(a.arena().state(s).name, k.state_name(m))] = {
        a.arena().state(s).name, k.state_name(m)};
  }
  return out;
}

CoverResult cover_witness(const InitializedArena& a, const MemorySkeleton& k) {
  CoverResult result;
  std::vector<int> phi(a.arena().size(), -1);
  std::vector<std::string> derivation(a.arena().size());
  std::deque<int> queue;
  for (int s : a.initial()) {
    phi[s] = k.initial();
    derivation[s] = "initial";
    queue.push_back(s);
  }
  while (!queue.empty()) {
    int s = queue.front();
    queue.pop_front();
    for (const Action& x : a.arena().state(s).actions) {
      int m2 = k.step(phi[s], x.color);
      for (const auto& [to, p] : x.dist) {
        if (p <= 0) continue;
        std::string via = a.arena().state(s).name + " --" + x.name + "--> " +
                          a.arena().state(to).name;
        if (phi[to] < 0) {
          phi[to] = m2;
          derivation[to] = via;
          queue.push_back(to);
        } else if (phi[to] != m2) {
          CoverConflict conflict;
          conflict.state = a.arena().state(to).name;
          conflict.mem_a = k.state_name(phi[to]);
          conflict.mem_b = k.state_name(m2);
          conflict.via_a = derivation[to];
          conflict.via_b = via;
          result.conflict = conflict;
          return result;
        }
      }
    }
  }
  std::map<std::string, std::string> witness;
  for (int s = 0; s < a.arena().size(); ++s)
    witness[a.arena().state(s).name] = k.state_name(phi[s]);
  result.witness = std::move(witness);
  return result;
}

MealyToMemorylessResult mealy_to_memoryless(const InitializedArena& a,
                                            const MealyStrategy& sigma) {
  check_total(sigma, a.arena());
  MealyToMemorylessResult out;
  out.product = product_arena(a, sigma.skeleton);
  out.strategy.player = sigma.player;
  for (const State& node : out.product.arena.arena().states()) {
    if (node.owner != sigma.player) continue;
    const auto& [base, mem] = out.product.map.forward.at(node.name);
    out.strategy.choice[node.name] = sigma.at(base, mem);
  }
  return out;
}

MealyStrategy memoryless_to_mealy(const InitializedArena& base,
                                  const ProductArena& product,
                                  const PureMemorylessStrategy& tau,
                                  const MemorySkeleton& k) {
  MealyStrategy out;
  out.player = tau.player;
  out.skeleton = k;
  // Default for unreachable (state, memory) pairs: the state's first action.
  for (int s = 0; s < base.arena().size(); ++s) {
    const State& st = base.arena().state(s);
    if (st.owner != tau.player) continue;
    for (int m = 0; m < k.size(); ++m)
      out.next[st.name][k.state_name(m)] = st.actions.front().name;
  }
  for (const auto& [pname, pair] : product.map.forward) {
    const auto& [sname, mname] = pair;
    if (base.arena().state(base.arena().require_index(sname)).owner != tau.player)
      continue;
    out.next[sname][mname] = tau.at(pname);
  }
  return out;
}

PureMemorylessStrategy strategy_across_split(const SplitResult& sp,
                                             const PureMemorylessStrategy& sigma,
                                             const std::string& seed) {
  (void)seed;  // memoryless output is seed-independent; seed selects initials
  PureMemorylessStrategy out;
  out.player = sigma.player;
  for (const State& st : sp.arena.arena().states()) {
    if (st.owner != sigma.player) continue;
    const auto& [base, label] = sp.labeling.at(st.name);
    out.choice[st.name] = sigma.at(base);
  }
  return out;
}

MealyStrategy strategy_across_split(const SplitResult& sp, const MealyStrategy& sigma,
                                    const std::string& seed) {
  (void)seed;
  MealyStrategy out;
  out.player = sigma.player;
  out.skeleton = sigma.skeleton;
  for (const State& st : sp.arena.arena().states()) {
    if (st.owner != sigma.player) continue;
    const auto& [base, label] = sp.labeling.at(st.name);
    for (int m = 0; m < sigma.skeleton.size(); ++m) {
      const std::string& mem = sigma.skeleton.state_name(m);
      out.next[st.name][mem] = sigma.at(base, mem);
    }
  }
  return out;
}

std::pair<PureMemorylessStrategy, PureMemorylessStrategy> split_projection(
    const InitializedArena& base, const SplitResult& sp, const std::string& t,
    const PureMemorylessStrategy& sigma1, const PureMemorylessStrategy& sigma2,
    const std::string& seed) {
  int ti = base.arena().require_index(t);
  const PureMemorylessStrategy& at_t =
      base.arena().state(ti).owner == Player::P1 ? sigma1 : sigma2;
  if (at_t.at(t) != seed)
    throw Error("SeedMismatch", "profile plays '" + at_t.at(t) + "' at " + t +
                                    ", declared seed '" + seed + "'");
  std::vector<std::string> label_order;
  for (const Action& x : base.arena().state(ti).actions) label_order.push_back(x.name);
  // Seed copy first, then the other copies in t's action order.
  std::rotate(label_order.begin(),
              std::find(label_order.begin(), label_order.end(), seed), label_order.end());

  std::map<std::pair<std::string, std::string>, std::string> copy_name;
  for (const auto& [split_name, pr] : sp.labeling) copy_name[pr] = split_name;

  PureMemorylessStrategy out1, out2;
  out1.player = sigma1.player;
  out2.player = sigma2.player;
  auto project = [&](const PureMemorylessStrategy& in, PureMemorylessStrategy& out) {
    for (const State& st : base.arena().states()) {
      if (st.owner != in.player) continue;
      if (st.name == t) {
        out.choice[t] = in.at(t);
        continue;
      }
      bool found = false;
      for (const std::string& label : label_order) {
        auto it = copy_name.find({st.name, label});
        if (it == copy_name.end()) continue;
        auto jt = in.choice.find(it->second);
        if (jt != in.choice.end()) {
          out.choice[st.name] = jt->second;
          found = true;
          break;
        }
      }
      if (!found) out.choice[st.name] = st.actions.front().name;
    }
  };
  project(sigma1, out1);
  project(sigma2, out2);
  return {out1, out2};
}

}  // namespace aifm
