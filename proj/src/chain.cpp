#include "aifm/chain.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>

#include "aifm/error.hpp"

namespace aifm {

namespace {

// Resolved view of one player's strategy machine for the synchronous product.
struct MachineView {
  const MemorySkeleton* skel = nullptr;  // null for memoryless
  int init = 0;
  // choice[state][mem] = arena action index (only for owned states).
  std::vector<std::vector<int>> choice;

  int n_mem() const { return skel ? skel->size() : 1; }
  int step(int mem, const Rat& color) const { return skel ? skel->step(mem, color) : 0; }
};

MachineView resolve(const InitializedArena& a, Player p, const StrategyRef& sigma) {
  MachineView view;
  const Arena& ar = a.arena();
  if (std::holds_alternative<PureMemorylessStrategy>(sigma)) {
    const auto& s = std::get<PureMemorylessStrategy>(sigma);
    if (s.player != p) throw Error("WrongPlayer", "strategy assigned to the wrong player");
    check_total(s, ar);
    view.choice.assign(ar.size(), std::vector<int>(1, -1));
    for (int i = 0; i < ar.size(); ++i)
      if (ar.state(i).owner == p) view.choice[i][0] = ar.action_index(i, s.at(ar.state(i).name));
  } else {
    const auto& s = std::get<MealyStrategy>(sigma);
    if (s.player != p) throw Error("WrongPlayer", "strategy assigned to the wrong player");
    check_total(s, ar);
    view.skel = &s.skeleton;
    view.init = s.skeleton.initial();
    view.choice.assign(ar.size(), std::vector<int>(s.skeleton.size(), -1));
    for (int i = 0; i < ar.size(); ++i) {
      if (ar.state(i).owner != p) continue;
      for (int m = 0; m < s.skeleton.size(); ++m)
        view.choice[i][m] = ar.action_index(i, s.at(ar.state(i).name, s.skeleton.state_name(m)));
    }
  }
  return view;
}

}  // namespace

InducedChain induce_chain(const InitializedArena& a, const StrategyRef& sigma1,
                          const StrategyRef& sigma2) {
  MachineView v1 = resolve(a, Player::P1, sigma1);
  MachineView v2 = resolve(a, Player::P2, sigma2);
  const Arena& ar = a.arena();

  struct Key {
    int s, m1, m2;
    auto operator<=>(const Key&) const = default;
  };
  std::map<Key, int> index;
  std::vector<Key> nodes;
  std::deque<int> queue;
  auto intern = [&](Key k) {
    auto [it, fresh] = index.emplace(k, (int)nodes.size());
    if (fresh) {
      nodes.push_back(k);
      queue.push_back(it->second);
    }
    return it->second;
  };

  InducedChain chain;
  for (int s : a.initial()) {
    int id = intern({s, v1.init, v2.init});
    chain.initial.push_back(id);
    chain.initial_node[ar.state(s).name] = id;
  }
  while (!queue.empty()) {
    int id = queue.front();
    queue.pop_front();
    Key k = nodes[id];
    const State& st = ar.state(k.s);
    int mem = st.owner == Player::P1 ? k.m1 : k.m2;
    int ai = (st.owner == Player::P1 ? v1 : v2).choice[k.s][mem];
    const Action& x = st.actions[ai];
    int m1 = v1.step(k.m1, x.color);
    int m2 = v2.step(k.m2, x.color);
    std::vector<InducedChain::Edge> edges;
    for (const auto& [to, p] : x.dist)
      edges.push_back({x.color, p, intern({to, m1, m2})});
    chain.out.resize(nodes.size());
    chain.out[id] = std::move(edges);
  }
  chain.out.resize(nodes.size());
  chain.node_names.reserve(nodes.size());
  for (const Key& k : nodes) {
    std::string name = ar.state(k.s).name;
    if (v1.skel) name += "|" + v1.skel->state_name(k.m1);
    if (v2.skel) name += "|" + v2.skel->state_name(k.m2);
    chain.node_names.push_back(name);
  }
  return chain;
}

std::vector<std::vector<int>> bsccs(const InducedChain& chain) {
  // Tarjan SCC, iterative.
  int n = (int)chain.out.size();
  std::vector<int> idx(n, -1), low(n, 0), comp(n, -1);
  std::vector<bool> on_stack(n, false);
  std::vector<int> stack;
  std::vector<std::vector<int>> sccs;
  int counter = 0;

  struct Frame {
    int node;
    size_t edge;
  };
  for (int root = 0; root < n; ++root) {
    if (idx[root] >= 0) continue;
    std::vector<Frame> call{{root, 0}};
    idx[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      Frame& f = call.back();
      if (f.edge < chain.out[f.node].size()) {
        int to = chain.out[f.node][f.edge++].to;
        if (idx[to] < 0) {
          idx[to] = low[to] = counter++;
          stack.push_back(to);
          on_stack[to] = true;
          call.push_back({to, 0});
        } else if (on_stack[to]) {
          low[f.node] = std::min(low[f.node], idx[to]);
        }
      } else {
        if (low[f.node] == idx[f.node]) {
          std::vector<int> scc;
          while (true) {
            int v = stack.back();
            stack.pop_back();
            on_stack[v] = false;
            comp[v] = (int)sccs.size();
            scc.push_back(v);
            if (v == f.node) break;
          }
          std::sort(scc.begin(), scc.end());
          sccs.push_back(std::move(scc));
        }
        int done = f.node;
        call.pop_back();
        if (!call.empty())
          low[call.back().node] = std::min(low[call.back().node], low[done]);
      }
    }
  }
  // Keep only components with no outgoing edges.
  std::vector<std::vector<int>> result;
  for (const auto& scc : sccs) {
    bool bottom = true;
    for (int v : scc)
      for (const auto& e : chain.out[v])
        if (comp[e.to] != comp[v]) bottom = false;
    if (bottom) result.push_back(scc);
  }
  return result;
}

namespace {

// Exact Gaussian elimination solving A X = B in place; A is n x n, B is
// n x m. Partial pivoting by numerator bit-length (performance heuristic).
void solve_linear(std::vector<std::vector<Rat>>& A, std::vector<std::vector<Rat>>& B) {
  int n = (int)A.size();
  int m = n == 0 ? 0 : (int)B[0].size();
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    size_t best_bits = 0;
    for (int row = col; row < n; ++row) {
      if (A[row][col] == 0) continue;
      size_t bits = mpz_sizeinbase(A[row][col].get_num().get_mpz_t(), 2) +
                    mpz_sizeinbase(A[row][col].get_den().get_mpz_t(), 2);
      if (pivot < 0 || bits < best_bits) {
        pivot = row;
        best_bits = bits;
      }
    }
    if (pivot < 0) throw Error("SingularSystem", "linear system is singular");
    std::swap(A[col], A[pivot]);
    std::swap(B[col], B[pivot]);
    Rat inv = 1 / A[col][col];
    for (int j = col; j < n; ++j) A[col][j] *= inv;
    for (int j = 0; j < m; ++j) B[col][j] *= inv;
    for (int row = 0; row < n; ++row) {
      if (row == col || A[row][col] == 0) continue;
      Rat factor = A[row][col];
      for (int j = col; j < n; ++j) A[row][j] -= factor * A[col][j];
      for (int j = 0; j < m; ++j) B[row][j] -= factor * B[col][j];
    }
  }
}

}  // namespace

std::vector<std::vector<Rat>> absorption_probabilities_all(
    const InducedChain& chain, const std::vector<std::vector<int>>& sccs) {
  int n = (int)chain.out.size();
  int nb = (int)sccs.size();
  std::vector<int> bscc_of(n, -1);
  for (int b = 0; b < nb; ++b)
    for (int v : sccs[b]) bscc_of[v] = b;

  std::vector<int> transient;
  std::vector<int> tindex(n, -1);
  for (int v = 0; v < n; ++v)
    if (bscc_of[v] < 0) {
      tindex[v] = (int)transient.size();
      transient.push_back(v);
    }

  int t = (int)transient.size();
  std::vector<std::vector<Rat>> A(t, std::vector<Rat>(t, Rat(0)));
  std::vector<std::vector<Rat>> B(t, std::vector<Rat>(nb, Rat(0)));
  for (int i = 0; i < t; ++i) {
    A[i][i] = 1;
    for (const auto& e : chain.out[transient[i]]) {
      if (bscc_of[e.to] >= 0)
        B[i][bscc_of[e.to]] += e.prob;
      else
        A[i][tindex[e.to]] -= e.prob;
    }
  }
  solve_linear(A, B);

  std::vector<std::vector<Rat>> result(n, std::vector<Rat>(nb, Rat(0)));
  for (int v = 0; v < n; ++v) {
    if (bscc_of[v] >= 0)
      result[v][bscc_of[v]] = 1;
    else
      result[v] = B[tindex[v]];
  }
  return result;
}

std::vector<Rat> absorption_probabilities(const InducedChain& chain,
                                          const std::vector<std::vector<int>>& sccs,
                                          int from) {
  return absorption_probabilities_all(chain, sccs)[from];
}

Value weak_parity_value(const InducedChain& chain, const ObjectiveContext& ctx, int from) {
  // Colors must be non-negative integers; collect them for the max-tracking
  // product.
  std::vector<Rat> colors;
  for (const auto& edges : chain.out)
    for (const auto& e : edges) {
      if (!rat_is_nonneg_integer(e.color))
        throw Error("NonIntegerColor", "weak parity needs non-negative integer colors");
      colors.push_back(e.color);
    }
  if (ctx.running_max) {
    if (!rat_is_nonneg_integer(*ctx.running_max))
      throw Error("NonIntegerColor", "weak parity context must be an integer color");
    colors.push_back(*ctx.running_max);
  }
  MemorySkeleton mm = m_max(colors.empty() ? std::vector<Rat>{Rat(0)} : colors);
  int seed = ctx.running_max ? mm.state_index(rat_to_string(*ctx.running_max))
                             : mm.state_index("0");

  // Product of the chain with the max tracker, reachable from (from, seed).
  std::map<std::pair<int, int>, int> index;
  std::vector<std::pair<int, int>> nodes;
  std::deque<int> queue;
  auto intern = [&](int v, int m) {
    auto [it, fresh] = index.emplace(std::make_pair(v, m), (int)nodes.size());
    if (fresh) {
      nodes.push_back({v, m});
      queue.push_back(it->second);
    }
    return it->second;
  };
  InducedChain prod;
  int start = intern(from, seed);
  prod.initial.push_back(start);
  while (!queue.empty()) {
    int id = queue.front();
    queue.pop_front();
    auto [v, m] = nodes[id];
    std::vector<InducedChain::Edge> edges;
    for (const auto& e : chain.out[v])
      edges.push_back({e.color, e.prob, intern(e.to, mm.step(m, e.color))});
    prod.out.resize(nodes.size());
    prod.out[id] = std::move(edges);
  }
  prod.out.resize(nodes.size());

  auto comps = bsccs(prod);
  std::vector<Rat> absorb = absorption_probabilities(prod, comps, start);
  Rat value = 0;
  for (int b = 0; b < (int)comps.size(); ++b) {
    // The memory component is constant on a BSCC and dominates its colors.
    int mem = nodes[comps[b][0]].second;
    Rat mem_color = rat_from_string(mm.state_name(mem));
    for (int v : comps[b]) {
      if (nodes[v].second != mem)
        throw Error("Internal", "BSCC with non-constant max-memory component");
      for (const auto& e : prod.out[v])
        if (e.color > mem_color)
          throw Error("Internal", "BSCC color exceeds its max-memory component");
    }
    bool even = mpz_even_p(mem_color.get_num().get_mpz_t()) != 0;
    if (even) value += absorb[b];
  }
  return Value{ObjectiveFamily::WeakParity, value};
}

Value reachability_value(const InducedChain& chain, const ObjectiveContext& ctx,
                         const Rat& target, int from) {
  if (ctx.seen) return Value{ObjectiveFamily::ReachColor, Rat(1)};
  // Redirect target-colored edges into a fresh absorbing WIN node; the value
  // is the absorption mass of that node's component.
  InducedChain t = chain;
  int win = (int)t.out.size();
  bool any = false;
  for (auto& edges : t.out)
    for (auto& e : edges)
      if (e.color == target) {
        e.to = win;
        any = true;
      }
  if (!any) return Value{ObjectiveFamily::ReachColor, Rat(0)};
  t.out.push_back({InducedChain::Edge{Rat(0), Rat(1), win}});
  auto comps = bsccs(t);
  std::vector<Rat> absorb = absorption_probabilities(t, comps, from);
  for (int b = 0; b < (int)comps.size(); ++b)
    if (comps[b].size() == 1 && comps[b][0] == win)
      return Value{ObjectiveFamily::ReachColor, absorb[b]};
  throw Error("Internal", "WIN node did not form a component");
}

Value disc_expectation_value(const InducedChain& chain, const ObjectiveContext& ctx,
                             const Rat& lambda, int from) {
  int n = (int)chain.out.size();
  std::vector<std::vector<Rat>> A(n, std::vector<Rat>(n, Rat(0)));
  std::vector<std::vector<Rat>> B(n, std::vector<Rat>(1, Rat(0)));
  for (int v = 0; v < n; ++v) {
    A[v][v] = 1;
    for (const auto& e : chain.out[v]) {
      A[v][e.to] -= lambda * e.prob;
      B[v][0] += e.prob * e.color;
    }
  }
  solve_linear(A, B);
  return Value{ObjectiveFamily::DiscExpect, ctx.offset + ctx.scale * B[from][0]};
}

Value disc_threshold_value(const InducedChain& chain, const ObjectiveContext& ctx,
                           const Rat& lambda, const Rat& theta, int from) {
  auto comps = bsccs(chain);
  std::vector<bool> in_bscc(chain.out.size(), false);
  for (const auto& scc : comps)
    for (int v : scc) in_bscc[v] = true;
  for (const auto& scc : comps)
    for (int v : scc)
      for (const auto& e : chain.out[v])
        if (e.color != 0)
          throw Error("UnsupportedChainShape",
                      "BSCC carries a non-zero color; threshold evaluation supports "
                      "only zero-colored bottom components");
  // Transient part must be acyclic.
  int n = (int)chain.out.size();
  std::vector<int> mark(n, 0);  // 0 unvisited, 1 on stack, 2 done
  std::function<void(int)> dfs = [&](int v) {
    mark[v] = 1;
    for (const auto& e : chain.out[v]) {
      if (in_bscc[e.to]) continue;
      if (mark[e.to] == 1)
        throw Error("UnsupportedChainShape",
                    "transient cycle; threshold evaluation supports only acyclic "
                    "transient parts");
      if (mark[e.to] == 0) dfs(e.to);
    }
    mark[v] = 2;
  };
  for (int v = 0; v < n; ++v)
    if (!in_bscc[v] && mark[v] == 0) dfs(v);

  // Enumerate transient paths; a path's suffix contributes nothing once it
  // enters a bottom component.
  Rat total = 0;
  std::function<void(int, Rat, Rat, Rat)> walk = [&](int v, Rat prob, Rat acc, Rat scale) {
    if (in_bscc[v]) {
      if (acc >= theta) total += prob;
      return;
    }
    for (const auto& e : chain.out[v])
      walk(e.to, prob * e.prob, acc + scale * e.color, scale * lambda);
  };
  walk(from, Rat(1), ctx.offset, ctx.scale);
  return Value{ObjectiveFamily::DiscThreshold, total};
}

Value value_from(const InducedChain& chain, const ObjectiveSpec& spec,
                 const ObjectiveContext& ctx, int from) {
  switch (spec.family) {
    case ObjectiveFamily::WeakParity: return weak_parity_value(chain, ctx, from);
    case ObjectiveFamily::ReachColor:
      return reachability_value(chain, ctx, spec.target, from);
    case ObjectiveFamily::DiscExpect:
      return disc_expectation_value(chain, ctx, spec.lambda, from);
    case ObjectiveFamily::DiscThreshold:
      return disc_threshold_value(chain, ctx, spec.lambda, spec.threshold, from);
  }
  throw Error("Internal", "unknown objective family");
}

std::map<std::string, Value> evaluate_per_initial(const InitializedArena& a,
                                                  const StrategyRef& sigma1,
                                                  const StrategyRef& sigma2,
                                                  const ObjectiveSpec& spec,
                                                  const ObjectiveContext& ctx) {
  InducedChain chain = induce_chain(a, sigma1, sigma2);
  std::map<std::string, Value> out;
  for (const auto& [name, node] : chain.initial_node)
    out.emplace(name, value_from(chain, spec, ctx, node));
  return out;
}

Value evaluate(const InitializedArena& a, const StrategyRef& sigma1,
               const StrategyRef& sigma2, const ObjectiveSpec& spec,
               const ObjectiveContext& ctx, Player orientation) {
  auto values = evaluate_per_initial(a, sigma1, sigma2, spec, ctx);
  std::optional<Value> worst;
  for (const auto& [name, v] : values) {
    if (!worst) {
      worst = v;
      continue;
    }
    int c = compare(v, *worst);
    if ((orientation == Player::P1 && c < 0) || (orientation == Player::P2 && c > 0))
      worst = v;
  }
  return *worst;
}

}  // namespace aifm
