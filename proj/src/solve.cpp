#include "aifm/solve.hpp"

#include <omp.h>

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "aifm/error.hpp"

namespace aifm {

namespace {

// ---------------------------------------------------------------------------
// Strategy-space enumeration
// ---------------------------------------------------------------------------

// Mixed-radix description of one player's pure memoryless strategies. Digits
// are ordered by state name so that enumeration order is the lexicographic
// (state name, declared action order) order used for tie-breaking.
struct EnumSpace {
  std::vector<int> choice_states;  // arena indices of states with >= 2 actions
  std::vector<int> arity;
  std::int64_t total = 1;
};

EnumSpace enum_space(const Arena& a, Player p, std::int64_t cap) {
  EnumSpace space;
  std::vector<std::pair<std::string, int>> named;
  for (int s = 0; s < a.size(); ++s)
    if (a.state(s).owner == p && a.state(s).actions.size() >= 2)
      named.push_back({a.state(s).name, s});
  std::sort(named.begin(), named.end());
  for (const auto& [name, s] : named) {
    space.choice_states.push_back(s);
    space.arity.push_back((int)a.state(s).actions.size());
    if (space.total > cap / (std::int64_t)space.arity.back())
      throw CapExceeded("EnumerationCapExceeded",
                        "strategy space exceeds cap " + std::to_string(cap));
    space.total *= space.arity.back();
  }
  if (space.total > cap)
    throw CapExceeded("EnumerationCapExceeded",
                      "strategy space exceeds cap " + std::to_string(cap));
  return space;
}

// Writes the digits of `index` into act (full per-state action table).
void decode(const EnumSpace& space, std::int64_t index, std::vector<int>& act) {
  for (int i = (int)space.choice_states.size() - 1; i >= 0; --i) {
    act[space.choice_states[i]] = (int)(index % space.arity[i]);
    index /= space.arity[i];
  }
}

// Base action table: single-action states fixed, everything else 0.
std::vector<int> base_actions(const Arena& a) { return std::vector<int>(a.size(), 0); }

PureMemorylessStrategy to_strategy(const Arena& a, Player p, const std::vector<int>& act) {
  PureMemorylessStrategy s;
  s.player = p;
  for (int i = 0; i < a.size(); ++i)
    if (a.state(i).owner == p) s.choice[a.state(i).name] = a.state(i).actions[act[i]].name;
  return s;
}

// Memoryless profile chain: nodes are exactly the arena states.
InducedChain chain_from_actions(const InitializedArena& a, const std::vector<int>& act) {
  InducedChain chain;
  const Arena& ar = a.arena();
  chain.out.resize(ar.size());
  for (int s = 0; s < ar.size(); ++s) {
    const Action& x = ar.state(s).actions[act[s]];
    for (const auto& [to, p] : x.dist) chain.out[s].push_back({x.color, p, to});
  }
  chain.node_names.reserve(ar.size());
  for (int s = 0; s < ar.size(); ++s) chain.node_names.push_back(ar.state(s).name);
  for (int s : a.initial()) {
    chain.initial.push_back(s);
    chain.initial_node[ar.state(s).name] = s;
  }
  return chain;
}

std::vector<Rat> per_initial_values(const InitializedArena& a, const std::vector<int>& act,
                                    const ObjectiveSpec& spec, const ObjectiveContext& ctx) {
  InducedChain chain = chain_from_actions(a, act);
  std::vector<Rat> out;
  out.reserve(a.initial().size());
  for (int s : a.initial()) out.push_back(value_from(chain, spec, ctx, s).v);
  return out;
}

Rat worst_initial(const std::vector<Rat>& values, Player orientation) {
  Rat worst = values.front();
  for (const Rat& v : values)
    if (orientation == Player::P1 ? v < worst : v > worst) worst = v;
  return worst;
}

// True when `cand` is at least as good as `best` at every position for `p`.
bool dominates(const std::vector<Rat>& cand, const std::vector<Rat>& best, Player p) {
  for (size_t i = 0; i < cand.size(); ++i)
    if (p == Player::P1 ? cand[i] < best[i] : cand[i] > best[i]) return false;
  return true;
}

void column_best(std::vector<Rat>& acc, const std::vector<Rat>& cand, Player p) {
  for (size_t i = 0; i < acc.size(); ++i)
    if (p == Player::P1 ? cand[i] > acc[i] : cand[i] < acc[i]) acc[i] = cand[i];
}

}  // namespace

Player one_player_owner(const InitializedArena& a) {
  bool p1 = false, p2 = false;
  for (const State& s : a.arena().states()) {
    if (s.actions.size() < 2) continue;
    (s.owner == Player::P1 ? p1 : p2) = true;
  }
  if (p1 && p2)
    throw Error("NotOnePlayer", "both players have choices; not a one-player arena");
  return p2 ? Player::P2 : Player::P1;
}

SolveReport enumerate_memoryless_optimal(const InitializedArena& a,
                                         const ObjectiveSpec& spec,
                                         const ObjectiveContext& ctx,
                                         const SolveOptions& opts) {
  Player owner = one_player_owner(a);
  EnumSpace space = enum_space(a.arena(), owner, opts.cap);
  const std::int64_t total = space.total;
  const int n_init = (int)a.initial().size();

  // Pass 1: per-initial column optima, worst-initial aggregate best, and
  // (optionally) the full per-strategy matrix.
  const bool store = total * n_init <= (std::int64_t)1 << 22;
  std::vector<std::vector<Rat>> matrix(store ? total : 0);

  std::vector<Rat> columns;           // per-initial best values
  Rat best_aggregate;                 // best worst-initial value
  std::int64_t best_index = -1;       // smallest index attaining best_aggregate
  std::vector<Rat> table(opts.keep_table ? total : 0);

  auto merge_candidate = [&](std::vector<Rat>& cols, Rat& agg, std::int64_t& idx,
                             const std::vector<Rat>& values, std::int64_t i) {
    if (cols.empty())
      cols = values;
    else
      column_best(cols, values, owner);
    Rat w = worst_initial(values, owner);
    if (idx < 0 || (owner == Player::P1 ? w > agg : w < agg)) {
      agg = w;
      idx = i;
    } else if (w == agg && i < idx) {
      idx = i;
    }
  };

  if (opts.parallel && total > 64) {
#pragma omp parallel
    {
      std::vector<Rat> local_cols;
      Rat local_agg;
      std::int64_t local_idx = -1;
      std::vector<int> act = base_actions(a.arena());

#pragma omp for schedule(dynamic, 16)
      for (std::int64_t i = 0; i < total; ++i) {
        decode(space, i, act);
        std::vector<Rat> values = per_initial_values(a, act, spec, ctx);
        if (store) matrix[i] = values;
        merge_candidate(local_cols, local_agg, local_idx, values, i);
      }

      // Ordered reduction: the global winner is determined by (value, then
      // smallest enumeration index), independent of thread count.
#pragma omp critical
      {
        if (local_idx >= 0) {
          if (columns.empty())
            columns = local_cols;
          else
            column_best(columns, local_cols, owner);
          if (best_index < 0 ||
              (owner == Player::P1 ? local_agg > best_aggregate
                                   : local_agg < best_aggregate) ||
              (local_agg == best_aggregate && local_idx < best_index)) {
            best_aggregate = local_agg;
            best_index = local_idx;
          }
        }
      }
    }
    if (opts.keep_table) {
      if (store) {
        for (std::int64_t i = 0; i < total; ++i)
          table[i] = worst_initial(matrix[i], owner);
      } else {
        std::vector<int> act = base_actions(a.arena());
        for (std::int64_t i = 0; i < total; ++i) {
          decode(space, i, act);
          table[i] = worst_initial(per_initial_values(a, act, spec, ctx), owner);
        }
      }
    }
  } else {
    std::vector<int> act = base_actions(a.arena());
    for (std::int64_t i = 0; i < total; ++i) {
      decode(space, i, act);
      std::vector<Rat> values = per_initial_values(a, act, spec, ctx);
      if (store) matrix[i] = values;
      if (opts.keep_table) table[i] = worst_initial(values, owner);
      merge_candidate(columns, best_aggregate, best_index, values, i);
    }
  }

  // Pass 2: prefer a witness that attains the per-initial optimum everywhere.
  std::int64_t dominator = -1;
  if (store) {
    for (std::int64_t i = 0; i < total && dominator < 0; ++i)
      if (dominates(matrix[i], columns, owner)) dominator = i;
  } else {
    std::vector<int> act = base_actions(a.arena());
    for (std::int64_t i = 0; i < total && dominator < 0; ++i) {
      decode(space, i, act);
      if (dominates(per_initial_values(a, act, spec, ctx), columns, owner)) dominator = i;
    }
  }

  SolveReport report;
  report.enumeration_size = total;
  report.uniformly_optimal = dominator >= 0;
  std::int64_t winner = dominator >= 0 ? dominator : best_index;
  std::vector<int> act = base_actions(a.arena());
  decode(space, winner, act);
  report.witness = to_strategy(a.arena(), owner, act);
  Rat value = store ? worst_initial(matrix[winner], owner)
                    : worst_initial(per_initial_values(a, act, spec, ctx), owner);
  report.best = Value{spec.family, value};
  if (opts.keep_table) {
    report.table.reserve(total);
    for (std::int64_t i = 0; i < total; ++i)
      report.table.push_back(Value{spec.family, table[i]});
  }
  return report;
}

MdpSolveResult mdp_solve_with_memory(const InitializedArena& a, const MemorySkeleton& k,
                                     const ObjectiveSpec& spec, const SolveOptions& opts) {
  ProductArena prod = product_arena(a, k);
  SolveReport report = enumerate_memoryless_optimal(prod.arena, spec,
                                                    initial_context(spec), opts);
  MdpSolveResult out;
  out.strategy = memoryless_to_mealy(a, prod, report.witness, k);
  out.value = report.best;
  return out;
}

// ---------------------------------------------------------------------------
// Equilibrium checks
// ---------------------------------------------------------------------------

namespace {

// Memoryless view of a (possibly Mealy) profile on the arena the check runs
// on: the arena itself for memoryless deviations, its product with the class
// skeleton for Mealy deviations.
struct CheckInstance {
  InitializedArena arena;
  PureMemorylessStrategy sigma1, sigma2;
};

PureMemorylessStrategy transfer_to_product(const ProductArena& prod, Player p,
                                           const StrategyRef& sigma,
                                           const MemorySkeleton& k) {
  PureMemorylessStrategy out;
  out.player = p;
  for (const auto& [pname, pair] : prod.map.forward) {
    const auto& [base, mem] = pair;
    int si = prod.arena.arena().require_index(pname);
    if (prod.arena.arena().state(si).owner != p) continue;
    if (std::holds_alternative<PureMemorylessStrategy>(sigma)) {
      out.choice[pname] = std::get<PureMemorylessStrategy>(sigma).at(base);
    } else {
      const auto& mealy = std::get<MealyStrategy>(sigma);
      if (mealy.skeleton.state_names() != k.state_names())
        throw Error("SkeletonMismatch",
                    "Mealy strategy must be based on the deviation-class skeleton");
      out.choice[pname] = mealy.at(base, mem);
    }
  }
  return out;
}

CheckInstance make_check_instance(const InitializedArena& a, const StrategyRef& sigma1,
                                  const StrategyRef& sigma2, const DeviationClass& cls) {
  CheckInstance inst;
  if (!cls.mealy) {
    inst.arena = a;
    auto need_memoryless = [](const StrategyRef& s, const char* who) {
      if (!std::holds_alternative<PureMemorylessStrategy>(s))
        throw Error("SkeletonMismatch",
                    std::string(who) +
                        ": memoryless deviation class needs a memoryless profile");
    };
    need_memoryless(sigma1, "sigma1");
    need_memoryless(sigma2, "sigma2");
    inst.sigma1 = std::get<PureMemorylessStrategy>(sigma1);
    inst.sigma2 = std::get<PureMemorylessStrategy>(sigma2);
  } else {
    ProductArena prod = product_arena(a, cls.skeleton);
    inst.sigma1 = transfer_to_product(prod, Player::P1, sigma1, cls.skeleton);
    inst.sigma2 = transfer_to_product(prod, Player::P2, sigma2, cls.skeleton);
    inst.arena = std::move(prod.arena);
  }
  return inst;
}

std::vector<int> actions_of(const Arena& a, const PureMemorylessStrategy& s1,
                            const PureMemorylessStrategy& s2) {
  std::vector<int> act(a.size(), 0);
  for (int i = 0; i < a.size(); ++i) {
    const State& st = a.state(i);
    const PureMemorylessStrategy& s = st.owner == Player::P1 ? s1 : s2;
    auto it = s.choice.find(st.name);
    if (it != s.choice.end()) {
      int ai = a.action_index(i, it->second);
      if (ai < 0)
        throw Error("UnknownAction", "strategy picks missing action at " + st.name);
      act[i] = ai;
    } else if (st.actions.size() > 1) {
      throw Error("PartialStrategy", "no choice at state '" + st.name + "'");
    }
  }
  return act;
}

}  // namespace

Verdict check_ne(const InitializedArena& a, const ObjectiveSpec& spec,
                 const StrategyRef& sigma1, const StrategyRef& sigma2,
                 const DeviationClass& cls, const ObjectiveContext& ctx,
                 const SolveOptions& opts) {
  CheckInstance inst = make_check_instance(a, sigma1, sigma2, cls);
  const Arena& ar = inst.arena.arena();
  std::vector<int> current = actions_of(ar, inst.sigma1, inst.sigma2);
  std::vector<Rat> current_values = per_initial_values(inst.arena, current, spec, ctx);

  Verdict verdict;
  for (Player p : {Player::P1, Player::P2}) {
    EnumSpace space = enum_space(ar, p, opts.cap);
    std::vector<int> act = current;
    for (std::int64_t i = 0; i < space.total; ++i) {
      decode(space, i, act);
      std::vector<Rat> values = per_initial_values(inst.arena, act, spec, ctx);
      for (size_t j = 0; j < values.size(); ++j) {
        bool better = p == Player::P1 ? values[j] > current_values[j]
                                      : values[j] < current_values[j];
        if (better) {
          verdict.holds = false;
          verdict.deviator = p;
          verdict.deviation = to_strategy(ar, p, act);
          verdict.at_state = ar.state(inst.arena.initial()[j]).name;
          verdict.value_before = Value{spec.family, current_values[j]};
          verdict.value_after = Value{spec.family, values[j]};
          return verdict;
        }
      }
    }
  }
  return verdict;
}

// ---------------------------------------------------------------------------
// Subgame perfection
// ---------------------------------------------------------------------------

namespace {

struct CtxLess {
  bool operator()(const ObjectiveContext& a, const ObjectiveContext& b) const {
    auto key = [](const ObjectiveContext& c) {
      return std::make_tuple(c.running_max.has_value(),
                             c.running_max.value_or(Rat(0)), c.seen, c.offset, c.scale);
    };
    return key(a) < key(b);
  }
};

struct SpPair {
  int state;
  ObjectiveContext ctx;
  std::vector<Rat> word;  // colors of a shortest history reaching the pair
};

// Reachable (state, context class) pairs of the arena, each with a shortest
// witnessing history's color word.
std::vector<SpPair> reachable_context_pairs(const InitializedArena& a,
                                            const ObjectiveSpec& spec) {
  std::map<std::pair<int, ObjectiveContext>, int,
           decltype([](const std::pair<int, ObjectiveContext>& x,
                       const std::pair<int, ObjectiveContext>& y) {
             if (x.first != y.first) return x.first < y.first;
             return CtxLess{}(x.second, y.second);
           })>
      index;
  std::vector<SpPair> pairs;
  std::deque<int> queue;
  auto intern = [&](int s, const ObjectiveContext& ctx, const std::vector<Rat>& word) {
    auto [it, fresh] = index.emplace(std::make_pair(s, ctx), (int)pairs.size());
    if (fresh) {
      pairs.push_back({s, ctx, word});
      queue.push_back(it->second);
    }
    return it->second;
  };
  ObjectiveContext init = initial_context(spec);
  for (int s : a.initial()) intern(s, init, {});
  while (!queue.empty()) {
    int id = queue.front();
    queue.pop_front();
    SpPair cur = pairs[id];  // copy: pairs may reallocate
    for (const Action& x : a.arena().state(cur.state).actions) {
      ObjectiveContext next = shift_context(spec, cur.ctx, {x.color});
      std::vector<Rat> word = cur.word;
      word.push_back(x.color);
      for (const auto& [to, p] : x.dist)
        if (p > 0) intern(to, next, word);
    }
  }
  return pairs;
}

std::vector<Rat> arena_colors(const Arena& a) {
  std::set<Rat> colors;
  for (const State& s : a.states())
    for (const Action& x : s.actions) colors.insert(x.color);
  return std::vector<Rat>(colors.begin(), colors.end());
}

std::string describe_ctx(const ObjectiveSpec& spec, const ObjectiveContext& ctx) {
  switch (spec.family) {
    case ObjectiveFamily::WeakParity:
      return ctx.running_max ? "max=" + rat_to_string(*ctx.running_max) : "max=none";
    case ObjectiveFamily::ReachColor: return ctx.seen ? "seen" : "not-seen";
    default:
      return "o=" + rat_to_string(ctx.offset) + ",scale=" + rat_to_string(ctx.scale);
  }
}

struct SpViolation {
  SpPair pair;
  Verdict verdict;  // the failed local NE check
};

std::optional<SpViolation> find_sp_violation(const InitializedArena& a,
                                             const ObjectiveSpec& spec,
                                             const PureMemorylessStrategy& sigma1,
                                             const PureMemorylessStrategy& sigma2,
                                             const SolveOptions& opts) {
  for (const SpPair& pair : reachable_context_pairs(a, spec)) {
    InitializedArena sub = reinitialize(a, {a.arena().state(pair.state).name});
    Verdict v = check_ne(sub, spec, sigma1, sigma2, DeviationClass::memoryless(),
                         pair.ctx, opts);
    if (!v.holds) return SpViolation{pair, std::move(v)};
  }
  return std::nullopt;
}

}  // namespace

Verdict check_sp(const InitializedArena& a, const MemorySkeleton& k,
                 const ObjectiveSpec& spec, const PureMemorylessStrategy& sigma1,
                 const PureMemorylessStrategy& sigma2, const SolveOptions& opts) {
  ContextClasses classes = context_classes(spec, arena_colors(a.arena()));
  if (classes.unbounded)
    throw Error("UnsupportedContextEnumeration",
                family_name(spec.family) + " has unboundedly many context classes");
  CoverResult cover = cover_witness(a, k);
  if (!cover.covered())
    throw Error("CoverabilityRequired",
                "arena is not covered by the skeleton (conflict at " +
                    cover.conflict->state + ")");

  auto violation = find_sp_violation(a, spec, sigma1, sigma2, opts);
  if (!violation) {
    Verdict ok;
    ok.context_note =
        "subgame perfection over history classes: shifted preferences depend on the "
        "prefix only through its context class for " +
        family_name(spec.family);
    return ok;
  }
  Verdict out = violation->verdict;
  out.at_state = a.arena().state(violation->pair.state).name;
  out.context_note = describe_ctx(spec, violation->pair.ctx) + ", word=[" +
                     format_word(violation->pair.word) + "]";
  return out;
}

RefineResult refine_to_sp(const InitializedArena& a, const MemorySkeleton& k,
                          const ObjectiveSpec& spec, const SolveOptions& opts) {
  ContextClasses classes = context_classes(spec, arena_colors(a.arena()));
  if (classes.unbounded)
    throw Error("UnsupportedContextEnumeration",
                family_name(spec.family) + " has unboundedly many context classes");
  CoverResult cover = cover_witness(a, k);
  if (!cover.covered())
    throw Error("CoverabilityRequired", "arena is not covered by the skeleton");

  Player owner = one_player_owner(a);
  // The strategy space of the original arena bounds the iteration count.
  std::int64_t bound = enum_space(a.arena(), owner, opts.cap).total;

  RefineResult result;
  InitializedArena extended = a;
  std::set<std::map<std::string, std::string>> seen_strategies;
  std::set<std::string> original_states;
  for (const State& s : a.arena().states()) original_states.insert(s.name);

  while (true) {
    SolveReport report = enumerate_memoryless_optimal(extended, spec,
                                                      initial_context(spec), opts);
    // Restrict to the original arena: chain states are single-action.
    PureMemorylessStrategy sigma;
    sigma.player = report.witness.player;
    for (const auto& [state, action] : report.witness.choice)
      if (original_states.count(state)) sigma.choice[state] = action;
    // Fill the opposite (trivial) player's strategy.
    PureMemorylessStrategy other;
    other.player = opponent(sigma.player);
    for (const State& s : a.arena().states())
      if (s.owner == other.player) other.choice[s.name] = s.actions.front().name;

    const PureMemorylessStrategy& s1 = sigma.player == Player::P1 ? sigma : other;
    const PureMemorylessStrategy& s2 = sigma.player == Player::P1 ? other : sigma;
    auto violation = find_sp_violation(a, spec, s1, s2, opts);
    if (!violation) {
      result.strategy = sigma;
      result.log.push_back("iteration " + std::to_string(result.iterations) +
                           ": strategy is subgame perfect");
      return result;
    }
    if (violation->pair.word.empty())
      throw Error("Internal",
                  "optimal strategy not optimal from an initial state; oracle "
                  "uniformity violated");
    if (!seen_strategies.insert(sigma.choice).second)
      throw Error("Internal", "refinement revisited a strategy");
    if (++result.iterations > bound)
      throw Error("Internal", "refinement exceeded the strategy-count bound");

    const std::string state_name = a.arena().state(violation->pair.state).name;
    result.log.push_back("iteration " + std::to_string(result.iterations) +
                         ": violation at (" + state_name + ", " +
                         describe_ctx(spec, violation->pair.ctx) + "), extending by [" +
                         format_word(violation->pair.word) + "]");
    extended = prefix_extend(extended, violation->pair.word, state_name).first;
  }
}

// ---------------------------------------------------------------------------
// Edge-induction NE synthesis
// ---------------------------------------------------------------------------

namespace {

std::string action_set_key(const Arena& a) {
  std::ostringstream out;
  for (const State& s : a.states()) {
    out << s.name << "{";
    for (const Action& x : s.actions) out << x.name << ",";
    out << "}";
  }
  return out.str();
}

struct Synthesizer {
  const ObjectiveSpec& spec;
  const SolveOptions& opts;
  int budget;
  std::vector<std::string>* trace;
  std::map<std::string, std::pair<PureMemorylessStrategy, PureMemorylessStrategy>> memo;

  PureMemorylessStrategy unique_strategy(const Arena& a, Player p) const {
    PureMemorylessStrategy s;
    s.player = p;
    for (const State& st : a.states())
      if (st.owner == p) s.choice[st.name] = st.actions.front().name;
    return s;
  }

  // One pass of the induction for `me`: returns my half of a pure memoryless
  // NE of `a`.
  PureMemorylessStrategy pass(const InitializedArena& a, Player me, int depth) {
    const Arena& ar = a.arena();
    // My choice states, lowest name first.
    std::vector<std::pair<std::string, int>> mine;
    bool opponent_has_choice = false;
    for (int s = 0; s < ar.size(); ++s) {
      if (ar.state(s).actions.size() < 2) continue;
      if (ar.state(s).owner == me)
        mine.push_back({ar.state(s).name, s});
      else
        opponent_has_choice = true;
    }
    if (mine.empty()) return unique_strategy(ar, me);
    if (!opponent_has_choice) {
      // One-player arena of mine: the memoryless oracle is the hypothesis.
      SolveReport report = enumerate_memoryless_optimal(a, spec, initial_context(spec),
                                                        opts);
      trace->push_back(indent(depth) + "oracle solve for P" +
                       std::to_string(player_index(me)));
      return report.witness;
    }
    std::sort(mine.begin(), mine.end());
    const std::string t = mine.front().first;
    const int ti = mine.front().second;
    trace->push_back(indent(depth) + "P" + std::to_string(player_index(me)) +
                     " pass splits on " + t);

    // NE of each action-fixed subarena, by induction.
    std::map<std::string, std::pair<PureMemorylessStrategy, PureMemorylessStrategy>> sub;
    for (const Action& x : ar.state(ti).actions)
      sub[x.name] = solve(subarena_fix_action(a, t, x.name), depth + 1);

    SplitResult sp = split(a, t);
    Player other = opponent(me);

    // The opponent's strategy on the split: on copy x, play its NE half from
    // the subarena where x was fixed at t.
    PureMemorylessStrategy other_split;
    other_split.player = other;
    for (const State& st : sp.arena.arena().states()) {
      if (st.owner != other) continue;
      const auto& [base, label] = sp.labeling.at(st.name);
      const auto& profile = sub.at(label);
      const PureMemorylessStrategy& half =
          other == Player::P1 ? profile.first : profile.second;
      other_split.choice[st.name] = half.at(base);
    }

    // Fix the opponent in the split and solve my one-player arena. Fixing
    // the opponent can make t unreachable (and pruned); any deterministic
    // choice at t is then sound, since t is never reached against this
    // opponent. The first action keeps runs reproducible.
    std::map<std::string, std::vector<std::string>> keep;
    for (const auto& [state, action] : other_split.choice) keep[state] = {action};
    InitializedArena fixed = subarena(sp.arena, keep);
    SolveReport report = enumerate_memoryless_optimal(fixed, spec, initial_context(spec),
                                                      opts);
    auto chosen = report.witness.choice.find(t);
    const std::string a_star = chosen != report.witness.choice.end()
                                   ? chosen->second
                                   : ar.state(ti).actions.front().name;
    trace->push_back(indent(depth) + "  best action at " + t + ": " + a_star);

    // Assemble my strategy on the split and project to the base.
    PureMemorylessStrategy my_split;
    my_split.player = me;
    my_split.choice[t] = a_star;
    for (const State& st : sp.arena.arena().states()) {
      if (st.owner != me || st.name == t) continue;
      const auto& [base, label] = sp.labeling.at(st.name);
      const auto& profile = sub.at(label);
      const PureMemorylessStrategy& half =
          me == Player::P1 ? profile.first : profile.second;
      my_split.choice[st.name] = half.at(base);
    }
    auto [p1, p2] = me == Player::P1
                        ? split_projection(a, sp, t, my_split, other_split, a_star)
                        : split_projection(a, sp, t, other_split, my_split, a_star);
    return me == Player::P1 ? p1 : p2;
  }

  std::pair<PureMemorylessStrategy, PureMemorylessStrategy> solve(
      const InitializedArena& a, int depth) {
    if (depth > budget)
      throw CapExceeded("RecursionBudgetExceeded",
                        "edge-induction recursion exceeded budget");
    std::string key = action_set_key(a.arena());
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    PureMemorylessStrategy s1 = pass(a, Player::P1, depth);
    PureMemorylessStrategy s2 = pass(a, Player::P2, depth);
    auto result = std::make_pair(std::move(s1), std::move(s2));
    memo.emplace(std::move(key), result);
    return result;
  }

  static std::string indent(int depth) { return std::string(2 * depth, ' '); }
};

}  // namespace

NeSynthesisResult synthesize_ne_edge_induction(const InitializedArena& a,
                                               const ObjectiveSpec& spec,
                                               const SolveOptions& opts,
                                               int recursion_budget) {
  NeSynthesisResult result;
  Synthesizer synth{spec, opts, recursion_budget, &result.trace, {}};
  auto [s1, s2] = synth.solve(a, 0);
  result.sigma1 = std::move(s1);
  result.sigma2 = std::move(s2);
  return result;
}

LiftResult lift_two_player(const InitializedArena& a, const MemorySkeleton& k1,
                           const MemorySkeleton& k2, const ObjectiveSpec& spec,
                           const SolveOptions& opts) {
  MemorySkeleton k = skeleton_product(k1, k2);
  ProductArena prod = product_arena(a, k);
  NeSynthesisResult ne = synthesize_ne_edge_induction(prod.arena, spec, opts);
  LiftResult out;
  out.trace = std::move(ne.trace);
  out.sigma1 = memoryless_to_mealy(a, prod, ne.sigma1, k);
  out.sigma2 = memoryless_to_mealy(a, prod, ne.sigma2, k);
  out.value = evaluate(prod.arena, ne.sigma1, ne.sigma2, spec, initial_context(spec));
  return out;
}

Verdict cross_mix_check(const InitializedArena& a, const ObjectiveSpec& spec,
                        const PureMemorylessStrategy& s1a, const PureMemorylessStrategy& s2a,
                        const PureMemorylessStrategy& s1b, const PureMemorylessStrategy& s2b,
                        const DeviationClass& cls, const SolveOptions& opts) {
  ObjectiveContext ctx = initial_context(spec);
  if (!check_ne(a, spec, s1a, s2a, cls, ctx, opts).holds)
    throw Error("InputNotNE", "first input profile is not an NE");
  if (!check_ne(a, spec, s1b, s2b, cls, ctx, opts).holds)
    throw Error("InputNotNE", "second input profile is not an NE");
  Verdict v = check_ne(a, spec, s1a, s2b, cls, ctx, opts);
  if (!v.holds) return v;
  return check_ne(a, spec, s1b, s2a, cls, ctx, opts);
}

}  // namespace aifm
