#include "aifm/characterize.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "aifm/chain.hpp"
#include "aifm/construct.hpp"
#include "aifm/error.hpp"

namespace aifm {

WitnessFamily make_witness_family(const MemorySkeleton& k, const std::string& mem_state,
                                  std::vector<std::vector<Rat>> words,
                                  std::string provenance) {
  int target = k.state_index(mem_state);
  for (const auto& w : words)
    if (run(k, w) != target)
      throw Error("BadWitnessWord", "word [" + format_word(w) + "] does not reach " +
                                        mem_state + " from the initial memory state");
  return WitnessFamily{mem_state, std::move(words), std::move(provenance)};
}

namespace {

// Best value over strategies of the one-player arena under the shifted
// preference: memoryless oracle on the product with the evaluation skeleton.
Value best_value(const InitializedArena& a, const ObjectiveSpec& spec,
                 const ObjectiveContext& ctx, const MemorySkeleton& eval_skeleton,
                 const SolveOptions& opts) {
  ProductArena prod = product_arena(a, eval_skeleton);
  return enumerate_memoryless_optimal(prod.arena, spec, ctx, opts).best;
}

}  // namespace

CharacterizeVerdict check_monotony(const ObjectiveSpec& spec, const MemorySkeleton& k,
                                   const std::string& m, const InitializedArena& a1,
                                   const InitializedArena& a2, const WitnessFamily& W,
                                   const MemorySkeleton& eval_skeleton,
                                   const SolveOptions& opts) {
  if (W.mem_state != m)
    throw Error("BadWitnessWord", "witness family targets memory state " + W.mem_state +
                                      ", check asked about " + m);
  (void)k.state_index(m);

  CharacterizeVerdict verdict;
  std::vector<Value> best1, best2;
  for (const auto& w : W.words) {
    ObjectiveContext ctx = shift_context(spec, initial_context(spec), w);
    best1.push_back(best_value(a1, spec, ctx, eval_skeleton, opts));
    best2.push_back(best_value(a2, spec, ctx, eval_skeleton, opts));
    verdict.values.push_back({"a1 after [" + format_word(w) + "]", best1.back()});
    verdict.values.push_back({"a2 after [" + format_word(w) + "]", best2.back()});
  }
  // Holds iff one side is at least as good as the other after every word.
  bool one_ok = true, two_ok = true;  // i = 1: best2 <= best1 everywhere, etc.
  for (size_t i = 0; i < W.words.size(); ++i) {
    if (compare(best2[i], best1[i]) > 0) one_ok = false;
    if (compare(best1[i], best2[i]) > 0) two_ok = false;
  }
  if (one_ok || two_ok) return verdict;

  verdict.holds = false;
  // Report a word pair that refutes both choices of i.
  for (size_t i = 0; i < W.words.size(); ++i)
    if (compare(best1[i], best2[i]) > 0)
      for (size_t j = 0; j < W.words.size(); ++j)
        if (compare(best2[j], best1[j]) > 0) {
          verdict.word_a = W.words[i];
          verdict.word_b = W.words[j];
          std::ostringstream detail;
          detail << "a1 better after [" << format_word(W.words[i]) << "] ("
                 << rat_to_string(best1[i].v) << " vs " << rat_to_string(best2[i].v)
                 << "), a2 better after [" << format_word(W.words[j]) << "] ("
                 << rat_to_string(best2[j].v) << " vs " << rat_to_string(best1[j].v)
                 << ")";
          verdict.detail = detail.str();
          return verdict;
        }
  verdict.detail = "best values incomparable on the witness family";
  return verdict;
}

CharacterizeVerdict check_selectivity(const ObjectiveSpec& spec, const MemorySkeleton& k,
                                      const std::string& m, const InitializedArena& a1,
                                      const InitializedArena& a2, const WitnessFamily& W,
                                      const MemorySkeleton& eval_skeleton,
                                      const SolveOptions& opts) {
  if (W.mem_state != m)
    throw Error("BadWitnessWord", "witness family targets memory state " + W.mem_state +
                                      ", check asked about " + m);
  int mi = k.state_index(m);
  auto check_cycles = [&](const InitializedArena& a, const char* which) {
    if (a.initial().size() != 1)
      throw Error("BadInput", std::string(which) + ": selectivity needs single-initial arenas");
    const std::string s = a.arena().state(a.initial().front()).name;
    if (!cycle_class_check(a, s, k, mi))
      throw Error("CyclePreconditionViolated",
                  std::string(which) + ": a cycle on " + s +
                      " leaves memory state " + m);
  };
  check_cycles(a1, "a1");
  check_cycles(a2, "a2");

  const std::string s1 = a1.arena().state(a1.initial().front()).name;
  const std::string s2 = a2.arena().state(a2.initial().front()).name;
  MergeResult merged = merge(a1, s1, a2, s2);

  CharacterizeVerdict verdict;
  for (const auto& w : W.words) {
    ObjectiveContext ctx = shift_context(spec, initial_context(spec), w);
    Value vm = best_value(merged.merged, spec, ctx, eval_skeleton, opts);
    Value v1 = best_value(a1, spec, ctx, eval_skeleton, opts);
    Value v2 = best_value(a2, spec, ctx, eval_skeleton, opts);
    Value vbranch = compare(v1, v2) >= 0 ? v1 : v2;
    verdict.values.push_back({"merged after [" + format_word(w) + "]", vm});
    verdict.values.push_back({"best branch after [" + format_word(w) + "]", vbranch});
    if (compare(vm, vbranch) > 0) {
      verdict.holds = false;
      verdict.word_a = w;
      verdict.detail = "merged arena beats both branches after [" + format_word(w) +
                       "]: " + rat_to_string(vm.v) + " > " + rat_to_string(vbranch.v);
      return verdict;
    }
  }
  return verdict;
}

DiscCounterexample counterexample_discounted(const MemorySkeleton& k, const Rat& lambda,
                                             const Rat& theta, const SolveOptions& opts) {
  if (!(lambda > 0 && lambda < 1))
    throw Error("BadDiscountFactor", "lambda must satisfy 0 < lambda < 1");
  if (!k.has_color(Rat(1)))
    throw Error("ColorNotInAlphabet", "skeleton alphabet must contain color 1");

  // Minimal n < m with run(1^n) = run(1^m); exists by pigeonhole.
  DiscCounterexample out;
  {
    std::vector<int> seen_at(k.size(), -1);
    int mem = k.initial();
    int steps = 0;
    while (seen_at[mem] < 0) {
      seen_at[mem] = steps;
      mem = k.step(mem, Rat(1));
      ++steps;
    }
    out.n = seen_at[mem];
    out.m = steps;
  }
  // In the per-action-color encoding a path to the choice state reads at
  // least one color, so a colliding pair with n = 0 is realized one step
  // later; run(1^(n+1)) = run(1^(m+1)) follows by determinism.
  out.encoded_n = out.n == 0 ? out.n + 1 : out.n;
  out.encoded_m = out.n == 0 ? out.m + 1 : out.m;
  const long N = out.encoded_n, M = out.encoded_m;

  Rat geom = 0;  // sum_{i=0}^{M-1} lambda^i
  Rat pw = 1;
  for (long i = 0; i < M; ++i) {
    geom += pw;
    pw *= lambda;
  }
  // pw = lambda^M now.
  out.b_color = -geom / pw;                  // -lambda^-M * geom
  out.a_bad_color = -(1 + geom) / (pw * lambda);  // -lambda^-(M+1) * (1 + geom)

  // States: s1 -> (1-colored coin) -> two chains of N-1 and M-1 further 1s
  // -> s2 -> {a: 0 then coin into 0 / a_bad_color; b: b_color} -> sink.
  std::vector<State> states;
  auto add = [&](State s) {
    states.push_back(std::move(s));
    return (int)states.size() - 1;
  };
  State sink{"sink", Player::P1, {Action{"loop", Rat(0), {}}}};
  int sink_i = add(sink);
  states[sink_i].actions[0].dist = {{sink_i, Rat(1)}};

  State good{"agood", Player::P1, {Action{"step", Rat(0), {{sink_i, Rat(1)}}}}};
  int good_i = add(good);
  State bad{"abad", Player::P1, {Action{"step", out.a_bad_color, {{sink_i, Rat(1)}}}}};
  int bad_i = add(bad);

  State s2{"s2", Player::P1, {}};
  s2.actions.push_back(Action{"a", Rat(0), {{good_i, Rat(1, 2)}, {bad_i, Rat(1, 2)}}});
  s2.actions.push_back(Action{"b", out.b_color, {{sink_i, Rat(1)}}});
  int s2_i = add(s2);

  // Chain of `count` further 1-colored steps ending at s2; returns its head.
  auto make_chain = [&](long count, const std::string& tag) {
    int next = s2_i;
    for (long i = count; i >= 1; --i) {
      State link{"w" + tag + std::to_string(i), Player::P1,
                 {Action{"step", Rat(1), {{next, Rat(1)}}}}};
      next = add(link);
    }
    return next;
  };
  int short_head = make_chain(N - 1, "n");
  int long_head = make_chain(M - 1, "m");

  State s1{"s1", Player::P1, {}};
  s1.actions.push_back(
      Action{"go", Rat(1), {{short_head, Rat(1, 2)}, {long_head, Rat(1, 2)}}});
  add(s1);

  out.arena = InitializedArena(Arena(std::move(states)), {"s1"});

  ObjectiveSpec spec = ObjectiveSpec::disc_threshold(lambda, theta);

  std::set<Rat> color_set;
  for (const State& s : out.arena.arena().states())
    for (const Action& x : s.actions) color_set.insert(x.color);
  std::vector<Rat> colors(color_set.begin(), color_set.end());

  // Best over branch-aware strategies: product with a skeleton counting the
  // 1s read so far (up to M), which separates the two branches at s2.
  {
    std::vector<std::string> names;
    for (long i = 0; i <= M; ++i) names.push_back("c" + std::to_string(i));
    std::vector<std::vector<int>> update;
    for (long i = 0; i <= M; ++i) {
      std::vector<int> row;
      for (const Rat& c : colors) row.push_back(c == 1 ? (int)std::min(i + 1, M) : (int)i);
      update.push_back(std::move(row));
    }
    MemorySkeleton counter(colors, names, 0, update);
    out.optimal = mdp_solve_with_memory(out.arena, counter, spec, opts).value;
  }
  // Best over strategies based on k; the skeleton is totalized over the
  // payload colors first (they leave the memory unchanged).
  out.mealy_best =
      mdp_solve_with_memory(out.arena, extend_alphabet(k, colors), spec, opts).value;

  std::ostringstream report;
  report << "colliding prefix lengths: n=" << out.n << ", m=" << out.m
         << " (encoded as " << out.encoded_n << " and " << out.encoded_m << " ones)\n"
         << "payload colors: b reads " << rat_to_string(out.b_color)
         << ", risky branch reads " << rat_to_string(out.a_bad_color) << "\n"
         << "branch-aware optimum: " << rat_to_string(out.optimal.v) << "\n"
         << "best with the given skeleton: " << rat_to_string(out.mealy_best.v) << "\n"
         << "gap: " << rat_to_string(out.optimal.v - out.mealy_best.v);
  out.report = report.str();
  return out;
}

Verdict mixing_useless_sample(const ObjectiveSpec& spec, int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto rand_int = [&](int lo, int hi) {
    return (int)(lo + (std::int64_t)(rng() % (std::uint64_t)(hi - lo + 1)));
  };
  auto rand_prob = [&](int den) { return make_rat(rand_int(0, den), den); };

  Verdict verdict;
  for (int trial = 0; trial < samples; ++trial) {
    int parts = rand_int(1, 3);
    // Random positive weights summing to 1.
    std::vector<Rat> weights(parts);
    int total = 0;
    std::vector<int> raw(parts);
    for (int& r : raw) {
      r = rand_int(1, 4);
      total += r;
    }
    for (int i = 0; i < parts; ++i) weights[i] = make_rat(raw[i], total);

    // Component values, plus an improved variant of one component.
    std::vector<Rat> values(parts);
    for (Rat& v : values)
      v = spec.family == ObjectiveFamily::DiscExpect ? Rat(rand_int(-3, 3))
                                                     : rand_prob(4);
    int improved = rand_int(0, parts - 1);
    Rat improved_value = spec.family == ObjectiveFamily::DiscExpect
                             ? Rat(values[improved] + rand_int(0, 2))
                             : std::min(Rat(1), Rat(values[improved] + rand_prob(4)));

    // Realize both combinations as branching chains and compare the exact
    // combined values. Layout: root reads 0 and branches with the sampled
    // weights into component coins, which resolve through a win or lose
    // 1-step gadget into a shared 0-loop sink.
    auto combined = [&](const std::vector<Rat>& vals) {
      Rat win_color, lose_color;
      switch (spec.family) {
        case ObjectiveFamily::WeakParity:
          win_color = 2;
          lose_color = 1;
          break;
        case ObjectiveFamily::ReachColor:
          win_color = spec.target;
          lose_color = spec.target == 0 ? Rat(1) : Rat(0);
          break;
        default:
          // Colors sit two steps below the root, so the path total is
          // lambda^2 times the gadget color.
          win_color = spec.threshold / (spec.lambda * spec.lambda);
          lose_color = win_color - 1;
          break;
      }
      std::vector<State> states;
      states.push_back(State{"end", Player::P1, {Action{"loop", Rat(0), {{0, Rat(1)}}}}});
      states.push_back(
          State{"winpre", Player::P1, {Action{"step", win_color, {{0, Rat(1)}}}}});
      states.push_back(
          State{"losepre", Player::P1, {Action{"step", lose_color, {{0, Rat(1)}}}}});
      const int win = 1, lose = 2;

      State root{"root", Player::P1, {Action{"go", Rat(0), {}}}};
      for (int i = 0; i < parts; ++i) {
        State comp{"c" + std::to_string(i), Player::P1, {}};
        if (spec.family == ObjectiveFamily::DiscExpect) {
          // Expectation components: the component's own color is its value.
          comp.actions.push_back(Action{"step", vals[i], {{0, Rat(1)}}});
        } else {
          Action flip{"flip", Rat(0), {}};
          if (vals[i] > 0) flip.dist.push_back({win, vals[i]});
          if (vals[i] < 1) flip.dist.push_back({lose, 1 - vals[i]});
          comp.actions.push_back(std::move(flip));
        }
        states.push_back(std::move(comp));
        root.actions[0].dist.push_back({(int)states.size() - 1, weights[i]});
      }
      states.push_back(std::move(root));
      InitializedArena arena(Arena(std::move(states)), {"root"});
      PureMemorylessStrategy s1{Player::P1, {}}, s2{Player::P2, {}};
      for (const State& st : arena.arena().states())
        s1.choice[st.name] = st.actions.front().name;
      return evaluate(arena, s1, s2, spec, initial_context(spec)).v;
    };

    Rat before = combined(values);
    std::vector<Rat> improved_values = values;
    improved_values[improved] = improved_value;
    Rat after = combined(improved_values);
    if (after < before) {
      verdict.holds = false;
      verdict.at_state = "trial " + std::to_string(trial);
      verdict.value_before = Value{spec.family, before};
      verdict.value_after = Value{spec.family, after};
      verdict.context_note = "improving a component decreased the combination";
      return verdict;
    }
  }
  verdict.context_note = std::to_string(samples) + " sampled convex combinations";
  return verdict;
}

}  // namespace aifm
