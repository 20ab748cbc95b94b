#pragma once

#include <optional>
#include <string>
#include <vector>

#include "aifm/arena.hpp"
#include "aifm/rational.hpp"

namespace aifm {

// Complete deterministic automaton over a finite color alphabet. Only the
// part reachable from the initial state is kept. This is the finite
// restriction of the paper-level structure to a declared alphabet, which
// loses nothing on finite arenas.
class MemorySkeleton {
public:
  MemorySkeleton() = default;
  // update[state][color index] = successor state index; must be total.
  MemorySkeleton(std::vector<Rat> alphabet, std::vector<std::string> state_names,
                 int initial, std::vector<std::vector<int>> update);

  int size() const { return (int)names_.size(); }
  int initial() const { return initial_; }
  const std::vector<std::string>& state_names() const { return names_; }
  const std::string& state_name(int m) const { return names_[m]; }
  int state_index(const std::string& name) const;  // throws UnknownMemoryState
  const std::vector<Rat>& alphabet() const { return alphabet_; }

  int color_index(const Rat& c) const;  // throws ColorNotInAlphabet
  bool has_color(const Rat& c) const;
  int step(int m, const Rat& c) const { return update_[m][color_index(c)]; }
  int step_by_index(int m, int ci) const { return update_[m][ci]; }

private:
  std::vector<Rat> alphabet_;  // sorted, unique
  std::vector<std::string> names_;
  int initial_ = 0;
  std::vector<std::vector<int>> update_;
};

// Single state, self-loop on every color.
MemorySkeleton trivial_skeleton(const std::vector<Rat>& alphabet);

// States {0} U colors, initial 0, update (m, c) -> max(m, c). Colors must be
// non-negative integers.
MemorySkeleton m_max(const std::vector<Rat>& colors);

// Componentwise product, restricted to its reachable part. State names are
// "(n1,n2)". Throws AlphabetMismatch.
MemorySkeleton skeleton_product(const MemorySkeleton& k1, const MemorySkeleton& k2);

// Totalizes the skeleton over additional colors, which leave every memory
// state unchanged. Realizes the convention that a skeleton is defined over
// all colors and only its restriction to a finite alphabet is materialized.
MemorySkeleton extend_alphabet(const MemorySkeleton& k, const std::vector<Rat>& extra);

// Fold of the update function from `from` (default: initial state).
int run(const MemorySkeleton& k, const std::vector<Rat>& word);
int run_from(const MemorySkeleton& k, int from, const std::vector<Rat>& word);

// Shortest word w with update*(from, w) = to; ties broken by alphabet order.
std::optional<std::vector<Rat>> representative_word(const MemorySkeleton& k,
                                                    int from, int to);

// True iff in the product of `a` with `k` seeded at memory `m` from state
// `s`, every reachable pair whose arena component is s has memory m.
bool cycle_class_check(const InitializedArena& a, const std::string& s,
                       const MemorySkeleton& k, int m);

std::string format_word(const std::vector<Rat>& word);
std::vector<Rat> parse_word(const std::string& text);  // whitespace-separated colors

}  // namespace aifm
