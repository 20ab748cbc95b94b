#include "aifm/skeleton.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

#include "aifm/error.hpp"

namespace aifm {

namespace {

std::vector<Rat> normalize_alphabet(std::vector<Rat> alphabet) {
  std::sort(alphabet.begin(), alphabet.end());
  alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());
  if (alphabet.empty()) throw Error("EmptyAlphabet", "skeleton alphabet is empty");
  return alphabet;
}

}  // namespace

MemorySkeleton::MemorySkeleton(std::vector<Rat> alphabet,
                               std::vector<std::string> state_names, int initial,
                               std::vector<std::vector<int>> update)
    : alphabet_(normalize_alphabet(std::move(alphabet))) {
  if (state_names.empty()) throw Error("EmptySkeleton", "skeleton needs memory states");
  if (update.size() != state_names.size())
    throw Error("PartialUpdate", "update table must cover every memory state");
  for (const auto& row : update)
    if (row.size() != alphabet_.size())
      throw Error("PartialUpdate", "update table must cover every alphabet color");

  // Keep only the part reachable from the initial state.
  int n = (int)state_names.size();
  std::vector<bool> seen(n, false);
  std::deque<int> queue{initial};
  seen[initial] = true;
  while (!queue.empty()) {
    int m = queue.front();
    queue.pop_front();
    for (int to : update[m])
      if (!seen[to]) {
        seen[to] = true;
        queue.push_back(to);
      }
  }
  std::vector<int> remap(n, -1);
  for (int m = 0; m < n; ++m)
    if (seen[m]) {
      remap[m] = (int)names_.size();
      names_.push_back(state_names[m]);
    }
  for (int m = 0; m < n; ++m) {
    if (!seen[m]) continue;
    std::vector<int> row;
    for (int to : update[m]) row.push_back(remap[to]);
    update_.push_back(std::move(row));
  }
  initial_ = remap[initial];

  std::set<std::string> unique(names_.begin(), names_.end());
  if (unique.size() != names_.size())
    throw Error("DuplicateMemoryState", "memory state names must be unique");
}

int MemorySkeleton::state_index(const std::string& name) const {
  for (int m = 0; m < size(); ++m)
    if (names_[m] == name) return m;
  throw Error("UnknownMemoryState", "no memory state named '" + name + "'");
}

int MemorySkeleton::color_index(const Rat& c) const {
  auto it = std::lower_bound(alphabet_.begin(), alphabet_.end(), c);
  if (it == alphabet_.end() || *it != c)
    throw Error("ColorNotInAlphabet", "color " + rat_to_string(c) + " not in alphabet");
  return (int)(it - alphabet_.begin());
}

bool MemorySkeleton::has_color(const Rat& c) const {
  return std::binary_search(alphabet_.begin(), alphabet_.end(), c);
}

MemorySkeleton trivial_skeleton(const std::vector<Rat>& alphabet) {
  std::vector<Rat> al = alphabet;
  std::sort(al.begin(), al.end());
  al.erase(std::unique(al.begin(), al.end()), al.end());
  return MemorySkeleton(al, {"m"}, 0, {std::vector<int>(al.size(), 0)});
}

MemorySkeleton m_max(const std::vector<Rat>& colors) {
  for (const Rat& c : colors)
    if (!rat_is_nonneg_integer(c))
      throw Error("NonIntegerColor",
                  "m_max needs non-negative integer colors, got " + rat_to_string(c));
  std::vector<Rat> states_r = colors;
  states_r.push_back(Rat(0));
  std::sort(states_r.begin(), states_r.end());
  states_r.erase(std::unique(states_r.begin(), states_r.end()), states_r.end());

  std::vector<Rat> alphabet = colors;
  std::sort(alphabet.begin(), alphabet.end());
  alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());

  std::vector<std::string> names;
  for (const Rat& s : states_r) names.push_back(rat_to_string(s));
  std::vector<std::vector<int>> update;
  for (const Rat& s : states_r) {
    std::vector<int> row;
    for (const Rat& c : alphabet) {
      Rat next = std::max(s, c);
      row.push_back((int)(std::lower_bound(states_r.begin(), states_r.end(), next) -
                          states_r.begin()));
    }
    update.push_back(std::move(row));
  }
  return MemorySkeleton(alphabet, names, 0, update);
}

MemorySkeleton skeleton_product(const MemorySkeleton& k1, const MemorySkeleton& k2) {
  if (k1.alphabet() != k2.alphabet())
    throw Error("AlphabetMismatch", "skeleton product needs equal alphabets");
  const auto& al = k1.alphabet();

  std::map<std::pair<int, int>, int> index;
  std::vector<std::pair<int, int>> pairs;
  std::deque<std::pair<int, int>> queue;
  auto intern = [&](int m1, int m2) {
    auto [it, fresh] = index.emplace(std::make_pair(m1, m2), (int)pairs.size());
    if (fresh) {
      pairs.push_back({m1, m2});
      queue.push_back({m1, m2});
    }
    return it->second;
  };
  intern(k1.initial(), k2.initial());
  std::vector<std::vector<int>> update;
  while (!queue.empty()) {
    auto [m1, m2] = queue.front();
    queue.pop_front();
    std::vector<int> row;
    for (int ci = 0; ci < (int)al.size(); ++ci)
      row.push_back(intern(k1.step_by_index(m1, ci), k2.step_by_index(m2, ci)));
    update.push_back(std::move(row));
  }
  std::vector<std::string> names;
  for (auto [m1, m2] : pairs)
    names.push_back("(" + k1.state_name(m1) + "," + k2.state_name(m2) + ")");
  return MemorySkeleton(al, names, 0, update);
}

MemorySkeleton extend_alphabet(const MemorySkeleton& k, const std::vector<Rat>& extra) {
  std::vector<Rat> alphabet = k.alphabet();
  for (const Rat& c : extra) alphabet.push_back(c);
  std::sort(alphabet.begin(), alphabet.end());
  alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());
  std::vector<std::vector<int>> update;
  for (int m = 0; m < k.size(); ++m) {
    std::vector<int> row;
    for (const Rat& c : alphabet) row.push_back(k.has_color(c) ? k.step(m, c) : m);
    update.push_back(std::move(row));
  }
  return MemorySkeleton(alphabet, k.state_names(), k.initial(), update);
}

int run(const MemorySkeleton& k, const std::vector<Rat>& word) {
  return run_from(k, k.initial(), word);
}

int run_from(const MemorySkeleton& k, int from, const std::vector<Rat>& word) {
  int m = from;
  for (const Rat& c : word) m = k.step(m, c);
  return m;
}

std::optional<std::vector<Rat>> representative_word(const MemorySkeleton& k, int from,
                                                    int to) {
  if (from == to) return std::vector<Rat>{};
  std::vector<int> parent(k.size(), -1), via(k.size(), -1);
  std::vector<bool> seen(k.size(), false);
  std::deque<int> queue{from};
  seen[from] = true;
  while (!queue.empty()) {
    int m = queue.front();
    queue.pop_front();
    for (int ci = 0; ci < (int)k.alphabet().size(); ++ci) {
      int next = k.step_by_index(m, ci);
      if (seen[next]) continue;
      seen[next] = true;
      parent[next] = m;
      via[next] = ci;
      if (next == to) {
        std::vector<Rat> word;
        for (int cur = to; cur != from; cur = parent[cur])
          word.push_back(k.alphabet()[via[cur]]);
        std::reverse(word.begin(), word.end());
        return word;
      }
      queue.push_back(next);
    }
  }
  return std::nullopt;
}

bool cycle_class_check(const InitializedArena& a, const std::string& s,
                       const MemorySkeleton& k, int m) {
  int si = a.arena().require_index(s);
  std::set<std::pair<int, int>> seen;
  std::deque<std::pair<int, int>> queue;
  seen.insert({si, m});
  queue.push_back({si, m});
  while (!queue.empty()) {
    auto [st, mem] = queue.front();
    queue.pop_front();
    if (st == si && mem != m) return false;
    for (const Action& x : a.arena().state(st).actions) {
      int next_mem = k.step(mem, x.color);
      for (const auto& [to, p] : x.dist)
        if (seen.insert({to, next_mem}).second) queue.push_back({to, next_mem});
    }
  }
  return true;
}

std::string format_word(const std::vector<Rat>& word) {
  std::ostringstream out;
  for (size_t i = 0; i < word.size(); ++i) {
    if (i) out << ' ';
    out << rat_to_string(word[i]);
  }
  return out.str();
}

std::vector<Rat> parse_word(const std::string& text) {
  std::istringstream in(text);
  std::vector<Rat> word;
  std::string tok;
  while (in >> tok) word.push_back(rat_from_string(tok));
  return word;
}

}  // namespace aifm
