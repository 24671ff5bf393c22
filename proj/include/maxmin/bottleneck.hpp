#pragma once

// Monotone bottleneck subset framework.
//
// An instance is a universe of elements 0..n-1 with a quality q(x, S) for
// each surviving element x of the surviving set S. Instances keep their own
// removal state: `quality(x)` answers for the current surviving set and
// `remove(x)` shrinks it. Qualities must be monotone, i.e. removing other
// elements never raises the quality of a survivor. This is a contract of the
// instance; it is not checked here.

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "maxmin/errors.hpp"
#include "maxmin/quality.hpp"

namespace maxmin {

template <class I>
concept BottleneckInstance =
    std::copy_constructible<I> && requires(I& mut, const I& inst, int x) {
      { inst.size() } -> std::convertible_to<int>;
      { inst.quality(x) } -> std::convertible_to<Quality>;
      mut.remove(x);
    };

/// A removable element together with its current quality.
struct Candidate {
  int element = -1;
  Quality quality;
};

/// Chooses one entry of a nonempty candidate list (sorted by element id) and
/// returns its position.
using RemovalPolicy = std::function<std::size_t(std::span<const Candidate>)>;

/// Minimum quality, lowest element id on ties.
inline RemovalPolicy min_quality_policy() {
  return [](std::span<const Candidate> c) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < c.size(); ++i)
      if (c[i].quality < c[best].quality) best = i;
    return best;
  };
}

/// Lowest-id eligible element, regardless of its quality.
inline RemovalPolicy lowest_id_policy() {
  return [](std::span<const Candidate>) { return std::size_t{0}; };
}

/// Highest-id eligible element, regardless of its quality.
inline RemovalPolicy highest_id_policy() {
  return [](std::span<const Candidate> c) { return c.size() - 1; };
}

/// Uniformly random eligible element. Copies of the policy share one engine.
inline RemovalPolicy random_policy(std::uint64_t seed) {
  auto rng = std::make_shared<std::mt19937_64>(seed);
  return [rng](std::span<const Candidate> c) {
    std::uniform_int_distribution<std::size_t> pick(0, c.size() - 1);
    return pick(*rng);
  };
}

struct Removal {
  int element = -1;
  Quality quality;  // q(x, S) at the moment of removal
  Quality bound;    // Q(T) at the moment of removal
};

struct GreedyTrace {
  std::vector<Removal> removals;
  Quality best_value;           // theta
  std::size_t best_prefix = 0;  // removals preceding the best surviving set
};

struct GreedyResult {
  Quality theta;
  std::vector<int> subset;  // maximal bottleneck subset, ascending ids
  GreedyTrace trace;
};

namespace detail {

inline std::vector<int> survivors(int n, std::span<const Removal> removed) {
  std::vector<char> alive(static_cast<std::size_t>(n), 1);
  for (const auto& r : removed) alive[static_cast<std::size_t>(r.element)] = 0;
  std::vector<int> out;
  for (int i = 0; i < n; ++i)
    if (alive[static_cast<std::size_t>(i)]) out.push_back(i);
  return out;
}

}  // namespace detail

/// Decremental greedy: keep the best surviving set T seen so far and
/// repeatedly remove any element x with q(x, S) <= Q(T) until S is empty.
///
/// The returned theta and subset do not depend on the policy.
template <BottleneckInstance I>
GreedyResult decremental_greedy(I instance,
                                const RemovalPolicy& policy = min_quality_policy()) {
  const int n = static_cast<int>(instance.size());
  if (n <= 0) throw InvalidInput("decremental_greedy: empty universe");

  std::vector<char> alive(static_cast<std::size_t>(n), 1);
  GreedyTrace trace;
  trace.best_value = Quality::neg_inf();
  std::vector<Candidate> current;
  std::vector<Candidate> eligible;

  for (int remaining = n; remaining > 0; --remaining) {
    current.clear();
    Quality q_s = Quality::pos_inf();
    for (int x = 0; x < n; ++x) {
      if (!alive[static_cast<std::size_t>(x)]) continue;
      Quality q = instance.quality(x);
      current.push_back({x, q});
      q_s = std::min(q_s, q);
    }
    if (q_s > trace.best_value) {
      trace.best_value = q_s;
      trace.best_prefix = trace.removals.size();
    }
    eligible.clear();
    for (const auto& c : current)
      if (c.quality <= trace.best_value) eligible.push_back(c);
    // A bottleneck element of S is always eligible.
    if (eligible.empty()) throw InvalidState("decremental_greedy: no eligible element");
    std::size_t pick = policy(eligible);
    if (pick >= eligible.size()) throw InvalidState("removal policy returned out-of-range index");
    const Candidate chosen = eligible[pick];
    trace.removals.push_back({chosen.element, chosen.quality, trace.best_value});
    alive[static_cast<std::size_t>(chosen.element)] = 0;
    instance.remove(chosen.element);
  }

  GreedyResult out;
  out.theta = trace.best_value;
  out.subset = detail::survivors(
      n, std::span<const Removal>(trace.removals).first(trace.best_prefix));
  out.trace = std::move(trace);
  return out;
}

struct KnownBetaResult {
  std::vector<int> subset;     // survivors, ascending ids
  std::vector<int> removed;    // removal order
  bool emptied = false;        // beta exceeded the optimum
};

/// Repeatedly removes an element of quality strictly below `beta`. When beta
/// is the optimal value this stops exactly at the maximal bottleneck subset.
template <BottleneckInstance I>
KnownBetaResult known_beta(I instance, Quality beta,
                           const RemovalPolicy& policy = lowest_id_policy()) {
  const int n = static_cast<int>(instance.size());
  if (n <= 0) throw InvalidInput("known_beta: empty universe");
  std::vector<char> alive(static_cast<std::size_t>(n), 1);
  KnownBetaResult out;
  std::vector<Candidate> eligible;
  for (;;) {
    eligible.clear();
    for (int x = 0; x < n; ++x) {
      if (!alive[static_cast<std::size_t>(x)]) continue;
      Quality q = instance.quality(x);
      if (q < beta) eligible.push_back({x, q});
    }
    if (eligible.empty()) break;
    std::size_t pick = policy(eligible);
    if (pick >= eligible.size()) throw InvalidState("removal policy returned out-of-range index");
    int x = eligible[pick].element;
    alive[static_cast<std::size_t>(x)] = 0;
    instance.remove(x);
    out.removed.push_back(x);
  }
  for (int x = 0; x < n; ++x)
    if (alive[static_cast<std::size_t>(x)]) out.subset.push_back(x);
  out.emptied = out.subset.empty();
  return out;
}

enum class RemovalAlgorithm { Greedy, KnownBeta };

inline constexpr int kMaxEnumerationUniverse = 7;

/// Every complete removal sequence the chosen algorithm can produce under
/// some sequence of choices. Greedy sequences run until the universe is
/// empty; known-beta sequences stop when nothing below beta remains, with
/// beta taken from a greedy run.
template <BottleneckInstance I>
std::vector<std::vector<int>> enumerate_removal_sequences(const I& instance,
                                                          RemovalAlgorithm algorithm) {
  const int n = static_cast<int>(instance.size());
  if (n <= 0 || n > kMaxEnumerationUniverse)
    throw InvalidInput("enumerate_removal_sequences: universe size must be in 1..7");

  const Quality beta = algorithm == RemovalAlgorithm::KnownBeta
                           ? decremental_greedy(instance).theta
                           : Quality::neg_inf();
  std::vector<std::vector<int>> out;
  std::vector<int> prefix;

  auto recurse = [&](auto&& self, const I& state, std::uint32_t alive,
                     Quality bound) -> void {
    std::vector<int> eligible;
    if (algorithm == RemovalAlgorithm::Greedy) {
      Quality q_s = Quality::pos_inf();
      std::vector<std::pair<int, Quality>> qs;
      for (int x = 0; x < n; ++x) {
        if (!(alive >> x & 1u)) continue;
        Quality q = state.quality(x);
        qs.emplace_back(x, q);
        q_s = std::min(q_s, q);
      }
      if (alive != 0 && q_s > bound) bound = q_s;
      for (auto& [x, q] : qs)
        if (q <= bound) eligible.push_back(x);
    } else {
      for (int x = 0; x < n; ++x)
        if ((alive >> x & 1u) && state.quality(x) < beta) eligible.push_back(x);
    }
    if (eligible.empty()) {
      out.push_back(prefix);
      return;
    }
    for (int x : eligible) {
      I next = state;
      next.remove(x);
      prefix.push_back(x);
      self(self, next, alive & ~(1u << x), bound);
      prefix.pop_back();
    }
  };
  recurse(recurse, instance, (n == 32 ? ~0u : ((1u << n) - 1u)), Quality::neg_inf());
  return out;
}

struct AntimatroidCheck {
  bool ok = true;
  std::string counterexample;
};

/// Checks the two antimatroid axioms on the prefix closure of `sequences`:
/// availability after a removed set R depends only on R (not on the order in
/// which R was removed), and an element available after R stays available
/// after R plus any other available element.
inline AntimatroidCheck check_antimatroid(std::span<const std::vector<int>> sequences,
                                          int universe_size) {
  if (universe_size < 0 || universe_size > 63)
    throw InvalidInput("check_antimatroid: universe size must be in 0..63");
  using Mask = std::uint64_t;

  // Availability per word, keyed by the word itself.
  std::map<std::vector<int>, Mask> by_word;
  for (const auto& seq : sequences) {
    Mask seen = 0;
    std::vector<int> word;
    for (int x : seq) {
      if (x < 0 || x >= universe_size)
        return {false, "element out of range in a sequence"};
      if (seen >> x & 1u) return {false, "repeated element in a sequence"};
      by_word[word] |= Mask{1} << x;
      seen |= Mask{1} << x;
      word.push_back(x);
    }
    by_word.try_emplace(word, 0);
  }

  auto describe = [](const std::vector<int>& w) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < w.size(); ++i) os << (i ? "," : "") << w[i];
    os << ']';
    return os.str();
  };

  std::map<Mask, std::pair<Mask, std::vector<int>>> by_set;
  for (const auto& [word, avail] : by_word) {
    Mask set = 0;
    for (int x : word) set |= Mask{1} << x;
    auto [it, inserted] = by_set.try_emplace(set, avail, word);
    if (!inserted && it->second.first != avail) {
      return {false, "availability differs between orders " + describe(it->second.second) +
                         " and " + describe(word)};
    }
  }

  for (const auto& [set, entry] : by_set) {
    const Mask avail = entry.first;
    for (int y = 0; y < universe_size; ++y) {
      if (!(avail >> y & 1u)) continue;
      auto next = by_set.find(set | Mask{1} << y);
      if (next == by_set.end()) return {false, "missing extension of " + describe(entry.second)};
      const Mask still = avail & ~(Mask{1} << y);
      if ((next->second.first & still) != still) {
        return {false, "availability lost after " + describe(entry.second) + " + " +
                           std::to_string(y)};
      }
    }
  }
  return {};
}

/// Relabels an instance: element i of the wrapper is element perm[i] of the
/// wrapped instance.
template <BottleneckInstance I>
class PermutedInstance {
 public:
  PermutedInstance(I inner, std::vector<int> perm) : inner_(std::move(inner)), perm_(std::move(perm)) {
    if (static_cast<int>(perm_.size()) != static_cast<int>(inner_.size()))
      throw InvalidInput("PermutedInstance: permutation size mismatch");
  }
  int size() const { return static_cast<int>(perm_.size()); }
  Quality quality(int x) const { return inner_.quality(perm_[static_cast<std::size_t>(x)]); }
  void remove(int x) { inner_.remove(perm_[static_cast<std::size_t>(x)]); }
  int original(int x) const { return perm_[static_cast<std::size_t>(x)]; }

 private:
  I inner_;
  std::vector<int> perm_;
};

/// Wraps an instance so that every quality is negated. Running the max-min
/// greedy on the wrapper solves the min-max problem, provided the negated
/// quality is still monotone for the caller's problem.
template <BottleneckInstance I>
class NegatedInstance {
 public:
  explicit NegatedInstance(I inner) : inner_(std::move(inner)) {}
  int size() const { return static_cast<int>(inner_.size()); }
  Quality quality(int x) const { return -inner_.quality(x); }
  void remove(int x) { inner_.remove(x); }

 private:
  I inner_;
};

}  // namespace maxmin
