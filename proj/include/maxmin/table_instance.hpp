#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <memory>
#include <random>
#include <vector>

#include "maxmin/errors.hpp"
#include "maxmin/quality.hpp"

namespace maxmin {

/// Bottleneck instance backed by an explicit table q(x, S) over all subsets
/// of a universe of at most 16 elements. Copies share the table.
class TableInstance {
 public:
  static constexpr int kMaxSize = 16;

  /// `table[x][mask]` is the quality of x within the subset `mask`; entries
  /// with x outside mask are ignored.
  TableInstance(int n, std::vector<std::vector<Quality>> table)
      : n_(n), table_(std::make_shared<const std::vector<std::vector<Quality>>>(std::move(table))),
        alive_(full_mask(n)) {
    if (n < 1 || n > kMaxSize) throw InvalidInput("TableInstance: size must be in 1..16");
    if (static_cast<int>(table_->size()) != n) throw InvalidInput("TableInstance: table size mismatch");
    for (const auto& row : *table_)
      if (row.size() != (std::size_t{1} << n)) throw InvalidInput("TableInstance: row size mismatch");
  }

  /// Random monotone table: qualities on the full set are drawn first, then
  /// each smaller subset takes the minimum over its one-larger supersets,
  /// lowered by a small random amount. Integer values make ties common.
  template <class Rng>
  static TableInstance random(int n, Rng& rng) {
    const std::uint32_t full = full_mask(n);
    std::vector<std::vector<Quality>> table(static_cast<std::size_t>(n),
                                            std::vector<Quality>(std::size_t{1} << n));
    std::uniform_int_distribution<int> top(0, 12);
    std::uniform_int_distribution<int> drop(0, 3);
    std::uniform_int_distribution<int> coin(0, 19);
    for (int x = 0; x < n; ++x) {
      auto& row = table[static_cast<std::size_t>(x)];
      int t = coin(rng);
      row[full] = t == 0 ? Quality::pos_inf() : Quality::finite(top(rng));
      // Visit subsets in order of decreasing size so supersets come first.
      for (int size = n - 1; size >= 1; --size) {
        for (std::uint32_t s = 1; s < full; ++s) {
          if (!(s >> x & 1u) || std::popcount(s) != size) continue;
          Quality parent = Quality::pos_inf();
          for (int y = 0; y < n; ++y)
            if (!(s >> y & 1u)) parent = std::min(parent, row[s | (1u << y)]);
          int c = coin(rng);
          if (c == 0) {
            row[s] = Quality::neg_inf();
          } else if (parent.kind() == Quality::Kind::PosInf) {
            row[s] = c < 10 ? parent : Quality::finite(top(rng));
          } else if (parent.is_finite()) {
            row[s] = Quality::finite(parent.to_double() - static_cast<double>(drop(rng) / 2));
          } else {
            row[s] = parent;
          }
        }
      }
    }
    return TableInstance(n, std::move(table));
  }

  int size() const { return n_; }
  Quality quality(int x) const {
    return (*table_)[static_cast<std::size_t>(x)][alive_];
  }
  void remove(int x) { alive_ &= ~(1u << x); }

  std::uint32_t alive_mask() const { return alive_; }
  /// Quality of x within an arbitrary subset.
  Quality quality_in(int x, std::uint32_t mask) const {
    return (*table_)[static_cast<std::size_t>(x)][mask];
  }

 private:
  static std::uint32_t full_mask(int n) { return n >= 32 ? ~0u : ((1u << n) - 1u); }

  int n_;
  std::shared_ptr<const std::vector<std::vector<Quality>>> table_;
  std::uint32_t alive_;
};

}  // namespace maxmin
