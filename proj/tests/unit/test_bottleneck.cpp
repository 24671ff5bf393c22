#include <gtest/gtest.h>

#include <algorithm>
#include <memory>
#include <vector>

#include "maxmin/bottleneck.hpp"
#include "maxmin/degeneracy.hpp"
#include "maxmin/oracles.hpp"
#include "maxmin/table_instance.hpp"
#include "support/generators.hpp"

namespace {

using namespace maxmin;
using maxmin::testing::Rng;

DegreeInstance degree_instance(int n, std::vector<std::pair<int, int>> edges) {
  return DegreeInstance(std::make_shared<const SimpleGraph>(n, edges));
}

std::vector<std::pair<int, int>> k4() { return {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}; }

TEST(Quality, TotalOrder) {
  EXPECT_LT(Quality::neg_inf(), Quality::finite(-1e300));
  EXPECT_LT(Quality::finite(1e300), Quality::pos_inf());
  EXPECT_EQ(Quality::neg_inf(), Quality::neg_inf());
  EXPECT_LT(Quality::finite(1.0), Quality::finite(2.0));
  EXPECT_EQ(Quality{}, Quality::neg_inf());
}

TEST(Quality, NegationAndConversion) {
  EXPECT_EQ(-Quality::neg_inf(), Quality::pos_inf());
  EXPECT_EQ(-Quality::finite(3.0), Quality::finite(-3.0));
  EXPECT_EQ(Quality::from_double(-std::numeric_limits<double>::infinity()), Quality::neg_inf());
  EXPECT_EQ(Quality::pos_inf().to_string(), "inf");
  EXPECT_EQ(Quality::finite(0.5).to_string(), "0.5");
}

TEST(DecrementalGreedy, SingleElement) {
  TableInstance inst(1, {{Quality::neg_inf(), Quality::finite(5)}});
  auto r = decremental_greedy(inst);
  EXPECT_EQ(r.theta, Quality::finite(5));
  EXPECT_EQ(r.subset, std::vector<int>{0});
}

TEST(DecrementalGreedy, K4Degeneracy) {
  auto r = decremental_greedy(degree_instance(4, k4()));
  EXPECT_EQ(r.theta, Quality::finite(3));
  EXPECT_EQ(r.subset, (std::vector<int>{0, 1, 2, 3}));
}

TEST(DecrementalGreedy, EmptyUniverseIsInvalid) {
  EXPECT_THROW(decremental_greedy(degree_instance(0, {})), InvalidInput);
}

TEST(DecrementalGreedy, MatchesSubsetOracle) {
  Rng rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = maxmin::testing::uniform_int(rng, 1, 6);
    auto inst = TableInstance::random(n, rng);
    auto oracle = bottleneck_subset_oracle(inst);
    auto r = decremental_greedy(inst);
    ASSERT_EQ(r.theta, oracle.theta) << "trial " << trial;
    ASSERT_EQ(r.subset, oracle.subset) << "trial " << trial;
  }
}

TEST(DecrementalGreedy, PolicyAndPermutationIndependent) {
  Rng rng(12);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = maxmin::testing::uniform_int(rng, 1, 6);
    auto inst = TableInstance::random(n, rng);
    const auto base = decremental_greedy(inst);
    for (const auto& policy : {lowest_id_policy(), highest_id_policy(), random_policy(trial)}) {
      auto r = decremental_greedy(inst, policy);
      EXPECT_EQ(r.theta, base.theta);
      EXPECT_EQ(r.subset, base.subset);
    }
    for (int p = 0; p < 3; ++p) {
      auto perm = maxmin::testing::random_permutation(rng, n);
      PermutedInstance<TableInstance> permuted(inst, perm);
      auto r = decremental_greedy(permuted, random_policy(100 + p));
      std::vector<int> mapped;
      for (int x : r.subset) mapped.push_back(permuted.original(x));
      std::sort(mapped.begin(), mapped.end());
      EXPECT_EQ(r.theta, base.theta);
      EXPECT_EQ(mapped, base.subset);
    }
  }
}

TEST(DecrementalGreedy, TraceIsReplayable) {
  Rng rng(13);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = maxmin::testing::uniform_int(rng, 1, 6);
    auto inst = TableInstance::random(n, rng);
    auto r = decremental_greedy(inst, random_policy(trial));
    ASSERT_EQ(r.trace.removals.size(), static_cast<std::size_t>(n));
    TableInstance replay = inst;
    Quality best = Quality::neg_inf();
    for (std::size_t i = 0; i < r.trace.removals.size(); ++i) {
      Quality q_s = Quality::pos_inf();
      for (int x = 0; x < n; ++x)
        if (replay.alive_mask() >> x & 1u) q_s = std::min(q_s, replay.quality(x));
      best = std::max(best, q_s);
      const auto& rem = r.trace.removals[i];
      EXPECT_EQ(rem.quality, replay.quality(rem.element));
      EXPECT_EQ(rem.bound, best);
      EXPECT_LE(rem.quality, rem.bound);
      replay.remove(rem.element);
    }
    EXPECT_EQ(best, r.trace.best_value);
    // The survivors after best_prefix removals attain best_value.
    TableInstance at_best = inst;
    for (std::size_t i = 0; i < r.trace.best_prefix; ++i) at_best.remove(r.trace.removals[i].element);
    Quality q = Quality::pos_inf();
    for (int x : r.subset) q = std::min(q, at_best.quality(x));
    EXPECT_EQ(q, r.theta);
  }
}

TEST(KnownBeta, K4) {
  auto inst = degree_instance(4, k4());
  auto at3 = known_beta(inst, Quality::finite(3));
  EXPECT_EQ(at3.subset, (std::vector<int>{0, 1, 2, 3}));
  EXPECT_FALSE(at3.emptied);
  auto at4 = known_beta(inst, Quality::finite(4));
  EXPECT_TRUE(at4.subset.empty());
  EXPECT_TRUE(at4.emptied);
}

TEST(KnownBeta, AgreesWithGreedy) {
  Rng rng(14);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = maxmin::testing::uniform_int(rng, 1, 6);
    auto inst = TableInstance::random(n, rng);
    auto g = decremental_greedy(inst);
    auto k = known_beta(inst, g.theta, random_policy(trial));
    EXPECT_EQ(k.subset, g.subset);
  }
}

TEST(NegatedInstance, FlipsQualities) {
  auto inst = degree_instance(4, k4());
  NegatedInstance<DegreeInstance> neg(inst);
  EXPECT_EQ(neg.quality(0), Quality::finite(-3));
}

TEST(RemovalSequences, SizeGuard) {
  Rng rng(15);
  auto inst = degree_instance(8, {});
  EXPECT_THROW(enumerate_removal_sequences(inst, RemovalAlgorithm::Greedy), InvalidInput);
}

TEST(RemovalSequences, SingleElement) {
  TableInstance inst(1, {{Quality::neg_inf(), Quality::finite(5)}});
  auto greedy = enumerate_removal_sequences(inst, RemovalAlgorithm::Greedy);
  ASSERT_EQ(greedy.size(), 1u);
  EXPECT_EQ(greedy[0], std::vector<int>{0});
  auto kb = enumerate_removal_sequences(inst, RemovalAlgorithm::KnownBeta);
  ASSERT_EQ(kb.size(), 1u);
  EXPECT_TRUE(kb[0].empty());
}

TEST(RemovalSequences, TrianglePlusPendant) {
  // Triangle 0-1-2 with pendant 3 attached to 0.
  auto inst = degree_instance(4, {{0, 1}, {1, 2}, {0, 2}, {0, 3}});
  auto kb = enumerate_removal_sequences(inst, RemovalAlgorithm::KnownBeta);
  ASSERT_EQ(kb.size(), 1u);
  EXPECT_EQ(kb[0], std::vector<int>{3});
  auto greedy = enumerate_removal_sequences(inst, RemovalAlgorithm::Greedy);
  for (const auto& seq : greedy) {
    ASSERT_FALSE(seq.empty());
    EXPECT_EQ(seq[0], 3);
  }
  EXPECT_TRUE(check_antimatroid(greedy, 4).ok);
}

TEST(Antimatroid, SmallFamilies) {
  std::vector<std::vector<int>> symmetric{{0, 1}, {1, 0}};
  EXPECT_TRUE(check_antimatroid(symmetric, 2).ok);
  std::vector<std::vector<int>> chain{{0, 1}};
  EXPECT_TRUE(check_antimatroid(chain, 2).ok);
}

TEST(Antimatroid, DetectsLostAvailability) {
  // 0 is available at the start but not once 1 has been removed.
  std::vector<std::vector<int>> bad{{0, 1}, {1}};
  auto r = check_antimatroid(bad, 2);
  EXPECT_FALSE(r.ok);
  EXPECT_FALSE(r.counterexample.empty());
}

TEST(Antimatroid, DetectsOrderDependence) {
  // After {0,1} the next element depends on the order.
  std::vector<std::vector<int>> bad{{0, 1, 2}, {1, 0, 3}};
  EXPECT_FALSE(check_antimatroid(bad, 4).ok);
}

TEST(Antimatroid, RandomInstancesBothAlgorithms) {
  Rng rng(16);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = maxmin::testing::uniform_int(rng, 1, 5);
    auto inst = TableInstance::random(n, rng);
    const auto g = decremental_greedy(inst);
    for (auto alg : {RemovalAlgorithm::Greedy, RemovalAlgorithm::KnownBeta}) {
      auto seqs = enumerate_removal_sequences(inst, alg);
      auto check = check_antimatroid(seqs, n);
      EXPECT_TRUE(check.ok) << check.counterexample;
      if (alg == RemovalAlgorithm::KnownBeta) {
        for (const auto& s : seqs) EXPECT_EQ(s.size() + g.subset.size(), static_cast<std::size_t>(n));
      }
    }
  }
}

}  // namespace
