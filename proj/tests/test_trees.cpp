#include <functional>
#include <set>

#include <gtest/gtest.h>

#include "nckit/errors.hpp"
#include "nckit/trees.hpp"
#include "oracles.hpp"

using namespace nckit;

namespace {

SchroderTree T(const char *json) {
  return SchroderTree::from_json(nlohmann::json::parse(json));
}

NoncrossingPartition NC(const char *s) { return NoncrossingPartition::parse(s); }

// The figure of the bijection phi.
const char *kFigureTree = "[[[0,[0,0],[0,0]],0],[0,[0,0,[0,0]]],0]";
// The tree whose eta is 1|27|346|5.
const char *kEtaTree = "[[0,0],[0,0,[0,0],0],0]";
// The left-comb tree of the boolean illustration.
const char *kCombTree = "[[[[0,0],0,0,0],0,0],0]";

Arrangement figure_arrangement() {
  const PlaneTree leaf = PlaneTree::leaf();
  auto node = [](PlaneTree a, PlaneTree b) { return PlaneTree::node({a, b}); };
  return Arrangement(11, {{node(node(leaf, node(leaf, leaf)), leaf), {1, 4, 5, 6}},
                          {node(leaf, leaf), {2, 3}},
                          {node(leaf, node(leaf, node(leaf, leaf))), {7, 8, 10, 11}},
                          {leaf, {9}}});
}

// Full binary trees with k leaves.
std::vector<PlaneTree> binary_trees(int k) {
  if (k == 1)
    return {PlaneTree::leaf()};
  std::vector<PlaneTree> out;
  for (int i = 1; i < k; ++i)
    for (const auto &l : binary_trees(i))
      for (const auto &r : binary_trees(k - i))
        out.push_back(PlaneTree::node({l, r}));
  return out;
}

// Arrangements of {1..n} built directly: a noncrossing partition, then an
// independent binary shape on each block.
long count_arrangements_directly(int n) {
  long total = 0;
  for (const auto &blocks : oracle::noncrossing_partitions(n)) {
    long ways = 1;
    for (const auto &b : blocks)
      ways *= static_cast<long>(binary_trees(static_cast<int>(b.size())).size());
    total += ways;
  }
  return total;
}

} // namespace

TEST(Trees, SchroderCounts) {
  EXPECT_EQ(enumerate_schroder(1).size(), 1u);
  EXPECT_EQ(enumerate_schroder(2).size(), 3u);
  EXPECT_EQ(enumerate_schroder(3).size(), 11u);
  EXPECT_EQ(enumerate_prime(2).size(), 2u);
  EXPECT_EQ(enumerate_prime(3).size(), 6u);
  EXPECT_TRUE(T("[0,0,0,0]").is_prime());
  EXPECT_FALSE(T("[0,[0,0]]").is_prime());
}

TEST(Trees, EnumerationIsCanonicalAndComplete) {
  for (int n = 1; n <= 5; ++n) {
    const auto all = enumerate_schroder(n);
    std::set<PlaneTree> seen;
    for (std::size_t i = 0; i < all.size(); ++i) {
      EXPECT_EQ(all[i].n(), n);
      seen.insert(all[i].tree());
      if (i)
        EXPECT_TRUE(all[i - 1] < all[i]);
    }
    EXPECT_EQ(seen.size(), all.size());
    std::size_t prime = 0;
    for (const auto &t : all)
      prime += t.is_prime();
    EXPECT_EQ(prime, enumerate_prime(n).size());
  }
}

TEST(Trees, RejectsUnaryVertices) {
  EXPECT_THROW(T("[[0],0]"), NotSchroder);
  EXPECT_THROW(eta(T("[0,[0,0]]")), NotPrime);
}

TEST(Trees, EtaExamples) {
  EXPECT_EQ(eta(T(kEtaTree)), NC("1|27|346|5"));
  EXPECT_EQ(eta(T(kCombTree)), NC("1|234|56|7"));
  EXPECT_EQ(eta(T("[0,0,0,0,0]")), NoncrossingPartition::single_block(4));
}

TEST(Trees, WeightExamples) {
  // Off the left branch sit a vertex with 4 children and one with 2.
  EXPECT_EQ(weight_tree(T(kEtaTree)), delta(3) * delta(1));
  EXPECT_EQ(weight_tree(T(kCombTree)), Polynomial(1));
  Assignment free;
  for (int i = 1; i <= 6; ++i)
    free[delta_var(i)] = 1;
  for (const auto &t : enumerate_prime(5))
    EXPECT_EQ(weight_tree(t).substitute(free), Polynomial(1));
}

TEST(Trees, EtaBlockCountIsInternalCount) {
  for (int n = 1; n <= 6; ++n)
    for (const auto &t : enumerate_prime(n))
      EXPECT_EQ(eta(t).block_count(), t.tree().internal_count());
}

TEST(Trees, LeftBranchTreesBijectOntoIntervalPartitions) {
  for (int n = 1; n <= 6; ++n) {
    std::set<NoncrossingPartition> images;
    std::size_t count = 0;
    for (const auto &t : enumerate_prime(n)) {
      if (weight_tree(t).substitute({{delta_var(1), 0}, {delta_var(2), 0},
                                     {delta_var(3), 0}, {delta_var(4), 0},
                                     {delta_var(5), 0}, {delta_var(6), 0}})
              .is_zero())
        continue;
      ++count;
      images.insert(eta(t));
      EXPECT_TRUE(is_interval(eta(t)));
    }
    EXPECT_EQ(images.size(), count);
    EXPECT_EQ(images.size(), enumerate_interval(n).size());
  }
}

TEST(Trees, PhiFigure) {
  const auto t = T(kFigureTree);
  const auto a = phi(t);
  EXPECT_EQ(a, figure_arrangement());
  EXPECT_EQ(partition_of(a), NC("1456|23|78AB|9"));
  EXPECT_EQ(phi_inv(figure_arrangement()), t);
  EXPECT_EQ(kreweras(partition_of(a)), eta(t));
}

TEST(Trees, PhiOfOneVertexTree) {
  const auto a = phi(T("[0,0,0,0,0]"));
  EXPECT_EQ(partition_of(a), NoncrossingPartition::singletons(4));
  EXPECT_EQ(a.tree_count(), 4);
}

TEST(Trees, PhiLemmas) {
  for (int n = 1; n <= 6; ++n)
    for (const auto &t : enumerate_prime(n)) {
      const auto a = phi(t);
      EXPECT_EQ(phi_inv(a), t);
      EXPECT_EQ(kreweras(partition_of(a)), eta(t));
      EXPECT_EQ(weight_arrangement(a), weight_tree(t));
      EXPECT_EQ(partition_of(a).block_count(), a.tree_count());
    }
}

TEST(Trees, ArrangementCounts) {
  for (int n = 1; n <= 6; ++n) {
    const auto arr = enumerate_arrangements(n);
    EXPECT_EQ(arr.size(), enumerate_prime(n).size());
    std::set<std::string> distinct;
    for (const auto &a : arr)
      distinct.insert(a.to_string());
    EXPECT_EQ(distinct.size(), arr.size());
    if (n <= 5)
      EXPECT_EQ(static_cast<long>(arr.size()), count_arrangements_directly(n));
  }
}

TEST(Trees, EveryNoncrossingForestIsAnArrangement) {
  // Build all forests directly and round-trip them through phi_inv.
  const int n = 5;
  long checked = 0;
  for (const auto &blocks : oracle::noncrossing_partitions(n)) {
    std::vector<std::vector<ArrangedTree>> partial{{}};
    for (const auto &b : blocks) {
      std::vector<std::vector<ArrangedTree>> next;
      for (const auto &forest : partial)
        for (const auto &shape : binary_trees(static_cast<int>(b.size()))) {
          auto f = forest;
          f.push_back({shape, b});
          next.push_back(std::move(f));
        }
      partial = std::move(next);
    }
    for (auto &forest : partial) {
      const Arrangement a(n, forest);
      EXPECT_EQ(phi(phi_inv(a)), a);
      ++checked;
    }
  }
  EXPECT_EQ(checked, static_cast<long>(enumerate_prime(n).size()));
}

TEST(Trees, InvalidArrangements) {
  const PlaneTree leaf = PlaneTree::leaf();
  const PlaneTree pair = PlaneTree::node({leaf, leaf});
  EXPECT_THROW(Arrangement(4, {{pair, {1, 3}}, {pair, {2, 4}}}), InvalidArrangement);
  EXPECT_THROW(Arrangement(3, {{pair, {1, 2}}}), InvalidArrangement);
  EXPECT_THROW(Arrangement(2, {{PlaneTree::node({leaf, leaf, leaf}), {1, 2}}}),
               InvalidArrangement);
}

TEST(Trees, CoverCounts) {
  // No middle edges anywhere in the preimage: every count is zero.
  const auto comb = phi(T(kCombTree));
  for (const auto &[v, c] : cover_counts(comb))
    EXPECT_EQ(c, 0);
  // Off the left branch of the figure tree: four vertices with 2 children
  // and one with 3.
  EXPECT_EQ(weight_arrangement(figure_arrangement()),
            delta(1).pow(4) * delta(2));
  EXPECT_EQ(weight_tree(T(kFigureTree)), delta(1).pow(4) * delta(2));
}

TEST(Trees, Json) {
  const auto t = T(kFigureTree);
  EXPECT_EQ(t.tree().to_string(), kFigureTree);
  const auto a = figure_arrangement();
  EXPECT_EQ(Arrangement::from_json(11, a.to_json()), a);
  EXPECT_EQ(a.to_json()[1].dump(), R"({"positions":[2,3],"tree":[0,0]})");
}
