#pragma once

// Schröder trees, the gap partition eta, tree weights, and the bijection phi
// between prime Schröder trees and noncrossing arrangements of binary trees.

#include <compare>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "nckit/ncpart.hpp"
#include "nckit/poly.hpp"

namespace nckit {

// Ordered rooted tree; a vertex with no children is a leaf. Ordering is
// lexicographic on the nested child lists, so a leaf sorts first.
struct PlaneTree {
  std::vector<PlaneTree> children;

  static PlaneTree leaf() { return {}; }
  static PlaneTree node(std::vector<PlaneTree> children);

  bool is_leaf() const { return children.empty(); }
  int leaf_count() const;
  int internal_count() const;

  // leaf = 0, internal vertex = array of children
  nlohmann::json to_json() const;
  static PlaneTree from_json(const nlohmann::json &j);
  std::string to_string() const; // compact JSON

  friend bool operator==(const PlaneTree &, const PlaneTree &);
  friend std::strong_ordering operator<=>(const PlaneTree &, const PlaneTree &);
};

// A plane tree whose internal vertices all have at least two children, with
// n + 1 >= 2 leaves.
class SchroderTree {
public:
  explicit SchroderTree(PlaneTree tree);
  static SchroderTree from_json(const nlohmann::json &j);

  const PlaneTree &tree() const { return tree_; }
  int n() const { return tree_.leaf_count() - 1; }
  // The rightmost child of the root is a leaf.
  bool is_prime() const;

  friend bool operator==(const SchroderTree &, const SchroderTree &) = default;
  friend auto operator<=>(const SchroderTree &, const SchroderTree &) = default;

private:
  PlaneTree tree_;
};

std::vector<SchroderTree> enumerate_schroder(int n);
std::vector<SchroderTree> enumerate_prime(int n);

// Gap i sits between leaves i and i+1; the gaps directly below one internal
// vertex form one block. Throws NotPrime.
NoncrossingPartition eta(const SchroderTree &t);
// Product of d_(deg v - 1) over internal vertices off the left branch.
// Throws NotPrime.
Polynomial weight_tree(const SchroderTree &t);

struct ArrangedTree {
  PlaneTree shape;            // full binary
  std::vector<int> positions; // leaf dots, increasing left to right

  friend bool operator==(const ArrangedTree &, const ArrangedTree &) = default;
};

// An internal vertex of an arrangement, named by its first and last dot.
struct VertexId {
  int first;
  int last;
  friend auto operator<=>(const VertexId &, const VertexId &) = default;
};

// Noncrossing forest of binary trees whose leaves are the dots 1..n.
// Trees are kept sorted by their first dot.
class Arrangement {
public:
  // Throws InvalidArrangement.
  Arrangement(int n, std::vector<ArrangedTree> trees);

  int n() const { return n_; }
  const std::vector<ArrangedTree> &trees() const { return trees_; }
  int tree_count() const { return static_cast<int>(trees_.size()); }
  // Index of the tree containing dot x.
  int tree_of(int x) const;

  nlohmann::json to_json() const;
  static Arrangement from_json(int n, const nlohmann::json &j);
  std::string to_string() const;

  friend bool operator==(const Arrangement &, const Arrangement &) = default;

private:
  int n_;
  std::vector<ArrangedTree> trees_;
};

// Drops the root and every middle edge.
Arrangement phi(const SchroderTree &t);
// Rebuilds the prime tree: the middle children of a binary vertex are the
// arrangement trees tiling the gap between its left and right subtrees.
SchroderTree phi_inv(const Arrangement &a);
std::vector<Arrangement> enumerate_arrangements(int n);

NoncrossingPartition partition_of(const Arrangement &a);
// cov(v) for every internal vertex off the left branch: the number of
// vertices hanging from v by middle edges in phi_inv(a).
std::map<VertexId, int> cover_counts(const Arrangement &a);
// Product of d_(cov v + 1) over those vertices.
Polynomial weight_arrangement(const Arrangement &a);

} // namespace nckit
