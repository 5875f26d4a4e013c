#pragma once

// Noncrossing partitions of finite ordered ground sets, Yoshida's arc
// weight, Kreweras complementation and the weighted incidence maps built on
// them.

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "nckit/poly.hpp"

namespace nckit {

using Block = std::vector<int>;

// Blocks are sorted internally and by their minimum; the ground set is the
// union of the blocks. Construction validates disjointness and the
// noncrossing condition.
class NoncrossingPartition {
public:
  NoncrossingPartition() = default;
  explicit NoncrossingPartition(std::vector<Block> blocks);

  // 1|2|...|n and 12...n
  static NoncrossingPartition singletons(int n);
  static NoncrossingPartition single_block(int n);
  static NoncrossingPartition from_json(const nlohmann::json &j);
  // "146|23|5"; digits above 9 use A..Z.
  static NoncrossingPartition parse(std::string_view text);

  const std::vector<Block> &blocks() const { return blocks_; }
  const std::vector<int> &ground() const { return ground_; }
  int ground_size() const { return static_cast<int>(ground_.size()); }
  int block_count() const { return static_cast<int>(blocks_.size()); }
  // true when the ground set is {1, ..., n}
  bool is_standard() const;

  bool contains(int x) const;
  // Index into blocks() of the block containing x; x must be in the ground.
  int block_index(int x) const;
  bool same_block(int x, int y) const;
  const Block &block_of(int x) const { return blocks_[block_index(x)]; }

  std::string to_string() const;
  nlohmann::json to_json() const;

  friend bool operator==(const NoncrossingPartition &a,
                         const NoncrossingPartition &b) {
    return a.blocks_ == b.blocks_;
  }
  // Lexicographic on the canonical block lists.
  friend bool operator<(const NoncrossingPartition &a,
                        const NoncrossingPartition &b) {
    return a.blocks_ < b.blocks_;
  }

private:
  std::vector<Block> blocks_;
  std::vector<int> ground_;
  std::vector<int> index_of_; // element -> block index, -1 if absent
};

using Arc = std::pair<int, int>;

// Throws NotAPartition when blocks are empty, overlap, or are not a set
// partition of the given ground set.
bool is_noncrossing(const std::vector<Block> &blocks,
                    const std::vector<int> &ground);
// Same check with the ground taken as the union of the blocks.
bool is_noncrossing(const std::vector<Block> &blocks);

// All of NC_n in canonical order.
std::vector<NoncrossingPartition> enumerate_nc(int n);
std::vector<NoncrossingPartition> enumerate_interval(int n);
bool is_interval(const NoncrossingPartition &p);

// Pairs of consecutive elements inside a block.
std::vector<Arc> arcs(const NoncrossingPartition &p);

// Product over arcs (i, j) of d_(j-i-1) on {1..n}; other ground sets are
// standardized first.
Polynomial weight(const NoncrossingPartition &p);
// Product over arcs (i, j) of d_#{k in ground : i < k < j}, evaluated on the
// ground set as is.
Polynomial gap_weight(const NoncrossingPartition &p);

// Refinement order: every block of p lies inside a block of q.
bool leq(const NoncrossingPartition &p, const NoncrossingPartition &q);

// The blocks of p inside `subset`, which must be a union of blocks of p.
NoncrossingPartition restrict_to(const NoncrossingPartition &p,
                                 const std::vector<int> &subset);
// Order-preserving relabelling onto {1..k}.
NoncrossingPartition standardize(const NoncrossingPartition &p);

NoncrossingPartition kreweras(const NoncrossingPartition &p);
NoncrossingPartition kreweras_inv(const NoncrossingPartition &p);

// Smallest interval partition above p (on the same ground) and its block
// count.
NoncrossingPartition smallest_interval_above(const NoncrossingPartition &p);
int iota(const NoncrossingPartition &p);

// zeta(p, q) = prod over blocks B of q of wt(p|_B), or 0 unless p <= q.
Polynomial zeta(const NoncrossingPartition &p, const NoncrossingPartition &q);
// The same map read off the arcs of p: d_#{k : i < k < j, i ~q k ~q j}.
Polynomial zeta_by_arcs(const NoncrossingPartition &p,
                        const NoncrossingPartition &q);

// zeta_c(a, b) = zeta(kreweras(b), kreweras(a)).
Polynomial zeta_c(const NoncrossingPartition &a, const NoncrossingPartition &b);
// Closed form: product over blocks B of b with 1 not in B and
// min B, max B in different blocks of a, of d_(iota(a|_[B]) - 1).
Polynomial zeta_c_by_blocks(const NoncrossingPartition &a,
                            const NoncrossingPartition &b);

// Base-36 rendering of a single element: 1..9, A..Z.
std::string element_label(int x);

} // namespace nckit
