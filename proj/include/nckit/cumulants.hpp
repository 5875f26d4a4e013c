#pragma once

// Moment / Delta-cumulant transforms.
//
// Moments and cumulants are related by
//   M_n = sum over noncrossing pi of C_pi * wt(pi),
// and the inverse direction is available three independent ways: inverting
// the weighted incidence matrix zeta, summing over prime Schröder trees, and
// a residue formula on the moment generating function.

#include <functional>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "nckit/ncpart.hpp"
#include "nckit/poly.hpp"
#include "nckit/series.hpp"
#include "nckit/trees.hpp"

namespace nckit {

enum class Direction { MomentsFromCumulants, CumulantsFromMoments };
enum class Method { Yoshida, Mobius, Trees, Lagrange, FixedPoint };

std::string to_string(Direction d);
std::string to_string(Method m);

// entries[k - 1] expresses the k-th target variable in the source variables
// (and the d_i).
struct TransformTable {
  int n = 0;
  Direction direction = Direction::CumulantsFromMoments;
  Method method = Method::Mobius;
  std::vector<Polynomial> entries;

  const Polynomial &entry(int k) const { return entries.at(k - 1); }

  nlohmann::json to_json() const;
  std::string to_csv() const;
  // "C1 = 1*M1" lines
  std::string to_text() const;
};

// Same n, direction and polynomials (the method tag is ignored).
bool same_entries(const TransformTable &a, const TransformTable &b);

TransformTable specialize(const TransformTable &t, const Assignment &a);
// d_i <- 1 for i = 1..n
Assignment free_assignment(int n);
// d_i <- 0 for i = 1..n, so only arcs between neighbours (d_0 = 1) survive
// and the sum runs over interval partitions.
Assignment boolean_assignment(int n);

// M_pi and C_pi: products over blocks of M_#B (resp. C_#B).
Polynomial product_moment(const NoncrossingPartition &p);
Polynomial product_cumulant(const NoncrossingPartition &p);

TransformTable moments_from_cumulants(int n);

// Square matrix indexed by NC_n in the order of `partitions`.
struct WeightMatrix {
  int n = 0;
  std::vector<NoncrossingPartition> partitions;
  std::vector<Polynomial> entries; // row-major

  std::size_t size() const { return partitions.size(); }
  const Polynomial &at(std::size_t row, std::size_t col) const {
    return entries[row * size() + col];
  }
  std::size_t index_of(const NoncrossingPartition &p) const;
};

// NC_n sorted by decreasing block count, ties in canonical order. zeta is
// upper unitriangular in this order.
std::vector<NoncrossingPartition> linear_extension(int n);

WeightMatrix zeta_matrix(int n);
WeightMatrix mu_matrix(int n);
// The column mu(., 1_n), aligned with linear_extension(n).
std::vector<Polynomial> mu_column(int n);

TransformTable cumulants_from_moments_mobius(int n);

using TreeWeight = std::function<Polynomial(const SchroderTree &)>;

// (-1)^(#pi - 1) * sum of wt(T) over prime trees with eta(T) = pi.
Polynomial mu_column_via_trees(const NoncrossingPartition &p);
TransformTable cumulants_from_moments_trees(int n);
// Same sum with a caller-supplied tree weight; used for fault injection.
TransformTable cumulants_from_moments_trees(int n, const TreeWeight &weight);

TransformTable cumulants_from_moments_lagrange(int n);

TransformTable free_cumulants(int n);
TransformTable boolean_cumulants(int n);

// Solves M = z / (1 - z C(M (.) Delta)) by iteration, truncated at `order`.
LaurentSeries moments_series_fixed_point(int order);
TransformTable moments_from_cumulants_fixed_point(int n);

// Evaluates the symbolic tables at exact values. For CumulantsFromMoments
// `values` are M_1..M_n, otherwise C_1..C_n; `deltas` are d_1..d_n.
std::vector<Rational> numeric_convert(const std::vector<Rational> &values,
                                      const std::vector<Rational> &deltas,
                                      Direction direction);

Polynomial v_pi(const NoncrossingPartition &p);
Polynomial w_rho(const NoncrossingPartition &rho);

// Sign-reversing involution on {A : partition_of(A) <= kreweras_inv(rho)}.
// With B0 the first non-singleton block of kreweras_inv(rho): if min B0 and
// max B0 share a tree, that tree's root is removed; otherwise their two trees
// are joined under a new root.
Arrangement psi(const Arrangement &a, const NoncrossingPartition &rho);

// The block B0 used by psi.
Block psi_pivot_block(const NoncrossingPartition &rho);

// cov(v0) + 1 == iota(partition_of(psi(A)) restricted to [B0]) - 1, where v0
// is the root removed by psi. Merge-case inputs are checked on their split
// partner; returns true without checking when 1 is in B0.
bool verify_cover_identity(const Arrangement &a, const NoncrossingPartition &rho);

} // namespace nckit
