#include "nckit/cumulants.hpp"

#include <algorithm>
#include <sstream>

#include "cache.hpp"
#include "nckit/errors.hpp"

namespace nckit {

std::string to_string(Direction d) {
  return d == Direction::MomentsFromCumulants ? "moments" : "cumulants";
}

std::string to_string(Method m) {
  switch (m) {
  case Method::Yoshida: return "yoshida";
  case Method::Mobius: return "mobius";
  case Method::Trees: return "trees";
  case Method::Lagrange: return "lagrange";
  case Method::FixedPoint: return "fixedpoint";
  }
  return "unknown";
}

namespace {

char target_prefix(Direction d) {
  return d == Direction::MomentsFromCumulants ? 'M' : 'C';
}

} // namespace

nlohmann::json TransformTable::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (int k = 1; k <= n; ++k)
    rows.push_back({{"index", k}, {"polynomial", entry(k).to_string()}});
  return {{"n", n},
          {"direction", nckit::to_string(direction)},
          {"method", nckit::to_string(method)},
          {"entries", rows}};
}

std::string TransformTable::to_csv() const {
  std::string out = "index,polynomial\n";
  for (int k = 1; k <= n; ++k)
    out += std::to_string(k) + ",\"" + entry(k).to_string() + "\"\n";
  return out;
}

std::string TransformTable::to_text() const {
  std::string out;
  for (int k = 1; k <= n; ++k)
    out += target_prefix(direction) + std::to_string(k) + " = " +
           entry(k).to_string() + "\n";
  return out;
}

bool same_entries(const TransformTable &a, const TransformTable &b) {
  return a.n == b.n && a.direction == b.direction && a.entries == b.entries;
}

TransformTable specialize(const TransformTable &t, const Assignment &a) {
  TransformTable out = t;
  for (auto &e : out.entries)
    e = e.substitute(a);
  return out;
}

Assignment free_assignment(int n) {
  Assignment a;
  for (int i = 1; i <= n; ++i)
    a.emplace(delta_var(i), Polynomial(1));
  return a;
}

Assignment boolean_assignment(int n) {
  Assignment a;
  for (int i = 1; i <= n; ++i)
    a.emplace(delta_var(i), Polynomial(0));
  return a;
}

Polynomial product_moment(const NoncrossingPartition &p) {
  Polynomial r(1);
  for (const auto &b : p.blocks())
    r *= moment(static_cast<int>(b.size()));
  return r;
}

Polynomial product_cumulant(const NoncrossingPartition &p) {
  Polynomial r(1);
  for (const auto &b : p.blocks())
    r *= cumulant(static_cast<int>(b.size()));
  return r;
}

namespace {

void require_positive(int n, const char *what) {
  if (n < 1)
    throw Error(std::string(what) + " needs n >= 1, got " + std::to_string(n));
}

std::shared_ptr<const std::vector<NoncrossingPartition>> cached_nc(int n) {
  static detail::WriteOnceCache<int, std::vector<NoncrossingPartition>> cache;
  return cache.get(n, [n] { return enumerate_nc(n); });
}

struct PrimeTreeData {
  SchroderTree tree;
  NoncrossingPartition eta;
  Polynomial weight;
  int internal;
};

std::shared_ptr<const std::vector<PrimeTreeData>> cached_prime(int n) {
  static detail::WriteOnceCache<int, std::vector<PrimeTreeData>> cache;
  return cache.get(n, [n] {
    std::vector<PrimeTreeData> out;
    for (auto &t : enumerate_prime(n)) {
      auto e = eta(t);
      auto w = weight_tree(t);
      int internal = t.tree().internal_count();
      out.push_back({std::move(t), std::move(e), std::move(w), internal});
    }
    return out;
  });
}

int sign(int exponent) { return exponent % 2 == 0 ? 1 : -1; }

} // namespace

TransformTable moments_from_cumulants(int n) {
  require_positive(n, "moments_from_cumulants");
  TransformTable t{n, Direction::MomentsFromCumulants, Method::Yoshida, {}};
  for (int k = 1; k <= n; ++k) {
    Polynomial mk;
    for (const auto &p : *cached_nc(k))
      mk += product_cumulant(p) * weight(p);
    t.entries.push_back(std::move(mk));
  }
  return t;
}

std::size_t WeightMatrix::index_of(const NoncrossingPartition &p) const {
  auto it = std::find(partitions.begin(), partitions.end(), p);
  if (it == partitions.end())
    throw GroundMismatch(p.to_string() + " is not indexed by this matrix");
  return static_cast<std::size_t>(it - partitions.begin());
}

std::vector<NoncrossingPartition> linear_extension(int n) {
  require_positive(n, "linear_extension");
  std::vector<NoncrossingPartition> order = *cached_nc(n);
  std::stable_sort(order.begin(), order.end(),
                   [](const NoncrossingPartition &a, const NoncrossingPartition &b) {
                     return a.block_count() > b.block_count();
                   });
  return order;
}

WeightMatrix zeta_matrix(int n) {
  WeightMatrix m{n, linear_extension(n), {}};
  const std::size_t size = m.size();
  m.entries.resize(size * size);
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = i; j < size; ++j)
      m.entries[i * size + j] = zeta(m.partitions[i], m.partitions[j]);
  return m;
}

namespace {

// x with zeta * x = e_target, by back substitution (zeta is upper
// unitriangular along the linear extension).
std::vector<Polynomial> solve_unitriangular(const WeightMatrix &zeta_m,
                                            std::size_t target) {
  const std::size_t size = zeta_m.size();
  std::vector<Polynomial> x(size);
  for (std::size_t ii = target + 1; ii-- > 0;) {
    Polynomial acc(ii == target ? 1 : 0);
    for (std::size_t j = ii + 1; j <= target; ++j) {
      const Polynomial &z = zeta_m.at(ii, j);
      if (!z.is_zero() && !x[j].is_zero())
        acc -= z * x[j];
    }
    x[ii] = std::move(acc);
  }
  return x;
}

} // namespace

WeightMatrix mu_matrix(int n) {
  WeightMatrix z = zeta_matrix(n);
  const std::size_t size = z.size();
  WeightMatrix mu{n, z.partitions, std::vector<Polynomial>(size * size)};
  for (std::size_t col = 0; col < size; ++col) {
    auto x = solve_unitriangular(z, col);
    for (std::size_t row = 0; row < size; ++row)
      mu.entries[row * size + col] = std::move(x[row]);
  }
  return mu;
}

std::vector<Polynomial> mu_column(int n) {
  static detail::WriteOnceCache<int, std::vector<Polynomial>> cache;
  return *cache.get(n, [n] {
    // Only the last column is needed, so zeta entries are produced lazily.
    const auto parts = linear_extension(n);
    const std::size_t size = parts.size();
    std::vector<Polynomial> x(size);
    for (std::size_t i = size; i-- > 0;) {
      Polynomial acc(i + 1 == size ? 1 : 0);
      for (std::size_t j = i + 1; j < size; ++j) {
        if (x[j].is_zero() || !leq(parts[i], parts[j]))
          continue;
        acc -= zeta_by_arcs(parts[i], parts[j]) * x[j];
      }
      x[i] = std::move(acc);
    }
    return x;
  });
}

TransformTable cumulants_from_moments_mobius(int n) {
  require_positive(n, "cumulants_from_moments_mobius");
  TransformTable t{n, Direction::CumulantsFromMoments, Method::Mobius, {}};
  for (int k = 1; k <= n; ++k) {
    const auto parts = linear_extension(k);
    const auto column = mu_column(k);
    Polynomial ck;
    for (std::size_t i = 0; i < parts.size(); ++i)
      if (!column[i].is_zero())
        ck += product_moment(parts[i]) * column[i];
    t.entries.push_back(std::move(ck));
  }
  return t;
}

Polynomial mu_column_via_trees(const NoncrossingPartition &p) {
  if (!p.is_standard())
    throw GroundMismatch("mu_column_via_trees needs ground {1..n}");
  Polynomial sum;
  for (const auto &d : *cached_prime(p.ground_size()))
    if (d.eta == p)
      sum += d.weight;
  return sum * Rational(sign(p.block_count() - 1));
}

TransformTable cumulants_from_moments_trees(int n) {
  require_positive(n, "cumulants_from_moments_trees");
  TransformTable t{n, Direction::CumulantsFromMoments, Method::Trees, {}};
  for (int k = 1; k <= n; ++k) {
    Polynomial ck;
    for (const auto &d : *cached_prime(k))
      ck += product_moment(d.eta) * d.weight * Rational(sign(d.internal - 1));
    t.entries.push_back(std::move(ck));
  }
  return t;
}

TransformTable cumulants_from_moments_trees(int n, const TreeWeight &weight_fn) {
  require_positive(n, "cumulants_from_moments_trees");
  TransformTable t{n, Direction::CumulantsFromMoments, Method::Trees, {}};
  for (int k = 1; k <= n; ++k) {
    Polynomial ck;
    for (const auto &d : *cached_prime(k))
      ck += product_moment(d.eta) * weight_fn(d.tree) *
            Rational(sign(d.internal - 1));
    t.entries.push_back(std::move(ck));
  }
  return t;
}

namespace {

// [z^k] (f * g) without forming the whole product.
Polynomial product_coeff(const LaurentSeries &f, const LaurentSeries &g, int k) {
  const int order = std::min(f.low() + g.order(), g.low() + f.order());
  if (k >= order)
    throw OutOfTruncationRange("product coefficient z^" + std::to_string(k) +
                               " beyond order " + std::to_string(order));
  Polynomial acc;
  for (int i = f.low(); i < f.order(); ++i) {
    const int j = k - i;
    if (j < g.low())
      break;
    if (j >= g.order())
      continue;
    const Polynomial &a = f.coeffs()[i - f.low()];
    const Polynomial &b = g.coeffs()[j - g.low()];
    if (!a.is_zero() && !b.is_zero())
      acc += a * b;
  }
  return acc;
}

} // namespace

// C_k = 1/(k-1) [z^-1] (M'/M^2 - 1/z^2) / (M (.) Delta)^(k-1) for k >= 2.
TransformTable cumulants_from_moments_lagrange(int n) {
  require_positive(n, "cumulants_from_moments_lagrange");
  TransformTable t{n, Direction::CumulantsFromMoments, Method::Lagrange, {}};
  t.entries.push_back(moment(1));
  if (n == 1)
    return t;

  const int truncation = n + 2;
  const LaurentSeries m = standard_series(SeriesKind::M, truncation);
  const LaurentSeries d = standard_series(SeriesKind::Delta, truncation);
  const LaurentSeries ratio = derivative(m) * power(m, -2);
  const LaurentSeries numerator =
      ratio - LaurentSeries::monomial(Polynomial(1), -2, ratio.order());
  const LaurentSeries inv_h = reciprocal(hadamard(m, d));

  LaurentSeries inv_h_power = inv_h;
  for (int k = 2; k <= n; ++k) {
    t.entries.push_back(product_coeff(numerator, inv_h_power, -1) *
                        Rational(1, k - 1));
    if (k < n)
      inv_h_power = inv_h_power * inv_h;
  }
  return t;
}

// F_k = -1/(k-1) [z] M^-(k-1), F_1 = M_1.
TransformTable free_cumulants(int n) {
  require_positive(n, "free_cumulants");
  TransformTable t{n, Direction::CumulantsFromMoments, Method::Lagrange, {}};
  t.entries.push_back(moment(1));
  const LaurentSeries m = standard_series(SeriesKind::M, n + 2);
  const LaurentSeries inv_m = reciprocal(m);
  LaurentSeries inv_power = inv_m;
  for (int k = 2; k <= n; ++k) {
    t.entries.push_back(coeff(inv_power, 1) * Rational(-1, k - 1));
    if (k < n)
      inv_power = inv_power * inv_m;
  }
  return t;
}

// B(z) = 1/z - 1/M(z).
TransformTable boolean_cumulants(int n) {
  require_positive(n, "boolean_cumulants");
  TransformTable t{n, Direction::CumulantsFromMoments, Method::Lagrange, {}};
  const LaurentSeries m = standard_series(SeriesKind::M, n + 2);
  const LaurentSeries b =
      LaurentSeries::monomial(Polynomial(1), -1, n) - reciprocal(m);
  for (int k = 1; k <= n; ++k)
    t.entries.push_back(coeff(b, k - 1));
  return t;
}

LaurentSeries moments_series_fixed_point(int order) {
  if (order < 2)
    throw Error("moments_series_fixed_point needs order >= 2");
  const LaurentSeries c = standard_series(SeriesKind::C, order - 1);
  const LaurentSeries d = standard_series(SeriesKind::Delta, order);
  const LaurentSeries one = LaurentSeries::monomial(Polynomial(1), 0, order);
  const LaurentSeries z = LaurentSeries::monomial(Polynomial(1), 1, order + 1);

  LaurentSeries m = LaurentSeries::monomial(Polynomial(1), 1, order);
  // each round fixes at least one more coefficient
  for (int round = 0; round <= order; ++round) {
    const LaurentSeries zc = z * compose(c, hadamard(m, d));
    LaurentSeries next = (z * reciprocal(one - zc)).truncated(order);
    if (next == m)
      return m;
    m = std::move(next);
  }
  throw NoConvergenceAtOrder("fixed point did not stabilise at order " +
                             std::to_string(order));
}

TransformTable moments_from_cumulants_fixed_point(int n) {
  require_positive(n, "moments_from_cumulants_fixed_point");
  const LaurentSeries m = moments_series_fixed_point(n + 2);
  TransformTable t{n, Direction::MomentsFromCumulants, Method::FixedPoint, {}};
  for (int k = 1; k <= n; ++k)
    t.entries.push_back(coeff(m, k + 1));
  return t;
}

std::vector<Rational> numeric_convert(const std::vector<Rational> &values,
                                      const std::vector<Rational> &deltas,
                                      Direction direction) {
  if (values.size() != deltas.size())
    throw LengthMismatch(std::to_string(values.size()) + " values but " +
                         std::to_string(deltas.size()) + " deltas");
  const int n = static_cast<int>(values.size());
  if (n == 0)
    return {};

  static detail::WriteOnceCache<std::pair<int, int>, TransformTable> tables;
  const auto table = tables.get({n, static_cast<int>(direction)}, [&] {
    return direction == Direction::CumulantsFromMoments
               ? cumulants_from_moments_mobius(n)
               : moments_from_cumulants(n);
  });

  Assignment a;
  for (int k = 1; k <= n; ++k) {
    Variable source = direction == Direction::CumulantsFromMoments
                          ? moment_var(k)
                          : cumulant_var(k);
    a.emplace(source, Polynomial(values[k - 1]));
    a.emplace(delta_var(k), Polynomial(deltas[k - 1]));
  }
  std::vector<Rational> out;
  for (const auto &e : table->entries) {
    auto v = e.substitute(a).as_rational();
    if (!v)
      throw Error("evaluation left free variables: " + e.to_string());
    out.push_back(*v);
  }
  return out;
}

Polynomial v_pi(const NoncrossingPartition &p) { return mu_column_via_trees(p); }

Polynomial w_rho(const NoncrossingPartition &rho) {
  if (!rho.is_standard())
    throw GroundMismatch("w_rho needs ground {1..n}");
  const int n = rho.ground_size();
  std::map<NoncrossingPartition, Polynomial> v;
  for (const auto &d : *cached_prime(n))
    v[d.eta] += d.weight;
  Polynomial w;
  for (const auto &[pi, weight_sum] : v) {
    if (!leq(rho, pi))
      continue;
    w += zeta(rho, pi) * weight_sum * Rational(sign(pi.block_count() - 1));
  }
  return w;
}

Block psi_pivot_block(const NoncrossingPartition &rho) {
  if (!rho.is_standard())
    throw GroundMismatch("psi needs ground {1..n}");
  if (rho.block_count() == 1)
    throw PreconditionViolated("psi is undefined for the one-block partition");
  const auto complement = kreweras_inv(rho);
  for (const auto &b : complement.blocks())
    if (b.size() >= 2)
      return b;
  throw PreconditionViolated("complement of " + rho.to_string() +
                             " has no block with two elements");
}

namespace {

Block checked_pivot(const Arrangement &a, const NoncrossingPartition &rho) {
  if (a.n() != rho.ground_size())
    throw GroundMismatch("arrangement and partition sizes differ");
  Block b0 = psi_pivot_block(rho);
  if (!leq(partition_of(a), kreweras_inv(rho)))
    throw PreconditionViolated("arrangement partition " +
                               partition_of(a).to_string() +
                               " is not below the complement preimage of " +
                               rho.to_string());
  return b0;
}

} // namespace

Arrangement psi(const Arrangement &a, const NoncrossingPartition &rho) {
  const Block b0 = checked_pivot(a, rho);
  const int lo = b0.front(), hi = b0.back();
  const int t_lo = a.tree_of(lo), t_hi = a.tree_of(hi);

  std::vector<ArrangedTree> trees;
  if (t_lo == t_hi) {
    const ArrangedTree &whole = a.trees()[t_lo];
    const PlaneTree &left = whole.shape.children[0];
    const PlaneTree &right = whole.shape.children[1];
    const auto split = whole.positions.begin() + left.leaf_count();
    for (int i = 0; i < a.tree_count(); ++i)
      if (i != t_lo)
        trees.push_back(a.trees()[i]);
    trees.push_back({left, {whole.positions.begin(), split}});
    trees.push_back({right, {split, whole.positions.end()}});
  } else {
    const ArrangedTree &first = a.trees()[t_lo];
    const ArrangedTree &second = a.trees()[t_hi];
    for (int i = 0; i < a.tree_count(); ++i)
      if (i != t_lo && i != t_hi)
        trees.push_back(a.trees()[i]);
    std::vector<int> positions = first.positions;
    positions.insert(positions.end(), second.positions.begin(),
                     second.positions.end());
    trees.push_back({PlaneTree::node({first.shape, second.shape}), positions});
  }
  return Arrangement(a.n(), std::move(trees));
}

bool verify_cover_identity(const Arrangement &a, const NoncrossingPartition &rho) {
  const Block b0 = checked_pivot(a, rho);
  const int lo = b0.front(), hi = b0.back();
  if (lo == 1)
    return true;
  if (a.tree_of(lo) != a.tree_of(hi))
    return verify_cover_identity(psi(a, rho), rho);

  const auto covers = cover_counts(a);
  const auto root = covers.find(VertexId{lo, hi});
  if (root == covers.end())
    return false;
  std::vector<int> hull;
  for (int x = lo; x <= hi; ++x)
    hull.push_back(x);
  const int chain = iota(restrict_to(partition_of(psi(a, rho)), hull));
  return root->second + 1 == chain - 1;
}

} // namespace nckit
