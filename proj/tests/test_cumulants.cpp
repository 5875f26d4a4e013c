#include <algorithm>
#include <cstdlib>
#include <map>
#include <random>
#include <thread>

#include <gtest/gtest.h>

#include "nckit/cumulants.hpp"
#include "nckit/errors.hpp"
#include "oracles.hpp"

using namespace nckit;

namespace {

NoncrossingPartition NC(const char *s) { return NoncrossingPartition::parse(s); }
Polynomial P(const char *s) { return Polynomial::parse(s); }

// Unweighted Moebius function mu(pi, 1_n) by the defining recursion.
std::map<NoncrossingPartition, long> classical_mu(int n) {
  auto nc = enumerate_nc(n);
  std::sort(nc.begin(), nc.end(), [](const auto &a, const auto &b) {
    return a.block_count() < b.block_count();
  });
  std::map<NoncrossingPartition, long> mu;
  for (const auto &p : nc) {
    long s = 0;
    for (const auto &[q, m] : mu)
      if (leq(p, q))
        s += m;
    mu[p] = p.block_count() == 1 ? 1 : -s;
  }
  return mu;
}

// Forward sum M_n = sum over NC_n of C_pi wt(pi), evaluated numerically.
std::vector<Rational> forward_numeric(const std::vector<Rational> &c,
                                      const std::vector<Rational> &d) {
  const int n = static_cast<int>(c.size());
  Assignment a;
  for (int i = 1; i <= n; ++i) {
    a[cumulant_var(i)] = c[i - 1];
    a[delta_var(i)] = d[i - 1];
  }
  std::vector<Rational> m;
  for (int k = 1; k <= n; ++k) {
    Polynomial s;
    for (const auto &p : oracle::noncrossing_partitions(k)) {
      const NoncrossingPartition pi(p);
      s += product_cumulant(pi) * weight(pi);
    }
    m.push_back(*s.substitute(a).as_rational());
  }
  return m;
}

} // namespace

TEST(Cumulants, MomentTableGolden) {
  const auto t = moments_from_cumulants(4);
  EXPECT_EQ(t.entry(1), cumulant(1));
  EXPECT_EQ(t.entry(2), P("C2 + C1^2"));
  EXPECT_EQ(t.entry(3), cumulant(3) + (Polynomial(2) + delta(1)) * cumulant(2) * cumulant(1) +
                            cumulant(1).pow(3));
  EXPECT_EQ(t.entry(4),
            cumulant(4) + (Polynomial(2) + delta(1) * Rational(2)) * cumulant(3) * cumulant(1) +
                (Polynomial(1) + delta(2)) * cumulant(2).pow(2) +
                (Polynomial(3) + delta(1) * Rational(2) + delta(2)) * cumulant(2) *
                    cumulant(1).pow(2) +
                cumulant(1).pow(4));
}

TEST(Cumulants, CumulantTableGolden) {
  const auto t = cumulants_from_moments_mobius(4);
  const Polynomial d1 = delta(1), d2 = delta(2);
  const Polynomial m1 = moment(1), m2 = moment(2), m3 = moment(3), m4 = moment(4);
  EXPECT_EQ(t.entry(1), m1);
  EXPECT_EQ(t.entry(2), m2 - m1.pow(2));
  EXPECT_EQ(t.entry(3), m3 - (Polynomial(2) + d1) * m2 * m1 + (Polynomial(1) + d1) * m1.pow(3));
  EXPECT_EQ(t.entry(4),
            m4 - (Polynomial(2) + d1 * Rational(2)) * m3 * m1 - (Polynomial(1) + d2) * m2.pow(2) +
                (Polynomial(3) + d1 * Rational(4) + d1.pow(2) * Rational(2) + d2) * m2 *
                    m1.pow(2) -
                (Polynomial(1) + d1.pow(2) * Rational(2) + d1 * Rational(2)) * m1.pow(4));
}

TEST(Cumulants, TripleAgreement) {
  for (int n = 1; n <= 6; ++n) {
    const auto a = cumulants_from_moments_mobius(n);
    EXPECT_TRUE(same_entries(a, cumulants_from_moments_trees(n))) << n;
    EXPECT_TRUE(same_entries(a, cumulants_from_moments_lagrange(n))) << n;
  }
}

TEST(Cumulants, MethodTags) {
  EXPECT_EQ(cumulants_from_moments_trees(2).method, Method::Trees);
  EXPECT_EQ(to_string(cumulants_from_moments_lagrange(2).method), "lagrange");
  EXPECT_EQ(to_string(moments_from_cumulants(2).direction), "moments");
}

TEST(Cumulants, FaultyWeightBreaksAgreement) {
  const TreeWeight doubled = [](const SchroderTree &t) {
    return weight_tree(t) * Rational(2);
  };
  EXPECT_FALSE(same_entries(cumulants_from_moments_mobius(3),
                            cumulants_from_moments_trees(3, doubled)));
}

TEST(Cumulants, SymbolicRoundTrip) {
  for (int n = 1; n <= 6; ++n) {
    const auto fwd = moments_from_cumulants(n);
    const auto back = cumulants_from_moments_lagrange(n);
    Assignment m_of_c, c_of_m;
    for (int k = 1; k <= n; ++k) {
      m_of_c[moment_var(k)] = fwd.entry(k);
      c_of_m[cumulant_var(k)] = back.entry(k);
    }
    for (int k = 1; k <= n; ++k) {
      EXPECT_EQ(back.entry(k).substitute(m_of_c), cumulant(k));
      EXPECT_EQ(fwd.entry(k).substitute(c_of_m), moment(k));
    }
  }
}

TEST(Cumulants, FreeAndBooleanSeries) {
  EXPECT_EQ(free_cumulants(2).entry(2), P("M2 - M1^2"));
  EXPECT_EQ(boolean_cumulants(2).entry(2), P("M2 - M1^2"));
  EXPECT_EQ(free_cumulants(3).entry(3), P("M3 - 3*M2*M1 + 2*M1^3"));
  EXPECT_EQ(boolean_cumulants(3).entry(3), P("M3 - 2*M2*M1 + M1^3"));
  // the golden C3 line at d_i = 1
  EXPECT_EQ(cumulants_from_moments_mobius(3).entry(3).substitute(free_assignment(3)),
            free_cumulants(3).entry(3));
}

TEST(Cumulants, Specializations) {
  for (int n = 1; n <= 6; ++n) {
    const auto t = cumulants_from_moments_trees(n);
    EXPECT_TRUE(same_entries(specialize(t, free_assignment(n)), free_cumulants(n)));
    EXPECT_TRUE(same_entries(specialize(t, boolean_assignment(n)), boolean_cumulants(n)));
  }
}

TEST(Cumulants, LiteralBooleanIndexingIsNotBoolean) {
  // d_1 <- 1, d_(>=2) <- 0 keeps the nested arc (1,3) of 13|2, so it does not
  // give boolean cumulants from n = 3 on.
  Assignment literal{{delta_var(1), 1}, {delta_var(2), 0}, {delta_var(3), 0}};
  EXPECT_NE(cumulants_from_moments_mobius(3).entry(3).substitute(literal),
            boolean_cumulants(3).entry(3));
  EXPECT_EQ(weight(NC("13|2")).substitute(literal), Polynomial(1));
}

TEST(Cumulants, MoebiusColumnMatchesClassicalAtFreePoint) {
  for (int n = 1; n <= 6; ++n) {
    const auto mu = classical_mu(n);
    const auto order = linear_extension(n);
    const auto column = mu_column(n);
    for (std::size_t i = 0; i < order.size(); ++i)
      EXPECT_EQ(column[i].substitute(free_assignment(n)),
                Polynomial(Rational(mu.at(order[i]))))
          << order[i].to_string();
  }
}

TEST(Cumulants, ZetaMuInverse) {
  for (int n = 1; n <= 4; ++n) {
    const auto z = zeta_matrix(n);
    const auto m = mu_matrix(n);
    const std::size_t s = z.size();
    for (std::size_t i = 0; i < s; ++i) {
      EXPECT_EQ(z.at(i, i), Polynomial(1));
      for (std::size_t j = 0; j < i; ++j)
        EXPECT_TRUE(z.at(i, j).is_zero());
      for (std::size_t j = 0; j < s; ++j) {
        Polynomial sum;
        for (std::size_t k = 0; k < s; ++k)
          sum += z.at(i, k) * m.at(k, j);
        EXPECT_EQ(sum, Polynomial(i == j ? 1 : 0));
      }
    }
    // the stored column is the last column of mu
    const auto col = mu_column(n);
    const auto top = m.index_of(NoncrossingPartition::single_block(n));
    for (std::size_t i = 0; i < s; ++i)
      EXPECT_EQ(col[i], m.at(i, top));
  }
}

TEST(Cumulants, TreeSumIsTheMoebiusColumn) {
  for (int n = 1; n <= 6; ++n) {
    const auto order = linear_extension(n);
    const auto col = mu_column(n);
    for (std::size_t i = 0; i < order.size(); ++i)
      EXPECT_EQ(mu_column_via_trees(order[i]), col[i]);
  }
}

TEST(Cumulants, CoefficientSigns) {
  for (int n = 1; n <= 6; ++n) {
    const auto t = cumulants_from_moments_mobius(n);
    for (int k = 1; k <= n; ++k)
      for (const auto &[mono, c] : t.entry(k).terms()) {
        int blocks = 0;
        for (const auto &[v, e] : mono.factors())
          if (v.family == Family::Moment)
            blocks += e;
        EXPECT_EQ(c.get_den(), 1);
        EXPECT_GT(c * (blocks % 2 ? 1 : -1), 0);
      }
  }
}

TEST(Cumulants, FixedPoint) {
  const auto m = moments_series_fixed_point(6);
  EXPECT_EQ(coeff(m, 2), cumulant(1));
  EXPECT_EQ(coeff(m, 4), moments_from_cumulants(3).entry(3));
  EXPECT_TRUE(same_entries(moments_from_cumulants_fixed_point(5), moments_from_cumulants(5)));
}

TEST(Cumulants, FreeFixedPointIsTheRTransform) {
  // With every d_i = 1 the series satisfies M = z / (1 - z F(M)).
  const int order = 7;
  Assignment free = free_assignment(order);
  const auto m = moments_series_fixed_point(order).substitute(free);
  const auto f = standard_series(SeriesKind::C, order - 1);
  const auto z = LaurentSeries::monomial(Polynomial(1), 1, order + 1);
  const auto one = LaurentSeries::monomial(Polynomial(1), 0, order + 1);
  const auto rhs = z * reciprocal(one - z * compose(f, m));
  for (int k = 1; k < order; ++k)
    EXPECT_EQ(coeff(rhs, k), coeff(m, k)) << k;
}

TEST(Cumulants, NumericConvertExamples) {
  const std::vector<Rational> ones(3, 1), zeros(3, 0);
  EXPECT_EQ(numeric_convert(ones, ones, Direction::CumulantsFromMoments),
            (std::vector<Rational>{1, 0, 0}));
  EXPECT_EQ(numeric_convert(zeros, ones, Direction::CumulantsFromMoments), zeros);
  EXPECT_THROW(numeric_convert(ones, {1, 2}, Direction::CumulantsFromMoments),
               LengthMismatch);
}

TEST(Cumulants, DiracMomentsHaveOneCumulant) {
  std::mt19937 rng(5);
  for (int t = 0; t < 10; ++t) {
    const Rational m = oracle::random_rational(rng);
    std::vector<Rational> moments, deltas;
    Rational power = 1;
    for (int k = 1; k <= 6; ++k) {
      power *= m;
      moments.push_back(power);
      deltas.push_back(oracle::random_rational(rng));
    }
    const auto c = numeric_convert(moments, deltas, Direction::CumulantsFromMoments);
    EXPECT_EQ(c[0], m);
    for (int k = 1; k < 6; ++k)
      EXPECT_EQ(c[k], 0);
  }
}

TEST(Cumulants, NumericRoundTripAgainstForwardSum) {
  std::mt19937 rng(31);
  for (int t = 0; t < 20; ++t) {
    const int n = 1 + t % 6;
    std::vector<Rational> c, d;
    for (int k = 0; k < n; ++k) {
      c.push_back(oracle::random_rational(rng));
      d.push_back(oracle::random_rational(rng));
    }
    const auto m = forward_numeric(c, d);
    EXPECT_EQ(numeric_convert(c, d, Direction::MomentsFromCumulants), m);
    EXPECT_EQ(numeric_convert(m, d, Direction::CumulantsFromMoments), c);
  }
}

TEST(Cumulants, CancellationValues) {
  for (int n = 1; n <= 4; ++n) {
    EXPECT_EQ(v_pi(NoncrossingPartition::single_block(n)), Polynomial(1));
    EXPECT_EQ(w_rho(NoncrossingPartition::single_block(n)), Polynomial(1));
  }
  EXPECT_TRUE(w_rho(NoncrossingPartition::singletons(3)).is_zero());
  for (const auto &rho : enumerate_nc(5))
    if (rho.block_count() > 1)
      EXPECT_TRUE(w_rho(rho).is_zero()) << rho.to_string();
}

namespace {

// The involution figure on dots 1..15.
Arrangement psi_figure_before() {
  const PlaneTree l = PlaneTree::leaf();
  auto node = [](PlaneTree a, PlaneTree b) { return PlaneTree::node({a, b}); };
  return Arrangement(15, {{l, {1}},
                          {l, {2}},
                          {node(node(l, node(l, l)), node(l, l)), {3, 6, 7, 14, 15}},
                          {node(l, l), {4, 5}},
                          {node(l, l), {8, 11}},
                          {node(l, l), {9, 10}},
                          {node(l, l), {12, 13}}});
}

Arrangement psi_figure_after() {
  const PlaneTree l = PlaneTree::leaf();
  auto node = [](PlaneTree a, PlaneTree b) { return PlaneTree::node({a, b}); };
  return Arrangement(15, {{l, {1}},
                          {l, {2}},
                          {node(l, node(l, l)), {3, 6, 7}},
                          {node(l, l), {4, 5}},
                          {node(l, l), {8, 11}},
                          {node(l, l), {9, 10}},
                          {node(l, l), {12, 13}},
                          {node(l, l), {14, 15}}});
}

NoncrossingPartition psi_figure_rho() {
  return kreweras(NoncrossingPartition(
      {{1}, {2}, {3, 6, 7, 8, 11, 14, 15}, {4, 5}, {9, 10}, {12, 13}}));
}

} // namespace

TEST(Cumulants, PsiFigure) {
  const auto rho = psi_figure_rho();
  EXPECT_EQ(psi_pivot_block(rho), (Block{3, 6, 7, 8, 11, 14, 15}));
  const auto before = psi_figure_before(), after = psi_figure_after();
  EXPECT_EQ(psi(before, rho), after);
  EXPECT_EQ(psi(after, rho), before);
  // v0 covers v1 and v2
  EXPECT_EQ(cover_counts(before).at(VertexId{3, 15}), 2);
  EXPECT_EQ(iota(restrict_to(partition_of(after),
                             {3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15})),
            4);
  EXPECT_TRUE(verify_cover_identity(before, rho));
  EXPECT_TRUE(verify_cover_identity(after, rho));
  const auto target = kreweras_inv(rho);
  EXPECT_EQ(zeta_c(partition_of(before), target) * weight_arrangement(before),
            zeta_c(partition_of(after), target) * weight_arrangement(after));
}

TEST(Cumulants, PsiPreconditions) {
  const auto top = NoncrossingPartition::single_block(3);
  const auto a = enumerate_arrangements(3).front();
  EXPECT_THROW(psi(a, top), PreconditionViolated);
  const auto rho = NC("1|23");
  for (const auto &arr : enumerate_arrangements(3))
    if (!leq(partition_of(arr), kreweras_inv(rho)))
      EXPECT_THROW(psi(arr, rho), PreconditionViolated);
}

TEST(Cumulants, PsiIsASignReversingInvolution) {
  for (int n = 2; n <= 5; ++n) {
    const auto arrangements = enumerate_arrangements(n);
    for (const auto &rho : enumerate_nc(n)) {
      if (rho.block_count() == 1)
        continue;
      const auto target = kreweras_inv(rho);
      for (const auto &a : arrangements) {
        if (!leq(partition_of(a), target))
          continue;
        const auto b = psi(a, rho);
        ASSERT_FALSE(b == a);
        ASSERT_EQ(psi(b, rho), a);
        ASSERT_TRUE(leq(partition_of(b), target));
        ASSERT_EQ(std::abs(a.tree_count() - b.tree_count()), 1);
        ASSERT_EQ(zeta_c(partition_of(a), target) * weight_arrangement(a),
                  zeta_c(partition_of(b), target) * weight_arrangement(b));
        ASSERT_TRUE(verify_cover_identity(a, rho));
      }
    }
  }
}

TEST(Cumulants, TablesRender) {
  const auto t = cumulants_from_moments_mobius(2);
  EXPECT_EQ(t.to_text(), "C1 = 1*M1\nC2 = -1*M1^2 + 1*M2\n");
  EXPECT_EQ(t.to_csv(), "index,polynomial\n1,\"1*M1\"\n2,\"-1*M1^2 + 1*M2\"\n");
  EXPECT_EQ(t.to_json().dump(),
            R"({"direction":"cumulants","entries":[{"index":1,"polynomial":"1*M1"},)"
            R"({"index":2,"polynomial":"-1*M1^2 + 1*M2"}],"method":"mobius","n":2})");
}

TEST(Cumulants, ConcurrentTablesAgree) {
  std::vector<TransformTable> out(8);
  std::vector<std::thread> pool;
  for (int i = 0; i < 8; ++i)
    pool.emplace_back([&out, i] { out[i] = cumulants_from_moments_trees(5); });
  for (auto &t : pool)
    t.join();
  for (const auto &t : out)
    EXPECT_TRUE(same_entries(t, cumulants_from_moments_mobius(5)));
}
