#include "nckit/verify.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <sstream>

#include "nckit/cumulants.hpp"
#include "nckit/ncpart.hpp"
#include "nckit/trees.hpp"

namespace nckit {

bool VerifyReport::passed() const { return first_failure() == nullptr; }

const CheckResult *VerifyReport::first_failure() const {
  for (const auto &c : checks)
    if (!c.passed)
      return &c;
  return nullptr;
}

std::string VerifyReport::to_text() const {
  std::ostringstream out;
  for (const auto &c : checks) {
    out << (c.passed ? "PASS " : "FAIL ") << c.name << " (" << c.instances
        << " checked)";
    if (!c.passed)
      out << ": " << c.failure;
    out << '\n';
  }
  if (const auto *f = first_failure())
    out << "first failure: " << f->name << '\n';
  else
    out << "all " << checks.size() << " checks passed\n";
  return out.str();
}

namespace {

// Records instances until the first counterexample.
class Recorder {
public:
  explicit Recorder(std::string name) { result_.name = std::move(name); }

  bool ok() const { return result_.passed; }

  void expect(bool holds, const std::string &what) {
    if (!result_.passed)
      return;
    ++result_.instances;
    if (!holds) {
      result_.passed = false;
      result_.failure = what;
    }
  }

  CheckResult take() { return std::move(result_); }

private:
  CheckResult result_;
};

std::string at(int n) { return "n=" + std::to_string(n); }

CheckResult triple_agreement(int max_n, bool fault) {
  Recorder r("triple agreement");
  const TreeWeight faulty = [](const SchroderTree &t) {
    Polynomial w = weight_tree(t);
    return t.tree().internal_count() >= 2 ? w * Rational(2) : w;
  };
  for (int n = 1; n <= max_n && r.ok(); ++n) {
    const auto mobius = cumulants_from_moments_mobius(n);
    const auto trees = fault ? cumulants_from_moments_trees(n, faulty)
                             : cumulants_from_moments_trees(n);
    const auto lagrange = cumulants_from_moments_lagrange(n);
    r.expect(same_entries(mobius, trees), "mobius vs trees at " + at(n));
    r.expect(same_entries(mobius, lagrange), "mobius vs lagrange at " + at(n));
  }
  return r.take();
}

CheckResult round_trip(int max_n) {
  Recorder r("symbolic round trip");
  for (int n = 1; n <= max_n && r.ok(); ++n) {
    const auto forward = moments_from_cumulants(n);
    const auto backward = cumulants_from_moments_mobius(n);
    Assignment m_of_c, c_of_m;
    for (int k = 1; k <= n; ++k) {
      m_of_c[moment_var(k)] = forward.entry(k);
      c_of_m[cumulant_var(k)] = backward.entry(k);
    }
    for (int k = 1; k <= n; ++k) {
      r.expect(backward.entry(k).substitute(m_of_c) == cumulant(k),
               "C" + std::to_string(k) + " after M(C) at " + at(n));
      r.expect(forward.entry(k).substitute(c_of_m) == moment(k),
               "M" + std::to_string(k) + " after C(M) at " + at(n));
    }
    r.expect(same_entries(forward, moments_from_cumulants_fixed_point(n)),
             "fixed point vs partition sum at " + at(n));
  }
  return r.take();
}

CheckResult specializations(int max_n) {
  Recorder r("specializations");
  for (int n = 1; n <= max_n && r.ok(); ++n) {
    const auto delta_table = cumulants_from_moments_mobius(n);
    r.expect(same_entries(specialize(delta_table, free_assignment(n)),
                          free_cumulants(n)),
             "free at " + at(n));
    r.expect(same_entries(specialize(delta_table, boolean_assignment(n)),
                          boolean_cumulants(n)),
             "boolean at " + at(n));
  }
  return r.take();
}

CheckResult zeta_formulas(int max_n) {
  Recorder r("zeta formulas");
  for (int n = 1; n <= max_n && r.ok(); ++n) {
    const auto nc = enumerate_nc(n);
    for (const auto &p : nc)
      for (const auto &q : nc)
        r.expect(zeta(p, q) == zeta_by_arcs(p, q),
                 "zeta(" + p.to_string() + ", " + q.to_string() + ")");
  }
  return r.take();
}

CheckResult zeta_c_formulas(int max_n) {
  Recorder r("complement zeta formulas");
  for (int n = 1; n <= max_n && r.ok(); ++n) {
    const auto nc = enumerate_nc(n);
    for (const auto &a : nc)
      for (const auto &b : nc)
        r.expect(zeta_c(a, b) == zeta_c_by_blocks(a, b),
                 "zeta_c(" + a.to_string() + ", " + b.to_string() + ")");
  }
  return r.take();
}

CheckResult kreweras_checks(int max_n) {
  Recorder r("kreweras complement");
  for (int n = 1; n <= max_n && r.ok(); ++n) {
    const auto nc = enumerate_nc(n);
    std::set<NoncrossingPartition> image;
    for (const auto &p : nc) {
      const auto k = kreweras(p);
      image.insert(k);
      r.expect(kreweras_inv(k) == p, "inverse at " + p.to_string());
      r.expect(p.block_count() + k.block_count() == n + 1,
               "block count at " + p.to_string());
      r.expect(static_cast<int>(arcs(p).size()) + p.block_count() == n,
               "arcs plus blocks at " + p.to_string());
      for (const auto &q : nc)
        if (leq(p, q))
          r.expect(leq(kreweras(q), k),
                   "order reversal at " + p.to_string() + " <= " + q.to_string());
    }
    r.expect(image.size() == nc.size(), "bijectivity at " + at(n));
  }
  return r.take();
}

CheckResult tree_lemmas(int max_n) {
  Recorder r("eta and phi lemmas");
  for (int n = 1; n <= max_n && r.ok(); ++n) {
    for (const auto &t : enumerate_prime(n)) {
      const std::string id = t.tree().to_string();
      const auto a = phi(t);
      r.expect(kreweras(partition_of(a)) == eta(t), "complement of phi at " + id);
      r.expect(eta(t).block_count() == t.tree().internal_count(),
               "eta block count at " + id);
      r.expect(weight_arrangement(a) == weight_tree(t), "weight at " + id);
      r.expect(phi_inv(a) == t, "phi round trip at " + id);
    }
  }
  return r.take();
}

CheckResult cancellation(int max_n) {
  Recorder r("cancellation");
  for (int n = 1; n <= max_n && r.ok(); ++n) {
    const auto arrangements = enumerate_arrangements(n);
    for (const auto &rho : enumerate_nc(n)) {
      const Polynomial w = w_rho(rho);
      if (rho.block_count() == 1) {
        r.expect(w == Polynomial(1), "W of one block at " + at(n));
        continue;
      }
      r.expect(w.is_zero(), "W at " + rho.to_string());
      const auto target = kreweras_inv(rho);
      for (const auto &a : arrangements) {
        if (!leq(partition_of(a), target))
          continue;
        const std::string id = a.to_string() + " / " + rho.to_string();
        const auto b = psi(a, rho);
        r.expect(!(b == a), "fixed point " + id);
        r.expect(psi(b, rho) == a, "involution " + id);
        r.expect(std::abs(b.tree_count() - a.tree_count()) == 1,
                 "parity " + id);
        r.expect(zeta_c(partition_of(a), target) * weight_arrangement(a) ==
                     zeta_c(partition_of(b), target) * weight_arrangement(b),
                 "weight preservation " + id);
        r.expect(verify_cover_identity(a, rho), "cover identity " + id);
      }
    }
  }
  return r.take();
}

CheckResult positivity(int max_n) {
  Recorder r("coefficient signs");
  for (int n = 1; n <= max_n && r.ok(); ++n) {
    const auto table = cumulants_from_moments_mobius(n);
    for (int k = 1; k <= n; ++k) {
      for (const auto &[mono, c] : table.entry(k).terms()) {
        int blocks = 0;
        for (const auto &[v, e] : mono.factors())
          if (v.family == Family::Moment)
            blocks += e;
        const int s = blocks % 2 == 1 ? 1 : -1;
        r.expect(c * s > 0 && c.get_den() == 1,
                 "coefficient " + nckit::to_string(c) + " in C" +
                     std::to_string(k));
      }
    }
  }
  return r.take();
}

CheckResult counts(int max_n) {
  Recorder r("counts");
  // big Schröder numbers
  std::vector<long> big{1};
  for (int m = 1; m <= max_n; ++m) {
    long s = big[m - 1];
    for (int k = 0; k < m; ++k)
      s += big[k] * big[m - 1 - k];
    big.push_back(s);
  }
  long catalan = 1;
  for (int n = 1; n <= max_n && r.ok(); ++n) {
    catalan = catalan * 2 * (2 * n - 1) / (n + 1);
    r.expect(static_cast<long>(enumerate_nc(n).size()) == catalan,
             "noncrossing at " + at(n));
    r.expect(static_cast<long>(enumerate_interval(n).size()) == (1L << (n - 1)),
             "interval at " + at(n));
    r.expect(static_cast<long>(enumerate_schroder(n).size()) == big[n] / 2,
             "schroder at " + at(n));
    const auto prime = static_cast<long>(enumerate_prime(n).size());
    r.expect(prime == big[n - 1], "prime at " + at(n));
    r.expect(static_cast<long>(enumerate_arrangements(n).size()) == prime,
             "arrangements at " + at(n));
  }
  return r.take();
}

} // namespace

VerifyReport run_verification(const VerifyOptions &options) {
  const int n = options.max_n;
  VerifyReport report;
  report.checks.push_back(triple_agreement(n, options.inject_weight_fault));
  report.checks.push_back(round_trip(n));
  report.checks.push_back(specializations(n));
  report.checks.push_back(zeta_formulas(n));
  report.checks.push_back(zeta_c_formulas(n));
  report.checks.push_back(kreweras_checks(n));
  report.checks.push_back(tree_lemmas(n));
  report.checks.push_back(cancellation(n));
  report.checks.push_back(positivity(n));
  report.checks.push_back(counts(n));
  return report;
}

} // namespace nckit
