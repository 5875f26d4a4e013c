#pragma once

// Self-verification harness: every identity the library relies on, checked
// exhaustively up to a size bound.

#include <string>
#include <vector>

namespace nckit {

struct CheckResult {
  std::string name;
  bool passed = true;
  long instances = 0;   // identities checked
  std::string failure;  // first counterexample, if any
};

struct VerifyOptions {
  int max_n = 5;
  // Multiplies the weight of every tree with two or more internal vertices
  // by 2 inside the tree-sum route, to exercise the failure path.
  bool inject_weight_fault = false;
};

struct VerifyReport {
  std::vector<CheckResult> checks;

  bool passed() const;
  // nullptr when everything passed
  const CheckResult *first_failure() const;
  std::string to_text() const;
};

VerifyReport run_verification(const VerifyOptions &options);

} // namespace nckit
