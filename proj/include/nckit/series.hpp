#pragma once

// Truncated formal Laurent series with Polynomial coefficients.
//
// A series stores coefficients for exponents low <= k < order. Everything at
// or beyond `order` is unknown, and every operation computes the largest
// order it can prove correct from its operands. Asking for a coefficient past
// the order is an error, never a silent zero.

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "nckit/poly.hpp"

namespace nckit {

class LaurentSeries {
public:
  // coeffs[i] is the coefficient of z^(low + i); requires low < order and
  // coeffs.size() == order - low.
  LaurentSeries(int low, int order, std::vector<Polynomial> coeffs);

  static LaurentSeries zero(int low, int order);
  // c * z^exponent, known exactly for all exponents below `order`.
  static LaurentSeries monomial(const Polynomial &c, int exponent, int order);

  int low() const { return low_; }
  int order() const { return order_; }
  const std::vector<Polynomial> &coeffs() const { return coeffs_; }

  // Exponent of the first nonzero known coefficient, or order() if none.
  int valuation() const;

  LaurentSeries truncated(int order) const;
  LaurentSeries substitute(const Assignment &assignment) const;

  std::string to_string() const;
  nlohmann::json to_json() const;

  // Same known range and same coefficients.
  friend bool operator==(const LaurentSeries &, const LaurentSeries &) = default;

private:
  int low_;
  int order_;
  std::vector<Polynomial> coeffs_;
};

Polynomial coeff(const LaurentSeries &f, int k);

LaurentSeries operator+(const LaurentSeries &f, const LaurentSeries &g);
LaurentSeries operator-(const LaurentSeries &f, const LaurentSeries &g);
LaurentSeries operator*(const LaurentSeries &f, const LaurentSeries &g);
LaurentSeries operator*(const LaurentSeries &f, const Polynomial &c);

LaurentSeries hadamard(const LaurentSeries &f, const LaurentSeries &g);
LaurentSeries derivative(const LaurentSeries &f);
LaurentSeries reciprocal(const LaurentSeries &f);
LaurentSeries power(const LaurentSeries &f, int k);
LaurentSeries compose(const LaurentSeries &f, const LaurentSeries &g);
LaurentSeries comp_inverse(const LaurentSeries &f);

// (1/n) [z^(n-1)] (z / f(z))^n, the n-th coefficient of the compositional
// inverse of f.
Polynomial lagrange_coeff_inverse(const LaurentSeries &f, int n);

enum class SeriesKind { M, C, Delta, F, B };

// The symbolic generating functions truncated at `order`:
//   M     = z + M1 z^2 + M2 z^3 + ...
//   Delta = z + d1 z^2 + d2 z^3 + ...
//   C     = C1 + C2 z + C3 z^2 + ...
// F and B are written in the cumulant variables, like C.
LaurentSeries standard_series(SeriesKind kind, int order);

} // namespace nckit
