#include "nckit/series.hpp"

#include <algorithm>
#include <optional>

#include "nckit/errors.hpp"

namespace nckit {

LaurentSeries::LaurentSeries(int low, int order, std::vector<Polynomial> coeffs)
    : low_(low), order_(order), coeffs_(std::move(coeffs)) {
  if (low_ >= order_)
    throw OutOfTruncationRange("series has no known coefficients (low " +
                               std::to_string(low_) + ", order " +
                               std::to_string(order_) + ")");
  if (coeffs_.size() != static_cast<std::size_t>(order_ - low_))
    throw Error("coefficient count does not match order - low");
}

LaurentSeries LaurentSeries::zero(int low, int order) {
  return LaurentSeries(low, order,
                       std::vector<Polynomial>(std::max(order - low, 0)));
}

LaurentSeries LaurentSeries::monomial(const Polynomial &c, int exponent,
                                      int order) {
  int low = std::min(exponent, order - 1);
  LaurentSeries s = zero(low, order);
  if (exponent < order)
    s.coeffs_[exponent - low] = c;
  return s;
}

int LaurentSeries::valuation() const {
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    if (!coeffs_[i].is_zero())
      return low_ + static_cast<int>(i);
  return order_;
}

LaurentSeries LaurentSeries::truncated(int order) const {
  if (order >= order_)
    return *this;
  std::vector<Polynomial> c(coeffs_.begin(), coeffs_.begin() + (order - low_));
  return LaurentSeries(low_, order, std::move(c));
}

LaurentSeries LaurentSeries::substitute(const Assignment &assignment) const {
  std::vector<Polynomial> c;
  c.reserve(coeffs_.size());
  for (const auto &p : coeffs_)
    c.push_back(p.substitute(assignment));
  return LaurentSeries(low_, order_, std::move(c));
}

std::string LaurentSeries::to_string() const {
  std::string out;
  for (int k = low_; k < order_; ++k) {
    const Polynomial &c = coeffs_[k - low_];
    if (c.is_zero())
      continue;
    if (!out.empty())
      out += " + ";
    out += '(' + c.to_string() + ')';
    if (k != 0)
      out += "*z^" + std::to_string(k);
  }
  if (!out.empty())
    out += " + ";
  return out + "O(z^" + std::to_string(order_) + ")";
}

nlohmann::json LaurentSeries::to_json() const {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto &c : coeffs_)
    coeffs.push_back(c.to_string());
  return {{"low", low_}, {"order", order_}, {"coeffs", coeffs}};
}

Polynomial coeff(const LaurentSeries &f, int k) {
  if (k >= f.order())
    throw OutOfTruncationRange("coefficient of z^" + std::to_string(k) +
                               " requested but series is only known below z^" +
                               std::to_string(f.order()));
  if (k < f.low())
    return {};
  return f.coeffs()[k - f.low()];
}

namespace {

LaurentSeries combine(const LaurentSeries &f, const LaurentSeries &g, bool negate) {
  int low = std::min(f.low(), g.low());
  int order = std::min(f.order(), g.order());
  std::vector<Polynomial> c(order - low);
  for (int k = low; k < order; ++k) {
    Polynomial v = coeff(f, k);
    if (negate)
      v -= coeff(g, k);
    else
      v += coeff(g, k);
    c[k - low] = std::move(v);
  }
  return LaurentSeries(low, order, std::move(c));
}

// multiply by z^e exactly
LaurentSeries shift(const LaurentSeries &f, int e) {
  return LaurentSeries(f.low() + e, f.order() + e, f.coeffs());
}

void require_rational_leading(const LaurentSeries &f, int v) {
  if (v >= f.order())
    throw NonUnitLeadingCoefficient(
        "series is zero to its truncation order; cannot invert");
  auto lead = coeff(f, v).as_rational();
  if (!lead || *lead == 0)
    throw NonUnitLeadingCoefficient("leading coefficient " +
                                    coeff(f, v).to_string() +
                                    " is not a nonzero rational");
}

} // namespace

LaurentSeries operator+(const LaurentSeries &f, const LaurentSeries &g) {
  return combine(f, g, false);
}

LaurentSeries operator-(const LaurentSeries &f, const LaurentSeries &g) {
  return combine(f, g, true);
}

LaurentSeries operator*(const LaurentSeries &f, const LaurentSeries &g) {
  int low = f.low() + g.low();
  int order = std::min(f.low() + g.order(), g.low() + f.order());
  std::vector<Polynomial> c(order - low);
  for (int i = f.low(); i < f.order(); ++i) {
    const Polynomial &a = f.coeffs()[i - f.low()];
    if (a.is_zero())
      continue;
    for (int j = g.low(); j < g.order() && i + j < order; ++j) {
      const Polynomial &b = g.coeffs()[j - g.low()];
      if (!b.is_zero())
        c[i + j - low] += a * b;
    }
  }
  return LaurentSeries(low, order, std::move(c));
}

LaurentSeries operator*(const LaurentSeries &f, const Polynomial &c) {
  std::vector<Polynomial> out;
  out.reserve(f.coeffs().size());
  for (const auto &a : f.coeffs())
    out.push_back(a * c);
  return LaurentSeries(f.low(), f.order(), std::move(out));
}

LaurentSeries hadamard(const LaurentSeries &f, const LaurentSeries &g) {
  int low = std::max(f.low(), g.low());
  int order = std::min(f.order(), g.order());
  if (low >= order)
    throw OutOfTruncationRange("hadamard product has no overlapping known range");
  std::vector<Polynomial> c(order - low);
  for (int k = low; k < order; ++k)
    c[k - low] = coeff(f, k) * coeff(g, k);
  return LaurentSeries(low, order, std::move(c));
}

LaurentSeries derivative(const LaurentSeries &f) {
  std::vector<Polynomial> c;
  c.reserve(f.coeffs().size());
  for (int k = f.low(); k < f.order(); ++k)
    c.push_back(f.coeffs()[k - f.low()] * Rational(k));
  return LaurentSeries(f.low() - 1, f.order() - 1, std::move(c));
}

LaurentSeries reciprocal(const LaurentSeries &f) {
  const int v = f.valuation();
  require_rational_leading(f, v);
  const Rational inv_lead = 1 / *coeff(f, v).as_rational();
  const int precision = f.order() - v;

  // f = lead * z^v * (1 + u), 1/(1+u) = sum h_k z^k with h_0 = 1.
  std::vector<Polynomial> u(precision);
  for (int i = 1; i < precision; ++i)
    u[i] = coeff(f, v + i) * inv_lead;
  std::vector<Polynomial> h(precision);
  h[0] = Polynomial(1);
  for (int k = 1; k < precision; ++k) {
    Polynomial acc;
    for (int i = 1; i <= k; ++i)
      if (!u[i].is_zero() && !h[k - i].is_zero())
        acc -= u[i] * h[k - i];
    h[k] = std::move(acc);
  }
  for (auto &p : h)
    p *= inv_lead;
  return LaurentSeries(-v, -v + precision, std::move(h));
}

LaurentSeries power(const LaurentSeries &f, int k) {
  if (k < 0)
    return power(reciprocal(f), -k);
  if (k == 0) {
    int v = f.valuation();
    int precision = v < f.order() ? f.order() - v : f.order() - f.low();
    return LaurentSeries::monomial(Polynomial(1), 0, precision);
  }
  LaurentSeries result = f;
  LaurentSeries base = f;
  --k;
  while (k > 0) {
    if (k & 1)
      result = result * base;
    k >>= 1;
    if (k > 0)
      base = base * base;
  }
  return result;
}

namespace {

// s with its stored range starting at `low`, or nullopt when a nonzero
// coefficient sits below `low` or nothing is known from `low` on.
std::optional<LaurentSeries> starting_at(const LaurentSeries &s, int low) {
  if (s.low() >= low)
    return s;
  if (s.valuation() < low || low >= s.order())
    return std::nullopt;
  std::vector<Polynomial> c(s.coeffs().begin() + (low - s.low()), s.coeffs().end());
  return LaurentSeries(low, s.order(), std::move(c));
}

} // namespace

LaurentSeries compose(const LaurentSeries &outer, const LaurentSeries &inner_in) {
  const auto inner_at = starting_at(inner_in, 1);
  if (!inner_at)
    throw PositiveValuationRequired(
        "inner series must have valuation >= 1, got " +
        std::to_string(inner_in.valuation()));
  const auto outer_at = starting_at(outer, 0);
  if (!outer_at)
    throw PositiveValuationRequired(
        "outer series must not contain negative powers");
  const LaurentSeries &f = *outer_at;
  const LaurentSeries &g = *inner_at;

  const int lg = g.low();
  const int first = std::max(f.low(), 1);
  const int order =
      std::min(f.order() * lg, (first - 1) * lg + g.order());
  const int low = f.low() == 0 ? 0 : f.low() * lg;

  LaurentSeries result = LaurentSeries::zero(low, order);
  std::vector<Polynomial> c = result.coeffs();
  if (f.low() == 0)
    c[0] = coeff(f, 0);

  if (first * lg < order && first < f.order()) {
    const LaurentSeries inner = g.truncated(std::min(g.order(), order));
    LaurentSeries gk = power(inner, first).truncated(order);
    for (int k = first; k < f.order() && k * lg < order; ++k) {
      if (k > first)
        gk = (gk * inner).truncated(order);
      const Polynomial &a = coeff(f, k);
      if (a.is_zero())
        continue;
      for (int e = gk.low(); e < gk.order(); ++e)
        c[e - low] += a * gk.coeffs()[e - gk.low()];
    }
  }
  return LaurentSeries(low, order, std::move(c));
}

namespace {

// f with the (zero) coefficients below z^1 dropped; throws NotInvertible when
// f is not z times a unit.
LaurentSeries as_invertible(const LaurentSeries &f) {
  if (f.order() < 2)
    throw NotInvertible("series must be known at least to z^1");
  for (int k = f.low(); k < 1; ++k)
    if (!coeff(f, k).is_zero())
      throw NotInvertible("series has a nonzero coefficient below z^1");
  auto a1 = coeff(f, 1).as_rational();
  if (!a1 || *a1 == 0)
    throw NotInvertible("coefficient of z must be a nonzero rational, got " +
                        coeff(f, 1).to_string());
  if (f.low() == 1)
    return f;
  return LaurentSeries(1, f.order(),
                       {f.coeffs().begin() + (1 - f.low()), f.coeffs().end()});
}

} // namespace

LaurentSeries comp_inverse(const LaurentSeries &f_in) {
  const LaurentSeries f = as_invertible(f_in);
  const int order = f.order();
  const Rational inv_a1 = 1 / *coeff(f, 1).as_rational();
  const LaurentSeries z = LaurentSeries::monomial(Polynomial(1), 1, order);

  // g <- g + (z - f(g)) / a1 fixes at least one more coefficient per round.
  LaurentSeries g = LaurentSeries::monomial(Polynomial(inv_a1), 1, order);
  for (int round = 0; round < order; ++round) {
    LaurentSeries residual = z - compose(f, g);
    if (residual.valuation() >= residual.order())
      return g;
    g = (g + residual * Polynomial(inv_a1)).truncated(order);
  }
  throw NotInvertible("compositional inverse did not stabilise");
}

Polynomial lagrange_coeff_inverse(const LaurentSeries &f_in, int n) {
  if (n < 1)
    throw Error("lagrange_coeff_inverse needs n >= 1");
  const LaurentSeries f = as_invertible(f_in);
  if (f.order() <= n)
    throw OutOfTruncationRange("series order " + std::to_string(f.order()) +
                               " too small for coefficient " + std::to_string(n));
  LaurentSeries z_over_f = shift(reciprocal(f), 1);
  return coeff(power(z_over_f, n), n - 1) * Rational(1, n);
}

LaurentSeries standard_series(SeriesKind kind, int order) {
  if (order < 1)
    throw Error("standard_series needs order >= 1");
  const bool shifted = kind == SeriesKind::M || kind == SeriesKind::Delta;
  if (shifted) {
    // sum_{n >= 0} X_n z^(n+1) with X_0 = 1
    const int low = std::min(1, order - 1);
    LaurentSeries s = LaurentSeries::zero(low, order);
    std::vector<Polynomial> c = s.coeffs();
    for (int e = 1; e < order; ++e)
      c[e - low] = kind == SeriesKind::M ? moment(e - 1) : delta(e - 1);
    return LaurentSeries(low, order, std::move(c));
  }
  // sum_{n >= 1} C_n z^(n-1)
  std::vector<Polynomial> c;
  for (int e = 0; e < order; ++e)
    c.push_back(cumulant(e + 1));
  return LaurentSeries(0, order, std::move(c));
}

} // namespace nckit
