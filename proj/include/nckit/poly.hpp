#pragma once

// Exact polynomials over Q in the indexed families d_k (moments of the
// weight measure), M_k (moments) and C_k (cumulants).

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace nckit {

using Rational = mpq_class;

// Parses "p", "-p" or "p/q" into a canonical rational. Throws ParseError.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational &q);

enum class Family : std::uint8_t { Delta, Moment, Cumulant };

struct Variable {
  Family family;
  int index; // >= 1; d_0 is the constant 1 and is never a variable

  friend auto operator<=>(const Variable &, const Variable &) = default;
  friend bool operator==(const Variable &, const Variable &) = default;
};

Variable delta_var(int index);
Variable moment_var(int index);
Variable cumulant_var(int index);

// "d3", "M2", "C10"
std::string to_string(Variable v);

// Product of variables with positive exponents, kept sorted by variable.
class Monomial {
public:
  using Factor = std::pair<Variable, int>;

  Monomial() = default;
  static Monomial of(Variable v, int exponent = 1);

  const std::vector<Factor> &factors() const { return factors_; }
  bool is_one() const { return factors_.empty(); }
  int degree() const;
  int exponent(Variable v) const;

  friend Monomial operator*(const Monomial &a, const Monomial &b);

  friend bool operator==(const Monomial &, const Monomial &) = default;
  // Graded lexicographic: higher total degree is greater; ties are broken by
  // the exponent of the first differing variable (d < M < C, then index).
  friend std::strong_ordering operator<=>(const Monomial &a,
                                          const Monomial &b);

private:
  std::vector<Factor> factors_;
};

class Polynomial;
using Assignment = std::map<Variable, Polynomial>;

class Polynomial {
public:
  using Terms = std::map<Monomial, Rational>;

  Polynomial() = default;
  Polynomial(const Rational &constant);
  Polynomial(long constant) : Polynomial(Rational(constant)) {}
  Polynomial(int constant) : Polynomial(Rational(constant)) {}

  static Polynomial variable(Variable v);
  static Polynomial term(const Rational &coeff, Monomial m);

  const Terms &terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  // Returns the value when the polynomial is a constant.
  std::optional<Rational> as_rational() const;
  Rational coefficient(const Monomial &m) const;
  int degree() const;

  Polynomial &operator+=(const Polynomial &rhs);
  Polynomial &operator-=(const Polynomial &rhs);
  Polynomial &operator*=(const Polynomial &rhs);
  Polynomial &operator*=(const Rational &rhs);
  Polynomial operator-() const;

  friend Polynomial operator+(Polynomial a, const Polynomial &b) {
    return a += b;
  }
  friend Polynomial operator-(Polynomial a, const Polynomial &b) {
    return a -= b;
  }
  friend Polynomial operator*(const Polynomial &a, const Polynomial &b);
  friend Polynomial operator*(Polynomial a, const Rational &b) {
    return a *= b;
  }

  Polynomial pow(unsigned exponent) const;

  // Variables missing from the assignment are left untouched.
  Polynomial substitute(const Assignment &assignment) const;

  // Canonical text form: terms in decreasing graded-lex order,
  // e.g. "-1*d1*M1*M2 + 1*M1^3 + 3/2*M3". The zero polynomial is "0".
  std::string to_string() const;
  static Polynomial parse(std::string_view text);

  friend bool operator==(const Polynomial &, const Polynomial &) = default;

private:
  void add_term(const Monomial &m, const Rational &c);

  Terms terms_;
};

// Constant-one for index 0, the variable d_index otherwise.
Polynomial delta(int index);
Polynomial moment(int index);
Polynomial cumulant(int index);

} // namespace nckit
