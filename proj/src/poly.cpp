#include "nckit/poly.hpp"

#include <algorithm>
#include <cctype>

#include "nckit/errors.hpp"

namespace nckit {

Rational parse_rational(std::string_view text) {
  auto digits = [](std::string_view s) {
    return !s.empty() &&
           std::all_of(s.begin(), s.end(),
                       [](unsigned char c) { return std::isdigit(c) != 0; });
  };
  std::string_view body = text;
  if (!body.empty() && (body.front() == '-' || body.front() == '+'))
    body.remove_prefix(1);
  auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den =
      slash == std::string_view::npos ? std::string_view{} : body.substr(slash + 1);
  if (!digits(num) || (slash != std::string_view::npos && !digits(den)))
    throw ParseError("not an exact rational: '" + std::string(text) + "'");
  Rational q;
  q.get_num() = mpz_class(std::string(num));
  q.get_den() = den.empty() ? mpz_class(1) : mpz_class(std::string(den));
  if (q.get_den() == 0)
    throw ParseError("zero denominator in '" + std::string(text) + "'");
  q.canonicalize();
  if (text.front() == '-')
    q = -q;
  return q;
}

std::string to_string(const Rational &q) { return q.get_str(); }

namespace {

void check_index(int index) {
  if (index < 1)
    throw Error("variable index must be >= 1, got " + std::to_string(index));
}

} // namespace

Variable delta_var(int index) {
  check_index(index);
  return {Family::Delta, index};
}
Variable moment_var(int index) {
  check_index(index);
  return {Family::Moment, index};
}
Variable cumulant_var(int index) {
  check_index(index);
  return {Family::Cumulant, index};
}

std::string to_string(Variable v) {
  static constexpr char prefix[] = {'d', 'M', 'C'};
  return prefix[static_cast<int>(v.family)] + std::to_string(v.index);
}

// Monomial

Monomial Monomial::of(Variable v, int exponent) {
  Monomial m;
  if (exponent > 0)
    m.factors_.emplace_back(v, exponent);
  return m;
}

int Monomial::degree() const {
  int d = 0;
  for (const auto &[v, e] : factors_)
    d += e;
  return d;
}

int Monomial::exponent(Variable v) const {
  auto it = std::lower_bound(
      factors_.begin(), factors_.end(), v,
      [](const Factor &f, const Variable &x) { return f.first < x; });
  return it != factors_.end() && it->first == v ? it->second : 0;
}

Monomial operator*(const Monomial &a, const Monomial &b) {
  Monomial r;
  r.factors_.reserve(a.factors_.size() + b.factors_.size());
  auto i = a.factors_.begin(), j = b.factors_.begin();
  while (i != a.factors_.end() || j != b.factors_.end()) {
    if (j == b.factors_.end() || (i != a.factors_.end() && i->first < j->first)) {
      r.factors_.push_back(*i++);
    } else if (i == a.factors_.end() || j->first < i->first) {
      r.factors_.push_back(*j++);
    } else {
      r.factors_.emplace_back(i->first, i->second + j->second);
      ++i;
      ++j;
    }
  }
  return r;
}

std::strong_ordering operator<=>(const Monomial &a, const Monomial &b) {
  if (auto c = a.degree() <=> b.degree(); c != 0)
    return c;
  auto i = a.factors_.begin(), j = b.factors_.begin();
  while (i != a.factors_.end() && j != b.factors_.end()) {
    if (i->first != j->first)
      // whoever has the earlier variable has a positive exponent where the
      // other has zero
      return i->first < j->first ? std::strong_ordering::greater
                                 : std::strong_ordering::less;
    if (i->second != j->second)
      return i->second <=> j->second;
    ++i;
    ++j;
  }
  // equal degree and equal common prefix means both are exhausted
  return std::strong_ordering::equal;
}

// Polynomial

namespace {

// GMP arithmetic assumes canonical operands; callers may hand us 3/3.
Rational canonical(Rational q) {
  q.canonicalize();
  return q;
}

} // namespace

Polynomial::Polynomial(const Rational &constant) {
  if (constant != 0)
    terms_.emplace(Monomial{}, canonical(constant));
}

Polynomial Polynomial::variable(Variable v) {
  return term(Rational(1), Monomial::of(v));
}

Polynomial Polynomial::term(const Rational &coeff, Monomial m) {
  Polynomial p;
  if (coeff != 0)
    p.terms_.emplace(std::move(m), canonical(coeff));
  return p;
}

std::optional<Rational> Polynomial::as_rational() const {
  if (terms_.empty())
    return Rational(0);
  if (terms_.size() == 1 && terms_.begin()->first.is_one())
    return terms_.begin()->second;
  return std::nullopt;
}

Rational Polynomial::coefficient(const Monomial &m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

int Polynomial::degree() const {
  return terms_.empty() ? -1 : terms_.rbegin()->first.degree();
}

void Polynomial::add_term(const Monomial &m, const Rational &c) {
  if (c == 0)
    return;
  auto [it, inserted] = terms_.try_emplace(m, canonical(c));
  if (!inserted) {
    it->second += canonical(c);
    if (it->second == 0)
      terms_.erase(it);
  }
}

Polynomial &Polynomial::operator+=(const Polynomial &rhs) {
  for (const auto &[m, c] : rhs.terms_)
    add_term(m, c);
  return *this;
}

Polynomial &Polynomial::operator-=(const Polynomial &rhs) {
  for (const auto &[m, c] : rhs.terms_)
    add_term(m, -c);
  return *this;
}

Polynomial &Polynomial::operator*=(const Polynomial &rhs) {
  *this = *this * rhs;
  return *this;
}

Polynomial &Polynomial::operator*=(const Rational &rhs) {
  if (rhs == 0) {
    terms_.clear();
    return *this;
  }
  const Rational factor = canonical(rhs);
  for (auto &[m, c] : terms_)
    c *= factor;
  return *this;
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto &[m, c] : r.terms_)
    c = -c;
  return r;
}

Polynomial operator*(const Polynomial &a, const Polynomial &b) {
  Polynomial r;
  for (const auto &[ma, ca] : a.terms_)
    for (const auto &[mb, cb] : b.terms_)
      r.add_term(ma * mb, ca * cb);
  return r;
}

Polynomial Polynomial::pow(unsigned exponent) const {
  Polynomial result(1);
  Polynomial base = *this;
  while (exponent > 0) {
    if (exponent & 1u)
      result *= base;
    exponent >>= 1u;
    if (exponent > 0)
      base *= base;
  }
  return result;
}

Polynomial Polynomial::substitute(const Assignment &assignment) const {
  if (assignment.empty())
    return *this;
  Polynomial result;
  for (const auto &[m, c] : terms_) {
    Polynomial image(c);
    Monomial kept;
    for (const auto &[v, e] : m.factors()) {
      if (auto it = assignment.find(v); it != assignment.end())
        image *= it->second.pow(static_cast<unsigned>(e));
      else
        kept = kept * Monomial::of(v, e);
    }
    result += image * Polynomial::term(Rational(1), kept);
  }
  return result;
}

std::string Polynomial::to_string() const {
  if (terms_.empty())
    return "0";
  std::string out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto &[m, c] = *it;
    if (first)
      out += c < 0 ? "-" : "";
    else
      out += c < 0 ? " - " : " + ";
    first = false;
    out += nckit::to_string(Rational(abs(c)));
    for (const auto &[v, e] : m.factors()) {
      out += '*';
      out += nckit::to_string(v);
      if (e != 1)
        out += '^' + std::to_string(e);
    }
  }
  return out;
}

namespace {

class PolyParser {
public:
  explicit PolyParser(std::string_view s) : s_(s) {}

  Polynomial parse() {
    Polynomial result;
    skip_ws();
    bool negative = false;
    if (peek() == '-' || peek() == '+') {
      negative = s_[pos_] == '-';
      ++pos_;
    }
    for (;;) {
      Polynomial t = parse_term();
      result += negative ? -t : t;
      skip_ws();
      if (pos_ == s_.size())
        break;
      char op = s_[pos_];
      if (op != '+' && op != '-')
        fail("expected '+' or '-'");
      negative = op == '-';
      ++pos_;
    }
    return result;
  }

private:
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }
  [[noreturn]] void fail(const std::string &msg) const {
    throw ParseError(msg + " at offset " + std::to_string(pos_) + " in '" +
                     std::string(s_) + "'");
  }

  std::string_view take_digits() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
    if (start == pos_)
      fail("expected digits");
    return s_.substr(start, pos_ - start);
  }

  Polynomial parse_factor() {
    skip_ws();
    char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      take_digits();
      if (peek() == '/') {
        ++pos_;
        take_digits();
      }
      return Polynomial(parse_rational(s_.substr(start, pos_ - start)));
    }
    Family family;
    switch (c) {
    case 'd': family = Family::Delta; break;
    case 'M': family = Family::Moment; break;
    case 'C': family = Family::Cumulant; break;
    default: fail("expected a rational or a variable");
    }
    ++pos_;
    int index = std::stoi(std::string(take_digits()));
    Polynomial base = family == Family::Delta && index == 0
                          ? Polynomial(1)
                          : Polynomial::variable({family, index});
    if (index < 0 || (index == 0 && family != Family::Delta))
      fail("variable index must be positive");
    skip_ws();
    if (peek() == '^') {
      ++pos_;
      skip_ws();
      base = base.pow(static_cast<unsigned>(std::stoul(std::string(take_digits()))));
    }
    return base;
  }

  Polynomial parse_term() {
    Polynomial t = parse_factor();
    for (;;) {
      skip_ws();
      if (peek() != '*')
        return t;
      ++pos_;
      t *= parse_factor();
    }
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

} // namespace

Polynomial Polynomial::parse(std::string_view text) {
  return PolyParser(text).parse();
}

Polynomial delta(int index) {
  return index == 0 ? Polynomial(1) : Polynomial::variable(delta_var(index));
}
Polynomial moment(int index) {
  return index == 0 ? Polynomial(1) : Polynomial::variable(moment_var(index));
}
Polynomial cumulant(int index) {
  return Polynomial::variable(cumulant_var(index));
}

} // namespace nckit
