#include "wres/scalar.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace wres {

namespace {

// Descending (deg_a0, deg_b0): the canonical term order.
bool degree_before(const Degree& x, const Degree& y) {
  if (x.a0 != y.a0) return x.a0 > y.a0;
  return x.b0 > y.b0;
}

std::string rational_string(const Rational& q) { return q.get_str(); }

}  // namespace

Rational make_rational(long num, long den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational parse_rational(const std::string& text) {
  std::string t;
  for (char ch : text)
    if (ch != ' ' && ch != '\t') t.push_back(ch);
  if (t.empty()) throw std::invalid_argument("empty rational literal");
  auto valid_int = [](const std::string& s) {
    std::size_t pos = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (pos >= s.size()) return false;
    return std::all_of(s.begin() + static_cast<std::ptrdiff_t>(pos), s.end(),
                       [](char ch) { return ch >= '0' && ch <= '9'; });
  };
  const auto slash = t.find('/');
  std::string num = t.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : t.substr(slash + 1);
  if (!num.empty() && num[0] == '+') num.erase(0, 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
    throw std::invalid_argument("malformed rational literal '" + text + "'");
  mpz_class n(num, 10), d(den, 10);
  if (d == 0) throw std::invalid_argument("rational with zero denominator: '" + text + "'");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re += o.re;
  im += o.im;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  if (sgn(im) == 0 && sgn(o.im) == 0) {
    re *= o.re;
    return *this;
  }
  Rational r = re * o.re - im * o.im;
  Rational i = re * o.im + im * o.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

GaussianRational& GaussianRational::operator*=(const Rational& q) {
  re *= q;
  if (sgn(im) != 0) im *= q;
  return *this;
}

std::string GaussianRational::to_string() const {
  if (sgn(im) == 0) return rational_string(re);
  if (sgn(re) == 0) return rational_string(im) + "*i";
  std::string out = rational_string(re);
  if (sgn(im) > 0) out += "+";
  out += rational_string(im) + "*i";
  return out;
}

std::ostream& operator<<(std::ostream& os, const GaussianRational& z) { return os << z.to_string(); }

ScalarPoly::ScalarPoly(const GaussianRational& c) {
  if (!c.is_zero()) terms_.emplace_back(Degree{}, c);
}

ScalarPoly ScalarPoly::monomial(Degree d, GaussianRational c) {
  ScalarPoly p;
  if (!c.is_zero()) p.terms_.emplace_back(d, std::move(c));
  return p;
}

ScalarPoly ScalarPoly::from_terms(std::vector<Term> terms) {
  ScalarPoly p;
  p.terms_ = std::move(terms);
  p.canonicalize();
  return p;
}

void ScalarPoly::canonicalize() {
  std::stable_sort(terms_.begin(), terms_.end(),
                   [](const Term& x, const Term& y) { return degree_before(x.first, y.first); });
  std::vector<Term> merged;
  merged.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!merged.empty() && merged.back().first == t.first)
      merged.back().second += t.second;
    else
      merged.push_back(std::move(t));
  }
  std::erase_if(merged, [](const Term& t) { return t.second.is_zero(); });
  terms_ = std::move(merged);
}

bool ScalarPoly::is_real() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.second.is_real(); });
}

bool ScalarPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].first == Degree{});
}

GaussianRational ScalarPoly::coeff(Degree d) const {
  for (const auto& t : terms_)
    if (t.first == d) return t.second;
  return {};
}

ScalarPoly& ScalarPoly::operator+=(const ScalarPoly& o) {
  if (o.terms_.empty()) return *this;
  if (terms_.empty()) {
    terms_ = o.terms_;
    return *this;
  }
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  auto it = terms_.begin();
  auto jt = o.terms_.begin();
  while (it != terms_.end() || jt != o.terms_.end()) {
    if (jt == o.terms_.end() || (it != terms_.end() && degree_before(it->first, jt->first))) {
      out.push_back(std::move(*it++));
    } else if (it == terms_.end() || degree_before(jt->first, it->first)) {
      out.push_back(*jt++);
    } else {
      GaussianRational c = std::move(it->second);
      c += jt->second;
      if (!c.is_zero()) out.emplace_back(it->first, std::move(c));
      ++it;
      ++jt;
    }
  }
  terms_ = std::move(out);
  return *this;
}

ScalarPoly operator-(ScalarPoly a) {
  for (auto& t : a.terms_) {
    t.second.re = -t.second.re;
    t.second.im = -t.second.im;
  }
  return a;
}

ScalarPoly& ScalarPoly::operator-=(const ScalarPoly& o) { return *this += -o; }

ScalarPoly operator*(const ScalarPoly& a, const ScalarPoly& b) {
  if (a.terms_.empty() || b.terms_.empty()) return {};
  std::vector<ScalarPoly::Term> prod;
  prod.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& x : a.terms_)
    for (const auto& y : b.terms_)
      prod.emplace_back(Degree{static_cast<std::uint16_t>(x.first.a0 + y.first.a0),
                               static_cast<std::uint16_t>(x.first.b0 + y.first.b0)},
                        x.second * y.second);
  if (a.terms_.size() == 1 || b.terms_.size() == 1) {
    // Monomial factor: degree order is preserved and no two products collide.
    std::erase_if(prod, [](const ScalarPoly::Term& t) { return t.second.is_zero(); });
    ScalarPoly p;
    p.terms_ = std::move(prod);
    return p;
  }
  return ScalarPoly::from_terms(std::move(prod));
}

ScalarPoly& ScalarPoly::operator*=(const ScalarPoly& o) {
  *this = *this * o;
  return *this;
}

ScalarPoly& ScalarPoly::operator*=(const GaussianRational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.second *= c;
  return *this;
}

void ScalarPoly::add_product(const ScalarPoly& x, const ScalarPoly& y) {
  if (x.terms_.empty() || y.terms_.empty()) return;
  *this += x * y;
}

void ScalarPoly::add_scaled(const GaussianRational& c, const ScalarPoly& x) {
  if (c.is_zero() || x.terms_.empty()) return;
  ScalarPoly t = x;
  t *= c;
  *this += t;
}

int ScalarPoly::common_ab_power() const {
  if (terms_.empty()) return 0;
  int k = -1;
  for (const auto& t : terms_) {
    const int here = std::min(t.first.a0, t.first.b0);
    k = k < 0 ? here : std::min(k, here);
  }
  return k;
}

ScalarPoly ScalarPoly::divide_ab_power(int k) const {
  if (k < 0) throw std::domain_error("divide_ab_power: negative power");
  ScalarPoly p = *this;
  for (auto& t : p.terms_) {
    if (t.first.a0 < k || t.first.b0 < k)
      throw std::domain_error("divide_ab_power: " + to_string() + " is not divisible by (a0*b0)^" +
                              std::to_string(k));
    t.first.a0 = static_cast<std::uint16_t>(t.first.a0 - k);
    t.first.b0 = static_cast<std::uint16_t>(t.first.b0 - k);
  }
  return p;
}

ScalarPoly ScalarPoly::multiply_ab_power(int k) const {
  if (k < 0) throw std::domain_error("multiply_ab_power: negative power");
  ScalarPoly p = *this;
  for (auto& t : p.terms_) {
    t.first.a0 = static_cast<std::uint16_t>(t.first.a0 + k);
    t.first.b0 = static_cast<std::uint16_t>(t.first.b0 + k);
  }
  return p;
}

std::string ScalarPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [deg, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    auto factor = [&](const char* name, int e) {
      if (e == 0) return;
      os << name;
      if (e > 1) os << '^' << e;
      os << '*';
    };
    factor("a0", deg.a0);
    factor("b0", deg.b0);
    os << '(' << c.to_string() << ')';
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const ScalarPoly& p) { return os << p.to_string(); }

GaussianRational poly_eval(const ScalarPoly& p, const Rational& a0, const Rational& b0) {
  GaussianRational acc;
  for (const auto& [deg, c] : p.terms()) {
    Rational w = 1;
    for (int k = 0; k < deg.a0; ++k) w *= a0;
    for (int k = 0; k < deg.b0; ++k) w *= b0;
    GaussianRational t = c;
    t *= w;
    acc += t;
  }
  return acc;
}

}  // namespace wres
