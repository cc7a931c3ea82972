#include "wres/sphere.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>

namespace wres {

namespace {

struct Memo {
  std::mutex mu;
  std::map<std::pair<int, std::vector<int>>, Rational> table;
};

Memo& memo() {
  static Memo m;
  return m;
}

void check_alpha(Dimension dim, const std::vector<int>& alpha) {
  if (static_cast<int>(alpha.size()) != dim.n())
    throw std::invalid_argument("sphere_average: exponent vector has wrong length");
  for (int a : alpha)
    if (a < 0) throw std::invalid_argument("sphere_average: negative exponent");
}

// Recursion on the largest exponent:
// avg(alpha) = (alpha_i - 1) / (|alpha| - 2 + n) * avg(alpha - 2 e_i).
Rational compute(int n, std::vector<int> sorted) {
  int total = 0;
  for (int a : sorted) {
    if (a % 2 != 0) return 0;
    total += a;
  }
  if (total == 0) return 1;
  auto it = std::max_element(sorted.begin(), sorted.end());
  const int ai = *it;
  *it -= 2;
  std::sort(sorted.begin(), sorted.end());
  Rational rest;
  {
    auto& m = memo();
    std::unique_lock lock(m.mu);
    auto found = m.table.find({n, sorted});
    if (found != m.table.end()) {
      rest = found->second;
    } else {
      lock.unlock();
      rest = compute(n, sorted);
      lock.lock();
      m.table.emplace(std::make_pair(n, sorted), rest);
    }
  }
  Rational out = rest * make_rational(ai - 1, total - 2 + n);
  out.canonicalize();
  return out;
}

}  // namespace

Rational sphere_average(Dimension dim, const std::vector<int>& alpha) {
  check_alpha(dim, alpha);
  std::vector<int> sorted = alpha;
  std::sort(sorted.begin(), sorted.end());
  for (int a : sorted)
    if (a % 2 != 0) return 0;
  auto& m = memo();
  {
    std::lock_guard lock(m.mu);
    auto found = m.table.find({dim.n(), sorted});
    if (found != m.table.end()) return found->second;
  }
  Rational v = compute(dim.n(), sorted);
  std::lock_guard lock(m.mu);
  m.table.emplace(std::make_pair(dim.n(), sorted), v);
  return v;
}

Rational sphere_average_closed_form(Dimension dim, const std::vector<int>& alpha) {
  check_alpha(dim, alpha);
  mpz_class num = 1;
  int total = 0;
  for (int a : alpha) {
    if (a % 2 != 0) return 0;
    for (int k = a - 1; k > 0; k -= 2) num *= k;
    total += a;
  }
  mpz_class den = 1;
  for (int k = 0; k < total / 2; ++k) den *= dim.n() + 2 * k;
  Rational out(num, den);
  out.canonicalize();
  return out;
}

}  // namespace wres
