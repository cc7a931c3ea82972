#include "wres/curvature.hpp"

#include <json.hpp>

#include <limits>
#include <random>
#include <stdexcept>

#include "json_util.hpp"

namespace wres {

RiemannTensor::RiemannTensor(Dimension dim)
    : dim_(dim), r_(static_cast<std::size_t>(dim.n() * dim.n() * dim.n() * dim.n())) {}

std::size_t RiemannTensor::index(int i, int j, int k, int l) const {
  const int n = dim_.n();
  if (i < 1 || j < 1 || k < 1 || l < 1 || i > n || j > n || k > n || l > n)
    throw std::out_of_range("curvature index out of range");
  return static_cast<std::size_t>((((i - 1) * n + (j - 1)) * n + (k - 1)) * n + (l - 1));
}

RiemannTensor RiemannTensor::constant_curvature(Dimension dim) {
  RiemannTensor r(dim);
  const int n = dim.n();
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      if (i == j) continue;
      r.set(i, j, i, j, 1);
      r.set(i, j, j, i, -1);
    }
  return r;
}

RiemannTensor RiemannTensor::project(Dimension dim, const std::vector<Rational>& raw) {
  const int n = dim.n();
  const auto N = static_cast<std::size_t>(n);
  if (raw.size() != N * N * N * N) throw std::invalid_argument("project: raw tensor has wrong size");
  auto at = [n](const std::vector<Rational>& t, int i, int j, int k, int l) -> const Rational& {
    return t[static_cast<std::size_t>(((i * n + j) * n + k) * n + l)];
  };
  auto build = [&](auto&& f) {
    std::vector<Rational> out(raw.size());
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) out[static_cast<std::size_t>(((i * n + j) * n + k) * n + l)] = f(i, j, k, l);
    return out;
  };
  const Rational half(1, 2);
  auto t1 = build([&](int i, int j, int k, int l) { return Rational((at(raw, i, j, k, l) - at(raw, j, i, k, l)) * half); });
  auto t2 = build([&](int i, int j, int k, int l) { return Rational((at(t1, i, j, k, l) - at(t1, i, j, l, k)) * half); });
  auto t3 = build([&](int i, int j, int k, int l) { return Rational((at(t2, i, j, k, l) + at(t2, k, l, i, j)) * half); });
  // The cyclic sum of t3 is totally antisymmetric, so removing a third of it
  // enforces the first Bianchi identity without touching the other symmetries.
  const Rational third(1, 3);
  auto t4 = build([&](int i, int j, int k, int l) {
    Rational cyc = at(t3, i, j, k, l) + at(t3, i, k, l, j) + at(t3, i, l, j, k);
    return Rational(at(t3, i, j, k, l) - cyc * third);
  });
  RiemannTensor r(dim);
  r.r_ = std::move(t4);
  for (auto& q : r.r_) q.canonicalize();
  return r;
}

std::string SymmetryViolation::to_string() const {
  return symmetry + " violated at (i,j,k,l) = (" + std::to_string(i) + "," + std::to_string(j) + "," +
         std::to_string(k) + "," + std::to_string(l) + ")";
}

std::optional<SymmetryViolation> check_symmetries(const RiemannTensor& r) {
  const int n = r.dim().n();
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      for (int k = 1; k <= n; ++k)
        for (int l = 1; l <= n; ++l) {
          const Rational& x = r(i, j, k, l);
          if (x != -r(j, i, k, l)) return SymmetryViolation{"R_ijkl = -R_jikl", i, j, k, l};
          if (x != -r(i, j, l, k)) return SymmetryViolation{"R_ijkl = -R_ijlk", i, j, k, l};
          if (x != r(k, l, i, j)) return SymmetryViolation{"R_ijkl = R_klij", i, j, k, l};
        }
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      for (int k = 1; k <= n; ++k)
        for (int l = 1; l <= n; ++l)
          if (sgn(r(i, j, k, l) + r(i, k, l, j) + r(i, l, j, k)) != 0)
            return SymmetryViolation{"first Bianchi identity R_ijkl + R_iklj + R_iljk = 0", i, j, k, l};
  return std::nullopt;
}

namespace {

// SplitMix-style seeding keeps nearby seeds decorrelated.
std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed * 0x9E3779B97F4A7C15ull + stream * 0xD1B54A32D192ED03ull + 0x632BE59BD9B4E019ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return std::mt19937_64(z ^ (z >> 31));
}

Rational small_rational(std::mt19937_64& rng) {
  const long num = static_cast<long>(rng() % 19) - 9;
  const long den = static_cast<long>(rng() % 4) + 1;
  return make_rational(num, den);
}

}  // namespace

RiemannTensor random_riemann(Dimension dim, std::uint64_t seed) {
  auto rng = make_engine(seed, 0);
  const auto n = static_cast<std::size_t>(dim.n());
  std::vector<Rational> raw(n * n * n * n);
  for (auto& q : raw) q = small_rational(rng);
  return RiemannTensor::project(dim, raw);
}

FrameVector random_frame_vector(Dimension dim, std::uint64_t seed, std::uint64_t stream) {
  auto rng = make_engine(seed, stream + 1);
  std::vector<Rational> c(static_cast<std::size_t>(dim.n()));
  for (auto& q : c) q = small_rational(rng);
  return {dim, std::move(c)};
}

CurvatureContractions contract(const RiemannTensor& r) {
  const int n = r.dim().n();
  CurvatureContractions c;
  c.ricci.assign(static_cast<std::size_t>(n), std::vector<Rational>(static_cast<std::size_t>(n)));
  c.scalar_curv = 0;
  for (int a = 1; a <= n; ++a)
    for (int b = 1; b <= n; ++b) {
      Rational acc = 0;
      for (int p = 1; p <= n; ++p) acc += r(a, p, b, p);
      c.ricci[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(b - 1)] = acc;
    }
  for (int a = 0; a < n; ++a) c.scalar_curv += c.ricci[static_cast<std::size_t>(a)][static_cast<std::size_t>(a)];
  return c;
}

Rational ricci_bilinear(const CurvatureContractions& c, const FrameVector& u, const FrameVector& v) {
  if (!(u.dim() == v.dim()) || static_cast<int>(c.ricci.size()) != u.dim().n())
    throw std::invalid_argument("ricci_bilinear: dimension mismatch");
  Rational acc = 0;
  const int n = u.dim().n();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) acc += u[a] * v[b] * c.ricci[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
  return acc;
}

Rational einstein_bilinear(const RiemannTensor& r, const FrameVector& u, const FrameVector& v) {
  if (!(r.dim() == u.dim()) || !(u.dim() == v.dim()))
    throw std::invalid_argument("einstein_bilinear: dimension mismatch");
  const auto c = contract(r);
  return ricci_bilinear(c, u, v) - make_rational(1, 2) * c.scalar_curv * frame_inner(u, v);
}

std::string riemann_to_json(const RiemannTensor& r) {
  const int n = r.dim().n();
  nlohmann::json entries = nlohmann::json::array();
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      for (int k = 1; k <= n; ++k)
        for (int l = 1; l <= n; ++l) {
          const Rational& x = r(i, j, k, l);
          if (sgn(x) == 0) continue;
          entries.push_back({i, j, k, l, detail::integer_to_json(x.get_num()),
                             detail::integer_to_json(x.get_den())});
        }
  nlohmann::json doc = {{"n", n}, {"entries", entries}};
  return doc.dump();
}

RiemannTensor riemann_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("curvature file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("n") || !doc["n"].is_number_integer())
    throw std::invalid_argument("curvature file needs an integer field \"n\"");
  const Dimension dim(doc["n"].get<int>());
  RiemannTensor r(dim);
  if (!doc.contains("entries") || !doc["entries"].is_array())
    throw std::invalid_argument("curvature file needs an array field \"entries\"");
  for (const auto& e : doc["entries"]) {
    if (!e.is_array() || e.size() != 6)
      throw std::invalid_argument("curvature entry must be [i,j,k,l,num,den]: " + e.dump());
    int idx[4];
    for (int t = 0; t < 4; ++t) {
      if (!e[static_cast<std::size_t>(t)].is_number_integer())
        throw std::invalid_argument("curvature index must be an integer: " + e.dump());
      idx[t] = e[static_cast<std::size_t>(t)].get<int>();
      if (idx[t] < 1 || idx[t] > dim.n())
        throw std::invalid_argument("curvature index out of range 1.." + std::to_string(dim.n()) + ": " + e.dump());
    }
    const mpz_class num = detail::integer_from_json(e[4]);
    const mpz_class den = detail::integer_from_json(e[5]);
    if (den == 0) throw std::invalid_argument("curvature entry has zero denominator: " + e.dump());
    Rational q(num, den);
    q.canonicalize();
    r.set(idx[0], idx[1], idx[2], idx[3], q);
  }
  if (auto bad = check_symmetries(r)) throw std::invalid_argument("invalid curvature tensor: " + bad->to_string());
  return r;
}

}  // namespace wres
