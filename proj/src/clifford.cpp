#include "wres/clifford.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace wres {

Dimension::Dimension(int n) : n_(n) {
  if (n < 2 || n > kMaxDim || n % 2 != 0)
    throw std::invalid_argument("dimension must be even and in [2, " + std::to_string(kMaxDim) +
                                "], got " + std::to_string(n));
}

FrameVector::FrameVector(Dimension dim, std::vector<Rational> components)
    : dim_(dim), c_(std::move(components)) {
  if (static_cast<int>(c_.size()) != dim.n())
    throw std::invalid_argument("frame vector has " + std::to_string(c_.size()) +
                                " components, dimension is " + std::to_string(dim.n()));
}

FrameVector FrameVector::zero(Dimension dim) {
  return {dim, std::vector<Rational>(static_cast<std::size_t>(dim.n()))};
}

FrameVector FrameVector::basis(Dimension dim, int j) {
  if (j < 1 || j > dim.n()) throw std::out_of_range("basis index out of range: " + std::to_string(j));
  auto v = zero(dim);
  v.c_[static_cast<std::size_t>(j - 1)] = 1;
  return v;
}

FrameVector& FrameVector::operator+=(const FrameVector& o) {
  if (!(dim_ == o.dim_)) throw std::invalid_argument("frame vector dimension mismatch");
  for (std::size_t a = 0; a < c_.size(); ++a) c_[a] += o.c_[a];
  return *this;
}

FrameVector operator*(const Rational& s, FrameVector v) {
  for (auto& x : v.c_) x *= s;
  return v;
}

std::string FrameVector::to_string() const {
  std::string out = "(";
  for (std::size_t a = 0; a < c_.size(); ++a) {
    if (a) out += ",";
    out += c_[a].get_str();
  }
  return out + ")";
}

FrameVector parse_frame_vector(Dimension dim, const std::string& text) {
  std::string s;
  for (char ch : text)
    if (ch != ' ' && ch != '\t') s += ch;
  if (s.size() >= 2 && (s[0] == 'e' || s[0] == 'E')) {
    int j = 0;
    for (std::size_t p = 1; p < s.size(); ++p) {
      if (s[p] < '0' || s[p] > '9') throw std::invalid_argument("malformed basis vector: " + text);
      j = j * 10 + (s[p] - '0');
      if (j > kMaxDim) break;
    }
    if (j < 1 || j > dim.n())
      throw std::invalid_argument("basis vector " + text + " out of range for n = " + std::to_string(dim.n()));
    return FrameVector::basis(dim, j);
  }
  std::vector<Rational> comps;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) comps.push_back(parse_rational(item));
  if (!s.empty() && s.back() == ',') throw std::invalid_argument("malformed vector: " + text);
  if (comps.size() != static_cast<std::size_t>(dim.n()))
    throw std::invalid_argument("vector " + text + " has " + std::to_string(comps.size()) + " components, expected " +
                                std::to_string(dim.n()));
  return FrameVector(dim, std::move(comps));
}

Rational frame_inner(const FrameVector& u, const FrameVector& v) {
  if (!(u.dim() == v.dim())) throw std::invalid_argument("frame vector dimension mismatch");
  Rational acc = 0;
  for (int a = 0; a < u.dim().n(); ++a) acc += u[a] * v[a];
  return acc;
}

CliffordOp::CliffordOp(Dimension dim) : dim_(dim), cols_(dim.basis_size()) {}

CliffordOp CliffordOp::identity(Dimension dim) { return scalar(dim, ScalarPoly(1)); }

CliffordOp CliffordOp::scalar(Dimension dim, const ScalarPoly& s) {
  CliffordOp op(dim);
  if (s.is_zero()) return op;
  for (std::uint32_t k = 0; k < op.size(); ++k) op.cols_[k].push_back({k, s});
  return op;
}

CliffordOp CliffordOp::monomial_matrix(Dimension dim, std::span<const std::uint32_t> rows,
                                       std::vector<ScalarPoly> values) {
  CliffordOp op(dim);
  if (rows.size() != op.size() || values.size() != op.size())
    throw std::invalid_argument("monomial_matrix: need one entry per column");
  for (std::uint32_t k = 0; k < op.size(); ++k)
    if (!values[k].is_zero()) op.cols_[k].push_back({rows[k], std::move(values[k])});
  return op;
}

void CliffordOp::check_same_dim(const CliffordOp& o, const char* what) const {
  if (!(dim_ == o.dim_))
    throw std::invalid_argument(std::string(what) + ": operator dimension mismatch (" +
                                std::to_string(dim_.n()) + " vs " + std::to_string(o.dim_.n()) + ")");
}

const ScalarPoly* CliffordOp::find(std::uint32_t row, std::uint32_t col) const {
  const auto& c = cols_.at(col);
  auto it = std::lower_bound(c.begin(), c.end(), row,
                             [](const Entry& e, std::uint32_t r) { return e.row < r; });
  if (it == c.end() || it->row != row) return nullptr;
  return &it->value;
}

ScalarPoly CliffordOp::at(std::uint32_t row, std::uint32_t col) const {
  const ScalarPoly* p = find(row, col);
  return p ? *p : ScalarPoly();
}

std::size_t CliffordOp::nonzeros() const {
  std::size_t nz = 0;
  for (const auto& c : cols_) nz += c.size();
  return nz;
}

bool CliffordOp::is_zero() const {
  return std::all_of(cols_.begin(), cols_.end(), [](const auto& c) { return c.empty(); });
}

bool CliffordOp::is_scalar() const {
  if (is_zero()) return true;
  const ScalarPoly* s = nullptr;
  for (std::uint32_t k = 0; k < size(); ++k) {
    const auto& c = cols_[k];
    if (c.size() != 1 || c[0].row != k) return false;
    if (s && !(*s == c[0].value)) return false;
    s = &c[0].value;
  }
  return true;
}

namespace {

// Merges sorted column b (scaled by s when given) into a.
void merge_column(std::vector<CliffordOp::Entry>& a, const std::vector<CliffordOp::Entry>& b,
                  const ScalarPoly* scale, bool negate) {
  if (b.empty()) return;
  std::vector<CliffordOp::Entry> out;
  out.reserve(a.size() + b.size());
  auto it = a.begin();
  auto jt = b.begin();
  auto scaled = [&](const ScalarPoly& v) {
    ScalarPoly w = scale ? v * *scale : v;
    return negate ? -std::move(w) : w;
  };
  while (it != a.end() || jt != b.end()) {
    if (jt == b.end() || (it != a.end() && it->row < jt->row)) {
      out.push_back(std::move(*it++));
    } else if (it == a.end() || jt->row < it->row) {
      ScalarPoly w = scaled(jt->value);
      if (!w.is_zero()) out.push_back({jt->row, std::move(w)});
      ++jt;
    } else {
      ScalarPoly w = std::move(it->value);
      w += scaled(jt->value);
      if (!w.is_zero()) out.push_back({it->row, std::move(w)});
      ++it;
      ++jt;
    }
  }
  a = std::move(out);
}

}  // namespace

CliffordOp& CliffordOp::operator+=(const CliffordOp& o) {
  check_same_dim(o, "operator+");
  for (std::uint32_t k = 0; k < size(); ++k) merge_column(cols_[k], o.cols_[k], nullptr, false);
  return *this;
}

CliffordOp& CliffordOp::operator-=(const CliffordOp& o) {
  check_same_dim(o, "operator-");
  for (std::uint32_t k = 0; k < size(); ++k) merge_column(cols_[k], o.cols_[k], nullptr, true);
  return *this;
}

void CliffordOp::add_scaled(const ScalarPoly& s, const CliffordOp& o) {
  check_same_dim(o, "add_scaled");
  if (s.is_zero()) return;
  for (std::uint32_t k = 0; k < size(); ++k) merge_column(cols_[k], o.cols_[k], &s, false);
}

CliffordOp& CliffordOp::operator*=(const ScalarPoly& s) {
  if (s.is_zero()) {
    for (auto& c : cols_) c.clear();
    return *this;
  }
  for (auto& c : cols_) {
    for (auto& e : c) e.value *= s;
    std::erase_if(c, [](const Entry& e) { return e.value.is_zero(); });
  }
  return *this;
}

CliffordOp operator-(CliffordOp a) {
  for (auto& c : a.cols_)
    for (auto& e : c) e.value = -std::move(e.value);
  return a;
}

CliffordOp operator*(const CliffordOp& a, const CliffordOp& b) {
  a.check_same_dim(b, "op_mul");
  const std::uint32_t n = a.size();
  CliffordOp out(a.dim_);
  std::vector<ScalarPoly> acc(n);
  std::vector<char> touched(n, 0);
  std::vector<std::uint32_t> rows;
  for (std::uint32_t j = 0; j < n; ++j) {
    rows.clear();
    for (const auto& [k, bkj] : b.cols_[j]) {
      for (const auto& [i, aik] : a.cols_[k]) {
        if (!touched[i]) {
          touched[i] = 1;
          rows.push_back(i);
        }
        acc[i].add_product(aik, bkj);
      }
    }
    std::sort(rows.begin(), rows.end());
    auto& col = out.cols_[j];
    for (std::uint32_t i : rows) {
      if (!acc[i].is_zero()) col.push_back({i, std::move(acc[i])});
      acc[i] = ScalarPoly();
      touched[i] = 0;
    }
  }
  return out;
}

bool operator==(const CliffordOp& a, const CliffordOp& b) {
  if (!(a.dim_ == b.dim_)) return false;
  // Entries that cancelled to zero may still be stored.
  for (std::uint32_t k = 0; k < a.size(); ++k) {
    const auto& ca = a.cols_[k];
    const auto& cb = b.cols_[k];
    auto ia = ca.begin(), ib = cb.begin();
    while (true) {
      while (ia != ca.end() && ia->value.is_zero()) ++ia;
      while (ib != cb.end() && ib->value.is_zero()) ++ib;
      if (ia == ca.end() || ib == cb.end()) {
        if (ia != ca.end() || ib != cb.end()) return false;
        break;
      }
      if (ia->row != ib->row || !(ia->value == ib->value)) return false;
      ++ia;
      ++ib;
    }
  }
  return true;
}

CliffordOp CliffordOp::evaluated(const Rational& a0, const Rational& b0) const {
  CliffordOp out(dim_);
  for (std::uint32_t k = 0; k < size(); ++k)
    for (const auto& e : cols_[k]) {
      ScalarPoly v(poly_eval(e.value, a0, b0));
      if (!v.is_zero()) out.cols_[k].push_back({e.row, std::move(v)});
    }
  return out;
}

std::vector<std::vector<std::string>> CliffordOp::to_rows() const {
  std::vector<std::vector<std::string>> rows(size(), std::vector<std::string>(size(), "0"));
  for (std::uint32_t k = 0; k < size(); ++k)
    for (const auto& e : cols_[k]) rows[e.row][k] = e.value.to_string();
  return rows;
}

std::string CliffordOp::fingerprint() const {
  if (is_zero()) return "0";
  if (is_scalar()) return "id*(" + cols_[0][0].value.to_string() + ")";
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](const std::string& s) {
    for (unsigned char ch : s) {
      h ^= ch;
      h *= 1099511628211ull;
    }
  };
  for (std::uint32_t k = 0; k < size(); ++k)
    for (const auto& e : cols_[k]) mix(std::to_string(k) + ":" + std::to_string(e.row) + "=" +
                                       e.value.to_string() + ";");
  char buf[32];
  std::snprintf(buf, sizeof buf, "op#%016llx", static_cast<unsigned long long>(h));
  return buf;
}

CliffordOp op_mul(const CliffordOp& a, const CliffordOp& b) { return a * b; }

ScalarPoly op_trace(const CliffordOp& a) {
  ScalarPoly t;
  for (std::uint32_t k = 0; k < a.size(); ++k)
    if (const ScalarPoly* p = a.find(k, k)) t += *p;
  return t;
}

ScalarPoly op_trace_product(const CliffordOp& a, const CliffordOp& b) {
  if (!(a.dim() == b.dim())) throw std::invalid_argument("op_trace_product: operator dimension mismatch");
  // tr(AB) = sum_j sum_k A[j,k] B[k,j]
  ScalarPoly t;
  for (std::uint32_t j = 0; j < b.size(); ++j)
    for (const auto& [k, bkj] : b.column(j))
      if (const ScalarPoly* ajk = a.find(j, k)) t.add_product(*ajk, bkj);
  return t;
}

namespace {

void check_index(Dimension dim, int j) {
  if (j < 1 || j > dim.n())
    throw std::out_of_range("frame index " + std::to_string(j) + " out of range 1.." +
                            std::to_string(dim.n()));
}

// Sign (-1)^{#{k in S : k < j}} of moving e_j^* past the smaller factors of S.
int wedge_sign(std::uint32_t subset, int j) {
  const std::uint32_t below = subset & ((1u << (j - 1)) - 1u);
  return (std::popcount(below) % 2 == 0) ? 1 : -1;
}

// a * eps_j + b * iota_j as a monomial matrix: each basis subset S maps to
// S xor {j}, through eps when j is absent and iota when present.
CliffordOp ext_int_combination(Dimension dim, int j, const ScalarPoly& a, const ScalarPoly& b) {
  check_index(dim, j);
  const std::uint32_t n = dim.basis_size();
  const std::uint32_t bit = 1u << (j - 1);
  std::vector<std::uint32_t> rows(n);
  std::vector<ScalarPoly> vals(n);
  for (std::uint32_t s = 0; s < n; ++s) {
    rows[s] = s ^ bit;
    const ScalarPoly& w = (s & bit) ? b : a;
    vals[s] = wedge_sign(s, j) > 0 ? w : -w;
  }
  return CliffordOp::monomial_matrix(dim, rows, std::move(vals));
}

}  // namespace

CliffordOp ext_op(Dimension dim, int j) { return ext_int_combination(dim, j, 1, 0); }
CliffordOp int_op(Dimension dim, int j) { return ext_int_combination(dim, j, 0, 1); }
CliffordOp c_op(Dimension dim, int j) { return ext_int_combination(dim, j, 1, -1); }
CliffordOp hatc_op(Dimension dim, int j) { return ext_int_combination(dim, j, 1, 1); }
CliffordOp tildec_op(Dimension dim, int j) {
  return ext_int_combination(dim, j, ScalarPoly::a0(), -ScalarPoly::b0());
}

CliffordOp clifford_op(CliffordKind kind, Dimension dim, int j) {
  switch (kind) {
    case CliffordKind::c: return c_op(dim, j);
    case CliffordKind::hat: return hatc_op(dim, j);
    case CliffordKind::tilde: return tildec_op(dim, j);
  }
  throw std::invalid_argument("unknown Clifford kind");
}

CliffordOp vector_clifford(CliffordKind kind, const FrameVector& u) {
  const Dimension dim = u.dim();
  CliffordOp out(dim);
  for (int a = 0; a < dim.n(); ++a)
    if (sgn(u[a]) != 0) out.add_scaled(ScalarPoly(u[a]), clifford_op(kind, dim, a + 1));
  return out;
}

CliffordOp anticommutator(const CliffordOp& a, const CliffordOp& b) { return a * b + b * a; }

}  // namespace wres
