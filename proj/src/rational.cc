#include "mosip/rational.h"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "mosip/errors.h"

namespace mosip {

Rational make_rational(long num, long den) {
  if (den == 0) throw InputError("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

namespace {

bool valid_integer(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

Integer parse_integer(std::string_view s) {
  if (!valid_integer(s)) {
    throw InputError("not an integer: '" + std::string(s) + "'");
  }
  if (s[0] == '+') s.remove_prefix(1);
  return Integer(std::string(s), 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  text = trim(text);
  auto slash = text.find('/');
  Integer num = parse_integer(trim(text.substr(0, slash)));
  Integer den = 1;
  if (slash != std::string_view::npos) {
    den = parse_integer(trim(text.substr(slash + 1)));
  }
  if (den == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Vec parse_vec(std::string_view text) {
  Vec out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto comma = text.find(',', start);
    auto piece = text.substr(start, comma == std::string_view::npos
                                        ? std::string_view::npos
                                        : comma - start);
    out.push_back(parse_rational(piece));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string to_string(const Rational& q) { return q.get_str(); }

std::string to_string(std::span<const Rational> v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ", ";
    os << v[i].get_str();
  }
  os << ")";
  return os.str();
}

double to_double(const Rational& q) { return q.get_d(); }

Vec zeros(std::size_t n) { return Vec(n, Rational(0)); }

Vec unit(std::size_t n, std::size_t i, const Rational& scale) {
  Vec v = zeros(n);
  v[i] = scale;
  return v;
}

Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
  if (a.size() != b.size()) throw InputError("dot: dimension mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Vec add(std::span<const Rational> a, std::span<const Rational> b) {
  if (a.size() != b.size()) throw InputError("add: dimension mismatch");
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Vec sub(std::span<const Rational> a, std::span<const Rational> b) {
  if (a.size() != b.size()) throw InputError("sub: dimension mismatch");
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Vec scaled(std::span<const Rational> a, const Rational& s) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * s;
  return r;
}

void axpy(Vec& y, const Rational& s, std::span<const Rational> x) {
  if (y.size() != x.size()) throw InputError("axpy: dimension mismatch");
  if (s == 0) return;
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += s * x[i];
}

bool is_zero(std::span<const Rational> v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& q) { return q == 0; });
}

Rational squared_norm(std::span<const Rational> v) { return dot(v, v); }

Rational max_abs(std::span<const Rational> v) {
  Rational m = 0;
  for (const auto& q : v) {
    Rational a = abs(q);
    if (a > m) m = a;
  }
  return m;
}

Vec primitive(std::span<const Rational> v) {
  Integer l = 1;
  for (const auto& q : v) {
    if (q != 0) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  }
  Integer g = 0;
  std::vector<Integer> ints;
  ints.reserve(v.size());
  for (const auto& q : v) {
    Rational s = q * l;
    Integer n = s.get_num();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
    ints.push_back(n);
  }
  Vec out(v.size());
  if (g == 0) return zeros(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = Rational(ints[i] / g);
  return out;
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(Matrix& m, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < m.size(); ++c) {
    std::size_t p = row;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[row]);
    Rational inv = 1 / m[row][c];
    for (std::size_t k = 0; k < cols; ++k) m[row][k] *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][c] == 0) continue;
      Rational f = m[r][c];
      for (std::size_t k = 0; k < cols; ++k) m[r][k] -= f * m[row][k];
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

}  // namespace

std::size_t rank(const Matrix& rows) {
  if (rows.empty()) return 0;
  Matrix m = rows;
  return rref(m, rows.front().size()).size();
}

Matrix null_space(const Matrix& rows, std::size_t dim) {
  Matrix m = rows;
  for (const auto& r : m) {
    if (r.size() != dim) throw InputError("null_space: dimension mismatch");
  }
  auto pivots = rref(m, dim);
  std::vector<bool> is_pivot(dim, false);
  for (auto c : pivots) is_pivot[c] = true;
  Matrix basis;
  for (std::size_t free = 0; free < dim; ++free) {
    if (is_pivot[free]) continue;
    Vec v = zeros(dim);
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][free];
    basis.push_back(primitive(v));
  }
  return basis;
}

bool exact_sqrt(const Rational& q, Rational& root) {
  if (q < 0) return false;
  Integer n = q.get_num(), d = q.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) {
    return false;
  }
  Integer rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  root = Rational(rn, rd);
  root.canonicalize();
  return true;
}

namespace {

Rational sqrt_bound(const Rational& q, unsigned bits, bool upper) {
  if (q < 0) throw InputError("sqrt of negative rational");
  Rational exact;
  if (exact_sqrt(q, exact)) return exact;
  // sqrt(n/d) = sqrt(n*d*4^bits) / (d*2^bits)
  Integer scale = 1;
  mpz_mul_2exp(scale.get_mpz_t(), scale.get_mpz_t(), bits);
  Integer radicand = q.get_num() * q.get_den() * scale * scale;
  Integer r;
  mpz_sqrt(r.get_mpz_t(), radicand.get_mpz_t());
  if (upper) r += 1;  // not a perfect square, floor < sqrt
  Rational out(r, q.get_den() * scale);
  out.canonicalize();
  return out;
}

}  // namespace

Rational sqrt_upper(const Rational& q, unsigned bits) { return sqrt_bound(q, bits, true); }
Rational sqrt_lower(const Rational& q, unsigned bits) { return sqrt_bound(q, bits, false); }

}  // namespace mosip
