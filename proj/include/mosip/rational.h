#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mosip {

using Rational = mpq_class;
using Integer = mpz_class;
using Vec = std::vector<Rational>;
using Matrix = std::vector<Vec>;  // row-major, rows may be empty

Rational make_rational(long num, long den = 1);

// Accepts "3", "-7", "1/2", "-10/4" (result is canonical).
Rational parse_rational(std::string_view text);
// Comma-separated list of rationals, e.g. "0,1/2,-3".
Vec parse_vec(std::string_view text);

std::string to_string(const Rational& q);
std::string to_string(std::span<const Rational> v);

inline int sign(const Rational& q) { return sgn(q); }
double to_double(const Rational& q);

Vec zeros(std::size_t n);
Vec unit(std::size_t n, std::size_t i, const Rational& scale = 1);
Rational dot(std::span<const Rational> a, std::span<const Rational> b);
Vec add(std::span<const Rational> a, std::span<const Rational> b);
Vec sub(std::span<const Rational> a, std::span<const Rational> b);
Vec scaled(std::span<const Rational> a, const Rational& s);
void axpy(Vec& y, const Rational& s, std::span<const Rational> x);  // y += s*x
bool is_zero(std::span<const Rational> v);
Rational squared_norm(std::span<const Rational> v);
Rational max_abs(std::span<const Rational> v);

// Positive multiple of `v` with coprime integer entries; zero stays zero.
Vec primitive(std::span<const Rational> v);

// Exact Gaussian elimination helpers.
std::size_t rank(const Matrix& rows);
// Basis of {x : row'x = 0 for every row}, each basis vector primitive.
Matrix null_space(const Matrix& rows, std::size_t dim);

// Square root bounds for a nonnegative rational.
bool exact_sqrt(const Rational& q, Rational& root);
// Rational r with sqrt(q) <= r <= sqrt(q) + 2^-bits (relative to scale).
Rational sqrt_upper(const Rational& q, unsigned bits = 40);
Rational sqrt_lower(const Rational& q, unsigned bits = 40);

}  // namespace mosip
