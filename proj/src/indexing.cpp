// SPDX-License-Identifier: Apache-2.0
#include "tmds/indexing.hpp"

namespace tmds {

std::size_t ipow(std::size_t s, std::size_t w) {
  std::size_t out = 1;
  for (std::size_t i = 0; i < w; ++i) out *= s;
  return out;
}

DigitVector expand(std::size_t a, unsigned s, std::size_t w) {
  if (s < 2) throw DimensionError("expand: base must be at least 2");
  if (a >= ipow(s, w)) throw DimensionError("expand: value out of range");
  DigitVector d{s, std::vector<unsigned>(w, 0)};
  for (std::size_t i = 0; i < w; ++i) {
    d.digits[w - 1 - i] = static_cast<unsigned>(a % s);
    a /= s;
  }
  return d;
}

std::size_t compose(const DigitVector& d) {
  std::size_t a = 0;
  for (unsigned x : d.digits) {
    if (x >= d.base) throw DimensionError("compose: digit out of range");
    a = a * d.base + x;
  }
  return a;
}

DigitVector pi(const DigitVector& a, std::size_t x, unsigned u) {
  if (x >= a.width() || u >= a.base) throw DimensionError("pi: axis or digit out of range");
  DigitVector out = a;
  out.digits[a.width() - 1 - x] = u;
  return out;
}

DigitVector phi(const DigitVector& a, std::size_t x, unsigned u) {
  if (x > a.width() || u >= a.base) throw DimensionError("phi: axis or digit out of range");
  DigitVector out = a;
  out.digits.insert(out.digits.begin() + static_cast<std::ptrdiff_t>(a.width() - x), u);
  return out;
}

unsigned digit(std::size_t a, unsigned s, std::size_t x) {
  return static_cast<unsigned>((a / ipow(s, x)) % s);
}

std::size_t pi_index(std::size_t a, unsigned s, std::size_t x, unsigned u) {
  const std::size_t p = ipow(s, x);
  return a - digit(a, s, x) * p + u * p;
}

std::size_t phi_index(std::size_t a, unsigned s, std::size_t x, unsigned u) {
  const std::size_t p = ipow(s, x);
  return (a / p) * p * s + u * p + a % p;
}

std::size_t drop_digit(std::size_t a, unsigned s, std::size_t x) {
  const std::size_t p = ipow(s, x);
  return (a / (p * s)) * p + a % p;
}

Matrix v_matrix(const FieldPtr& f, std::size_t x, unsigned u, unsigned s, std::size_t w) {
  if (x >= w || u >= s) throw DimensionError("v_matrix: axis or digit out of range");
  const std::size_t rows = ipow(s, w - 1);
  Matrix m(f, rows, rows * s);
  for (std::size_t a = 0; a < rows; ++a) m(a, phi_index(a, s, x, u)) = 1;
  return m;
}

Matrix delta_matrix(const FieldPtr& f, unsigned u, std::size_t block, unsigned parts) {
  if (u >= parts) throw DimensionError("delta_matrix: part out of range");
  Matrix m(f, block, block * parts);
  for (std::size_t a = 0; a < block; ++a) m(a, u * block + a) = 1;
  return m;
}

Matrix phi_matrix(const FieldPtr& f, std::size_t alpha, unsigned u, std::size_t block, unsigned parts) {
  return blkdiag_repeat(delta_matrix(f, u, block, parts), alpha);
}

Matrix t_matrix(const FieldPtr& f, std::size_t x, std::size_t x2, unsigned v, unsigned h, unsigned s,
                std::size_t w) {
  if (x == x2 || x >= w || x2 >= w) throw DimensionError("t_matrix: axes must differ and lie in range");
  const std::size_t rows = ipow(s, w - 1);
  const std::size_t top = ipow(s, w - 2);
  Matrix t(f, rows, rows);
  for (std::size_t a = 0; a < rows; ++a) {
    // In the reduced index the axis x2 sits one position lower when x < x2.
    const std::size_t pos = x < x2 ? x2 - 1 : x2;
    if (digit(a, s, pos) != v) continue;
    t(a, h * top + drop_digit(a, s, pos)) = 1;
  }
  return t;
}

}  // namespace tmds
