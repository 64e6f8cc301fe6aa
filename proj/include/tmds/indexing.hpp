// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <vector>

#include "tmds/matrix.hpp"

namespace tmds {

// Digits stored most-significant first: digits[0] = a_{w-1}, digits[w-1] = a_0.
struct DigitVector {
  unsigned base = 2;
  std::vector<unsigned> digits;

  std::size_t width() const { return digits.size(); }
  // Digit at position x counted from the least significant end.
  unsigned at(std::size_t x) const { return digits[digits.size() - 1 - x]; }
  bool operator==(const DigitVector& o) const { return base == o.base && digits == o.digits; }
};

std::size_t ipow(std::size_t s, std::size_t w);

DigitVector expand(std::size_t a, unsigned s, std::size_t w);
std::size_t compose(const DigitVector& d);

DigitVector pi(const DigitVector& a, std::size_t x, unsigned u);
DigitVector phi(const DigitVector& a, std::size_t x, unsigned u);

// Integer forms of the digit maps.
unsigned digit(std::size_t a, unsigned s, std::size_t x);
std::size_t pi_index(std::size_t a, unsigned s, std::size_t x, unsigned u);
std::size_t phi_index(std::size_t a, unsigned s, std::size_t x, unsigned u);
// Removes digit x, shifting the higher digits down.
std::size_t drop_digit(std::size_t a, unsigned s, std::size_t x);

// s^{w-1} x s^w selector whose row a is the unit row e_{phi(a,x,u)}.
Matrix v_matrix(const FieldPtr& f, std::size_t x, unsigned u, unsigned s, std::size_t w);
// N' x (parts*N') selector of block u.
Matrix delta_matrix(const FieldPtr& f, unsigned u, std::size_t block, unsigned parts);
// blkdiag of alpha copies of delta_matrix.
Matrix phi_matrix(const FieldPtr& f, std::size_t alpha, unsigned u, std::size_t block, unsigned parts);

// Commutation matrix T with V_{x,u} (V_{x2,v}^T Delta_h) = T V_{x,u}, x != x2.
Matrix t_matrix(const FieldPtr& f, std::size_t x, std::size_t x2, unsigned v, unsigned h, unsigned s,
                std::size_t w);

}  // namespace tmds
