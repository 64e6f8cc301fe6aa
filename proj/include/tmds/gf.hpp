// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace tmds {

using Elem = std::uint16_t;

class FieldError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// GF(p^w) with q <= 2^16. Elements are integers encoding polynomial-basis
// coordinates in base p (coefficient of x^i is the i-th base-p digit).
class Field {
 public:
  static constexpr std::uint32_t kMaxOrder = 1u << 16;

  std::uint32_t q() const { return q_; }
  std::uint32_t characteristic() const { return p_; }
  std::uint32_t degree() const { return w_; }
  // Monic irreducible modulus, low-order coefficient first; empty for prime fields.
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }
  bool binary() const { return p_ == 2; }
  Elem primitive() const { return primitive_; }

  Elem add(Elem a, Elem b) const {
    if (p_ == 2) return static_cast<Elem>(a ^ b);
    if (!add_tab_.empty()) return add_tab_[(std::size_t(a) << shift_) | b];
    return add_slow(a, b);
  }
  Elem neg(Elem a) const { return p_ == 2 ? a : neg_tab_[a]; }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem mul(Elem a, Elem b) const {
    if (!mul_tab_.empty()) return mul_tab_[(std::size_t(a) << shift_) | b];
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const;

  // Row of the multiplication table for a fixed scalar, or nullptr when the
  // field is too large for a dense table.
  const Elem* mul_row(Elem c) const {
    return mul_tab_.empty() ? nullptr : mul_tab_.data() + (std::size_t(c) << shift_);
  }

  // dst[j] += c * src[j] for j < len.
  void axpy(Elem* dst, const Elem* src, std::size_t len, Elem c) const;
  // dst[j] = c * dst[j].
  void scale(Elem* dst, std::size_t len, Elem c) const;

  std::string describe() const;

  friend std::shared_ptr<const Field> build_field(std::uint32_t q);

 private:
  Field() = default;
  Elem add_slow(Elem a, Elem b) const;

  std::uint32_t q_ = 0, p_ = 0, w_ = 0;
  unsigned shift_ = 0;
  std::vector<std::uint32_t> modulus_;
  std::vector<Elem> exp_, log_, inv_, neg_tab_;
  std::vector<Elem> mul_tab_, add_tab_;
  Elem primitive_ = 0;
};

using FieldPtr = std::shared_ptr<const Field>;

// Deterministic construction: the modulus is the lexicographically smallest
// monic irreducible polynomial of degree w, comparing coefficient vectors as
// base-p integers. Throws FieldError when q is not a prime power or too large.
FieldPtr build_field(std::uint32_t q);

// Prime-power decomposition; returns false when q is not a prime power.
bool prime_power(std::uint32_t q, std::uint32_t& p, std::uint32_t& w);

}  // namespace tmds
