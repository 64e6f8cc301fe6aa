// SPDX-License-Identifier: Apache-2.0
#include "tmds/gf.hpp"

#include <sstream>

namespace tmds {
namespace {

using Poly = std::vector<std::uint32_t>;  // low-order coefficient first

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint32_t inv_mod_p(std::uint32_t a, std::uint32_t p) {
  // p is prime, so a^(p-2) is the inverse
  std::uint64_t r = 1, b = a % p;
  for (std::uint32_t e = p - 2; e; e >>= 1) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
  }
  return static_cast<std::uint32_t>(r);
}

// Remainder of a modulo a nonzero polynomial m over GF(p).
Poly poly_mod(Poly a, const Poly& m, std::uint32_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  const std::uint32_t lead_inv = inv_mod_p(m.back(), p);
  while (a.size() >= m.size()) {
    const std::size_t shift = a.size() - m.size();
    const std::uint64_t f = std::uint64_t(a.back()) * lead_inv % p;
    for (std::size_t i = 0; i <= dm; ++i) {
      const std::uint64_t sub = f * m[i] % p;
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
    }
    trim(a);
  }
  return a;
}

Poly poly_from_index(std::uint64_t idx, std::uint32_t p, std::size_t len) {
  Poly out(len, 0);
  for (std::size_t i = 0; i < len; ++i) {
    out[i] = static_cast<std::uint32_t>(idx % p);
    idx /= p;
  }
  return out;
}

bool irreducible(const Poly& f, std::uint32_t p) {
  const std::size_t w = f.size() - 1;
  for (std::size_t d = 1; d <= w / 2; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t c = 0; c < count; ++c) {
      Poly g = poly_from_index(c, p, d);
      g.push_back(1);
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

Poly smallest_irreducible(std::uint32_t p, std::uint32_t w) {
  std::uint64_t count = 1;
  for (std::uint32_t i = 0; i < w; ++i) count *= p;
  for (std::uint64_t c = 0; c < count; ++c) {
    Poly f = poly_from_index(c, p, w);
    f.push_back(1);
    if (f[0] == 0) continue;  // divisible by x
    if (irreducible(f, p)) return f;
  }
  throw FieldError("no irreducible polynomial found");
}

}  // namespace

bool prime_power(std::uint32_t q, std::uint32_t& p, std::uint32_t& w) {
  if (q < 2) return false;
  std::uint32_t f = 0;
  for (std::uint32_t d = 2; d * d <= q; ++d) {
    if (q % d == 0) {
      f = d;
      break;
    }
  }
  if (f == 0) f = q;
  std::uint32_t rest = q;
  w = 0;
  while (rest % f == 0) {
    rest /= f;
    ++w;
  }
  p = f;
  return rest == 1;
}

FieldPtr build_field(std::uint32_t q) {
  std::uint32_t p = 0, w = 0;
  if (q > Field::kMaxOrder) throw FieldError("field order " + std::to_string(q) + " exceeds 2^16");
  if (!prime_power(q, p, w)) throw FieldError(std::to_string(q) + " is not a prime power");

  std::shared_ptr<Field> f(new Field());
  f->q_ = q;
  f->p_ = p;
  f->w_ = w;
  while ((1u << f->shift_) < q) ++f->shift_;
  if (w > 1) f->modulus_ = smallest_irreducible(p, w);

  // Slow multiplication used only while building tables.
  auto slow_mul = [&](std::uint32_t a, std::uint32_t b) -> std::uint32_t {
    if (w == 1) return static_cast<std::uint32_t>(std::uint64_t(a) * b % p);
    Poly pa = poly_from_index(a, p, w), pb = poly_from_index(b, p, w);
    Poly prod(2 * w, 0);
    for (std::uint32_t i = 0; i < w; ++i)
      for (std::uint32_t j = 0; j < w; ++j) prod[i + j] = (prod[i + j] + pa[i] * pb[j]) % p;
    Poly rem = poly_mod(prod, f->modulus_, p);
    std::uint32_t out = 0;
    for (std::size_t i = rem.size(); i-- > 0;) out = out * p + rem[i];
    return out;
  };

  // Find the smallest primitive element.
  const std::uint32_t order = q - 1;
  std::uint32_t g = 0;
  for (std::uint32_t cand = (q == 2 ? 1 : 2); cand < q; ++cand) {
    std::uint32_t x = cand, k = 1;
    while (x != 1) {
      x = slow_mul(x, cand);
      ++k;
    }
    if (k == order) {
      g = cand;
      break;
    }
  }
  if (g == 0) throw FieldError("no primitive element");
  f->primitive_ = static_cast<Elem>(g);

  f->exp_.assign(2 * std::size_t(order), 0);
  f->log_.assign(q, 0);
  std::uint32_t x = 1;
  for (std::uint32_t k = 0; k < order; ++k) {
    f->exp_[k] = static_cast<Elem>(x);
    f->exp_[k + order] = static_cast<Elem>(x);
    f->log_[x] = static_cast<Elem>(k);
    x = slow_mul(x, g);
  }
  f->inv_.assign(q, 0);
  for (std::uint32_t a = 1; a < q; ++a) f->inv_[a] = f->exp_[(order - f->log_[a]) % order];

  f->neg_tab_.assign(q, 0);
  for (std::uint32_t a = 0; a < q; ++a) {
    if (p == 2) {
      f->neg_tab_[a] = static_cast<Elem>(a);
      continue;
    }
    std::uint32_t v = a, out = 0, scale = 1;
    for (std::uint32_t i = 0; i < w; ++i) {
      out += ((p - v % p) % p) * scale;
      v /= p;
      scale *= p;
    }
    f->neg_tab_[a] = static_cast<Elem>(out);
  }

  if (q <= 256) {
    const std::size_t side = std::size_t(1) << f->shift_;
    f->mul_tab_.assign(side * side, 0);
    for (std::uint32_t a = 1; a < q; ++a)
      for (std::uint32_t b = 1; b < q; ++b)
        f->mul_tab_[(std::size_t(a) << f->shift_) | b] = f->exp_[f->log_[a] + f->log_[b]];
    if (p != 2) {
      f->add_tab_.assign(side * side, 0);
      for (std::uint32_t a = 0; a < q; ++a)
        for (std::uint32_t b = 0; b < q; ++b)
          f->add_tab_[(std::size_t(a) << f->shift_) | b] =
              f->add_slow(static_cast<Elem>(a), static_cast<Elem>(b));
    }
  }
  return f;
}

Elem Field::add_slow(Elem a, Elem b) const {
  if (w_ == 1) return static_cast<Elem>((std::uint32_t(a) + b) % p_);
  std::uint32_t x = a, y = b, out = 0, scale = 1;
  for (std::uint32_t i = 0; i < w_; ++i) {
    out += ((x % p_ + y % p_) % p_) * scale;
    x /= p_;
    y /= p_;
    scale *= p_;
  }
  return static_cast<Elem>(out);
}

Elem Field::inv(Elem a) const {
  if (a == 0) throw FieldError("inverse of zero");
  return inv_[a];
}

Elem Field::pow(Elem a, std::uint64_t e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  const std::uint64_t order = q_ - 1;
  return exp_[(std::uint64_t(log_[a]) * (e % order)) % order];
}

void Field::axpy(Elem* dst, const Elem* src, std::size_t len, Elem c) const {
  if (c == 0) return;
  if (p_ == 2) {
    if (c == 1) {
      for (std::size_t j = 0; j < len; ++j) dst[j] ^= src[j];
      return;
    }
    if (const Elem* row = mul_row(c)) {
      for (std::size_t j = 0; j < len; ++j) dst[j] ^= row[src[j]];
      return;
    }
    const std::uint32_t lc = log_[c];
    for (std::size_t j = 0; j < len; ++j)
      if (src[j]) dst[j] ^= exp_[lc + log_[src[j]]];
    return;
  }
  if (const Elem* row = mul_row(c)) {
    for (std::size_t j = 0; j < len; ++j) dst[j] = add(dst[j], row[src[j]]);
    return;
  }
  for (std::size_t j = 0; j < len; ++j)
    if (src[j]) dst[j] = add(dst[j], mul(c, src[j]));
}

void Field::scale(Elem* dst, std::size_t len, Elem c) const {
  if (c == 1) return;
  for (std::size_t j = 0; j < len; ++j) dst[j] = mul(c, dst[j]);
}

std::string Field::describe() const {
  std::ostringstream os;
  os << "GF(" << q_ << ") p=" << p_ << " w=" << w_;
  if (!modulus_.empty()) {
    os << " modulus=";
    for (std::size_t i = 0; i < modulus_.size(); ++i) os << (i ? "," : "") << modulus_[i];
  }
  return os.str();
}

}  // namespace tmds
