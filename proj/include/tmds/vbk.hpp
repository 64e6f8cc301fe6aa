// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "tmds/code.hpp"

namespace tmds {

struct VbkParams {
  std::size_t n = 0, k = 0;
  unsigned delta0 = 2;
  DegreeSet degrees;
  std::uint32_t q = 0;  // 0 selects the smallest power of two above the bound

  std::size_t r() const { return n - k; }
  std::size_t tau() const { return (n + delta0 - 1) / delta0; }
};

struct VbkOptions {
  std::size_t mds_sample = 20;   // sampled subsets when exhaustive would exceed 500
  std::uint32_t max_attempts = 32;
  bool validate = true;
  // Builds codes with r <= delta0; such codes are fixtures and fail certification.
  bool allow_small_r = false;
};

// Minimum field size for the base code: 6 ceil(n/2) + 2 for delta0 = 2, 18 ceil(n/delta0) + 2 otherwise.
std::uint32_t vbk_field_bound(std::size_t n, unsigned delta0);
// Smallest power of two not below the bound.
std::uint32_t vbk_default_field(std::size_t n, unsigned delta0);

// Throws ParameterError on r <= delta0 (unless allowed), degree mismatch or a
// field below the bound.
void validate_params(const VbkParams& p, bool allow_small_r = false);

// Deterministic for fixed (params, field, seed).
VbkConstants choose_constants(const VbkParams& p, const FieldPtr& f, std::uint64_t seed);

// lambda_{node, v} = Theta_x(v, y) for node = delta0 * x + y.
Elem vbk_lambda(const Field& f, const VbkConstants& c, std::size_t node, unsigned v);

Matrix vbk_parity_block(const VbkParams& p, const FieldPtr& f, const VbkConstants& c, std::size_t t,
                        std::size_t i);

std::vector<std::vector<std::size_t>> goal_partition(std::size_t n, unsigned delta0);

// Builds the code from fixed constants without validation or resampling.
CodePtr build_vbk_with(const VbkParams& p, const FieldPtr& f, const VbkConstants& c, bool allow_small_r = false);

// Chooses constants from the seed, validates the MDS property and resamples
// with seed + 1 on failure.
CodePtr build_vbk(const VbkParams& p, std::uint64_t seed, const VbkOptions& opt = {});

// Closed form of the projected interference block for the pair (failed i,
// helper j) at power t.
Matrix vbk_projection_closed_form(const ArrayCode& code, std::size_t t, std::size_t j, std::size_t i);

// Exhaustive or sampled check that the stacked erasure block is nonsingular.
// Returns the first failing erased set, if any.
std::optional<std::vector<std::size_t>> first_mds_failure(const ArrayCode& code,
                                                          const std::vector<std::vector<std::size_t>>& sets);
std::vector<std::vector<std::size_t>> mds_check_sets(std::size_t n, std::size_t r, std::size_t sample,
                                                     std::uint64_t seed, bool* exhaustive = nullptr);

// Uniform draw from [0, bound) over mt19937_64 with rejection; portable
// across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t below(std::uint64_t bound);
  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace tmds
