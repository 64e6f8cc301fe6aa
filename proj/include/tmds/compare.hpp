// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tmds {

// base^exponent kept symbolic; the headline values overflow 64 bits.
struct Power {
  std::uint64_t base = 1, exponent = 0;
  double log10() const;
  std::string str() const;  // "6^12"
};

struct CompareRow {
  std::string code;                // "G", "YB3", "YB4"
  std::vector<unsigned> degrees;
  Power subpacketization;
  std::uint64_t field_bound = 0;   // smallest admissible q
  unsigned field_log2 = 0;         // q rounded up to a power of two
  double capacity_log10 = 0;       // log10(N log2 q)
  double ratio_to_yb4 = 0;         // capacity relative to YB code 4
  std::string reduction;           // sub-packetization reduction against YB codes 3/4
};

// Rows for the transformed code and YB codes 3 and 4. For delta0 >= 5 the
// transformed code also carries degree 4.
std::vector<CompareRow> compare_rows(std::size_t n, std::size_t k, unsigned delta0, std::vector<unsigned> degrees);

std::string render_compare(const std::vector<CompareRow>& rows, std::size_t n, std::size_t k);

std::uint64_t lcm_of(const std::vector<unsigned>& v);
unsigned ceil_log2(std::uint64_t q);

}  // namespace tmds
