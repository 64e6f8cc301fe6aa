// SPDX-License-Identifier: Apache-2.0
#include "tmds/compare.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "tmds/code.hpp"
#include "tmds/vbk.hpp"

namespace tmds {

double Power::log10() const { return static_cast<double>(exponent) * std::log10(static_cast<double>(base)); }

std::string Power::str() const { return std::to_string(base) + "^" + std::to_string(exponent); }

std::uint64_t lcm_of(const std::vector<unsigned>& v) {
  std::uint64_t out = 1;
  for (unsigned x : v) out = std::lcm(out, static_cast<std::uint64_t>(x));
  return out;
}

unsigned ceil_log2(std::uint64_t q) {
  unsigned e = 0;
  while ((std::uint64_t(1) << e) < q) ++e;
  return e;
}

std::vector<CompareRow> compare_rows(std::size_t n, std::size_t k, unsigned delta0, std::vector<unsigned> degrees) {
  if (k == 0 || k >= n) throw ParameterError("need 0 < k < n");
  std::sort(degrees.begin(), degrees.end());
  if (degrees.empty() || degrees.front() != delta0) throw ParameterError("degree set must start at delta0");
  if (degrees.back() > n - k) throw ParameterError("largest degree exceeds r");
  const std::uint64_t delta = lcm_of(degrees);

  CompareRow g, yb3, yb4;
  g.code = "G";
  yb3.code = "YB3";
  yb4.code = "YB4";
  g.degrees = yb3.degrees = yb4.degrees = degrees;
  yb3.subpacketization = yb4.subpacketization = {delta, n};
  yb3.field_bound = delta * n;
  yb4.field_bound = n + 1;

  const std::size_t quarter = (n + 3) / 4;
  if (delta0 <= 4) {
    g.subpacketization = {delta, (n + delta0 - 1) / delta0};
    g.field_bound = vbk_field_bound(n, delta0);
    g.reduction = std::to_string(delta) + "^" + std::to_string(n - (n + delta0 - 1) / delta0);
  } else {
    g.subpacketization = {std::lcm<std::uint64_t>(4, delta), quarter};
    g.field_bound = 18 * quarter + 2;
    g.degrees.insert(g.degrees.begin(), 4);
    const std::string head = std::to_string(delta) + "^" + std::to_string(n - quarter);
    if (delta % 4 == 0) g.reduction = head;
    else if (delta % 2 == 0) g.reduction = head + "/2^" + std::to_string(quarter);
    else g.reduction = head + "/4^" + std::to_string(quarter);
  }

  std::vector<CompareRow> rows{g, yb3, yb4};
  for (auto& r : rows) {
    r.field_log2 = ceil_log2(r.field_bound);
    r.capacity_log10 = r.subpacketization.log10() + std::log10(static_cast<double>(r.field_log2));
  }
  for (auto& r : rows) r.ratio_to_yb4 = std::pow(10.0, r.capacity_log10 - rows[2].capacity_log10);
  return rows;
}

std::string render_compare(const std::vector<CompareRow>& rows, std::size_t n, std::size_t k) {
  std::ostringstream os;
  os << "(" << n << "," << k << ")\n";
  os << "code  degrees     N         q bound  q      capacity       ratio to YB4  reduction\n";
  for (const auto& r : rows) {
    std::string deg = "{";
    for (std::size_t i = 0; i < r.degrees.size(); ++i) deg += (i ? "," : "") + std::to_string(r.degrees[i]);
    deg += "}";
    char ratio[32];
    std::snprintf(ratio, sizeof ratio, "%.3g", r.ratio_to_yb4);
    const std::string cap = std::to_string(r.field_log2) + "x" + r.subpacketization.str();
    char line[256];
    std::snprintf(line, sizeof line, "%-5s %-11s %-9s %-8llu 2^%-4u %-14s %-13s %s\n", r.code.c_str(), deg.c_str(),
                  r.subpacketization.str().c_str(), static_cast<unsigned long long>(r.field_bound), r.field_log2,
                  cap.c_str(), ratio, r.reduction.empty() ? "-" : r.reduction.c_str());
    os << line;
  }
  return os.str();
}

}  // namespace tmds
