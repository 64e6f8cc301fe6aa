// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "tmds/code.hpp"

namespace tmds {

// One part f^{(instance)}[part] of a goal node's stacked data.
struct PartRef {
  std::size_t instance = 0;
  unsigned part = 0;
  auto operator<=>(const PartRef&) const = default;
};

// Ordered sets of a goal node's parts feeding the appended data; identical
// for every goal node, so it depends only on the degree set.
struct PSchedule {
  DegreeSet degrees;
  std::vector<std::size_t> l;
  // sets[j] for j in [1, m); sets[0] is unused.
  std::vector<std::vector<PartRef>> sets;
  // parts[j][a] for j in [1, m), a in [0, l_j).
  std::vector<std::vector<std::vector<PartRef>>> parts;
  // Band w with a in [l_{w+1}, l_w).
  std::size_t band(std::size_t a) const;
};

PSchedule build_pschedule(const DegreeSet& degrees);

// Empty string when P1-P3 hold, otherwise a description of the first violation.
std::string check_property1(const PSchedule& p);

// How a goal node's base instance of length N splits into delta_0 parts.
// Contiguous takes consecutive blocks of N' rows. GoalAxis takes the rows
// whose digit at the goal block's axis equals the part index; on VBK bases
// this keeps every non-goal repair matrix aligned with the appended data.
enum class PartSplit { Contiguous, GoalAxis };

// part_rows for a GoalAxis split over base-delta0 indices of width w.
std::vector<std::size_t> axis_part_rows(unsigned delta0, std::size_t w, std::size_t axis);

// Row block a of the lifted goal-node parity block minus its diagonal: the
// alpha N x (l_0 alpha N) map from g_i to the appended data of instance a.
Matrix appended_data_matrix(const ArrayCode& base, const PSchedule& sched, std::size_t t, std::size_t i,
                            std::size_t a, const std::vector<std::size_t>& part_rows = {});

// Space sharing plus appended data with goal set `goal` (subset of one
// partition block of `base`, keys taken from base.keys).
CodePtr lift_code(const CodePtr& base, const std::vector<std::size_t>& goal,
                  PartSplit split = PartSplit::GoalAxis);

// Runs lift_code once per partition block, in order.
CodePtr algorithm2(const CodePtr& base, PartSplit split = PartSplit::GoalAxis);

// Sub-packetization after all rounds without building anything.
std::uint64_t final_subpacketization(std::size_t n, unsigned delta0, const DegreeSet& degrees);

}  // namespace tmds
