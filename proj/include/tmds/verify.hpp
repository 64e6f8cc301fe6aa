// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tmds/codec.hpp"
#include "tmds/transform.hpp"
#include "tmds/vbk.hpp"

namespace tmds {

struct PropertyReport {
  std::string property;
  bool exhaustive = true;
  std::uint64_t checked = 0;  // cases examined
  std::uint64_t total = 0;    // cases in the full scope
  bool pass = true;
  std::vector<std::size_t> counterexample;  // indices of the first failing case
  std::string detail;

  std::string scope() const;
  // Records the first failure only.
  void fail(std::vector<std::size_t> where, std::string why);
};

// Scope control: subsets are enumerated exhaustively up to `exhaustive_limit`
// and sampled with `seed` above it, or always sampled when `force_sample`.
struct CheckOptions {
  std::uint64_t exhaustive_limit = 500;
  std::size_t sample = 20;
  std::uint64_t seed = 1;
  bool force_sample = false;
};

PropertyReport check_mds(const ArrayCode& code, const CheckOptions& opt = {});

// C1: S_{j,0} K_{t,i,v} = 0 for distinct i, j in the block.
PropertyReport check_c1(const ArrayCode& code, const std::vector<std::size_t>& block);
// C2: M_{i,D} nonsingular for every i in the block, z in [1, m) and D.
PropertyReport check_c2(const ArrayCode& code, const std::vector<std::size_t>& block, const CheckOptions& opt = {});
// C3 at degree z: rank [R_i; S_i K_{t,j,v} Phi_u] = rows of R_i for every
// node i outside the block, j inside, and every t, v, u.
PropertyReport check_c3(const ArrayCode& code, const std::vector<std::size_t>& block, std::size_t z = 0,
                        PartSplit split = PartSplit::GoalAxis);

// Encodes seeded random data: k data fragments of L x stripes symbols.
Fragments random_codeword(const ArrayCode& code, std::size_t stripes, std::uint64_t seed);

// MDS, optimal repair of every node at delta_0, and C1-C3 per partition
// block; check_tmds folds the suite into one verdict.
std::vector<PropertyReport> tmds_suite(const ArrayCode& code, const CheckOptions& opt = {});
PropertyReport check_tmds(const ArrayCode& code, const CheckOptions& opt = {});

// Repairs every node at every degree it supports over all helper sets (or a
// sample) and requires exact recovery with download = bound = access.
PropertyReport check_repair_bound(const ArrayCode& code, const CheckOptions& opt = {});

// Selector identities over base s, width w: V V^T = I, V_{x,u} V_{x,v}^T = 0,
// and V_{x,u} (V_{x2,v}^T Delta_h) = T V_{x,u} with T from t_matrix.
PropertyReport check_lemma5(unsigned s, std::size_t w);
// Same commutation with the part selector along axis x2 (V_{x2,h} in place
// of Delta_h); this is the split lift_code uses by default.
PropertyReport check_lemma5_axis(unsigned s, std::size_t w);

// Entrywise comparison of interference_projection with the closed form.
PropertyReport check_projection_closed_form(const ArrayCode& code);

// Deliberately broken codes for exercising failure paths.
CodePtr fixture_zeroed_parity(const ArrayCode& code, std::size_t t, std::size_t i);
CodePtr fixture_without_keys(const ArrayCode& code);
// VBK code whose first key constant equals a lambda value of node 0.
CodePtr fixture_zeta_collision(const VbkParams& p, std::uint64_t seed);
// (4,2) VBK with delta_0 = 2, so r = delta_0.
CodePtr fixture_small_r();

std::string render_text(const std::vector<PropertyReport>& reports);
std::string render_json(const std::vector<PropertyReport>& reports);

}  // namespace tmds
