// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "tmds/code.hpp"

namespace tmds {

// A fragment is an L x S matrix: one column per stripe.
using Fragments = std::vector<Matrix>;

enum class DecodeMethod { Dense, Induction };

// Fills the nodes outside `systematic` (default [0, k)) from data given in
// the order of `systematic`.
Fragments encode(const ArrayCode& code, const Fragments& data, std::vector<std::size_t> systematic = {});

// Recovers every node not listed in `present`. `word` has n entries; entries
// not in `present` are ignored.
Fragments reconstruct(const ArrayCode& code, const Fragments& word, const std::vector<std::size_t>& present,
                      DecodeMethod method = DecodeMethod::Dense);

// r blocks of L rows stacked t-major: sum_i A_{t,i} f_i.
Matrix syndrome(const ArrayCode& code, const Fragments& word);

// Solves sum_{e in erased} A_{t,e} x_e = rhs for all t; rhs is (r L) x S,
// the result stacks the erased fragments. The induction path walks instance
// bands and recurses into the base code.
Matrix solve_erasures(const ArrayCode& code, const std::vector<std::size_t>& erased, const Matrix& rhs,
                      DecodeMethod method);

}  // namespace tmds
