// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <string>
#include <vector>

#include "tmds/codec.hpp"
#include "tmds/transform.hpp"

namespace tmds {

struct RepairPlan {
  std::size_t failed = 0;
  std::size_t z = 0;                  // degree index; d = k + delta_z - 1
  std::vector<std::size_t> helpers;   // sorted, size d

  // Helpers chosen as the first d surviving nodes.
  static RepairPlan first_helpers(const ArrayCode& code, std::size_t failed, std::size_t z);
  std::vector<std::size_t> excluded(std::size_t n) const;  // D = [0, n) minus helpers and failed
};

struct SolveStep {
  std::size_t w = 0, a = 0;
  std::vector<std::string> unknown, eliminated, solved;
};

struct RepairTranscript {
  std::string method;
  std::map<std::size_t, std::size_t> downloaded;             // per helper, field symbols per stripe
  std::map<std::size_t, std::vector<std::size_t>> accessed;  // per helper, symbol indices read
  std::vector<SolveStep> solve_order;

  std::size_t total_downloaded() const;
  std::size_t total_accessed() const;
};

struct RepairResult {
  Matrix fragment;  // L x S
  RepairTranscript transcript;
};

// X with S A = X R, using R's pivot columns; throws ParameterError when no
// such X exists.
Matrix interference_projection(const Matrix& S, const Matrix& A, const Matrix& R);

// Coefficient matrix of the goal-node system for node i of `base` at degree
// z with excluded set D, and the band matrices Gamma_1..Gamma_{m-1}
// (gamma[0] unused).
struct GnSystem {
  Matrix M;
  std::vector<Matrix> gamma;
};
GnSystem gn_system(const ArrayCode& base, std::size_t i, std::size_t z, const std::vector<std::size_t>& D);

// Order in which goal-node repair at degree z visits instances, with the
// part tags ("f3", "f5[1]") that are unknown, eliminated and solved.
std::vector<SolveStep> gn_schedule(const DegreeSet& degrees, std::size_t z);

RepairResult gn_repair(const ArrayCode& code, const Fragments& word, const RepairPlan& plan);
RepairResult rn_repair(const ArrayCode& code, const Fragments& word, const RepairPlan& plan);
// Per-instance base repair with appended terms projected through the base
// repair matrix; also valid for a goal node at z = 0.
RepairResult instancewise_repair(const ArrayCode& code, const Fragments& word, const RepairPlan& plan);
// Single linear solve with the code's own repair and select matrices.
RepairResult dense_repair(const ArrayCode& code, const Fragments& word, const RepairPlan& plan);
// Dispatches on the code's history.
RepairResult repair(const ArrayCode& code, const Fragments& word, const RepairPlan& plan);

struct AuditReport {
  std::size_t downloaded = 0, accessed = 0, bound = 0;
  bool optimal_repair = false, optimal_access = false, above_bound = false;
  std::string summary() const;
};
AuditReport transcript_audit(const RepairTranscript& t, const ArrayCode& code, const RepairPlan& plan);

// Degree index for d helpers, or throws when d - k + 1 is not a supported degree.
std::size_t degree_index_for(const ArrayCode& code, std::size_t d);

}  // namespace tmds
