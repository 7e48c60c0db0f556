// SPDX-License-Identifier: Apache-2.0

#ifndef CCARD_ENUMERATE_HPP
#define CCARD_ENUMERATE_HPP

#include <chrono>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "ccard/cnf.hpp"
#include "ccard/propagate.hpp"
#include "ccard/ratio.hpp"

namespace ccard {

// A constraint propagated on the fly instead of being clausified. It may
// only prune: `admits` must never reject a state some completion of which
// satisfies the constraint, and must be exact on complete assignments.
class DynamicConstraint {
 public:
  virtual ~DynamicConstraint() = default;
  virtual bool admits(const Engine& eng) const = 0;
};

using DynamicConstraintPtr = std::unique_ptr<DynamicConstraint>;

// sum over vars of true literals >= bound. Prunes when even assigning every
// unassigned var true cannot reach the bound.
DynamicConstraintPtr make_atleast_counter(std::vector<Var> vars, int bound);

// sum(q) / sum(p) >= minconf, assuming q[i] -> p[i] holds in the clause part.
// Pruning bound: with N = #q-true + #q-unassigned and C = #(p true, q false),
// any completion has confidence <= N / (N + C).
DynamicConstraintPtr make_confidence_constraint(std::vector<Var> p_vars,
                                                std::vector<Var> q_vars, Ratio minconf);

struct EnumConfig {
  std::vector<Var> projection;    // output and blocking restricted to these
  std::vector<Var> branch_order;  // decision priority; others follow by index
  std::optional<std::uint64_t> max_models;
  std::optional<std::chrono::milliseconds> max_time;
};

enum class EnumStatus { Exhausted, ModelLimit, TimeLimit };

struct EnumStats {
  std::uint64_t models = 0;
  std::uint64_t decisions = 0;
  std::uint64_t propagations = 0;
  EnumStatus status = EnumStatus::Exhausted;
};

// DPLL-style all-models enumeration with chronological backtracking.
// Each projected model is emitted exactly once; permanent blocking clauses
// over the projection variables do the deduplication. The sink receives one
// literal per projection variable, in projection order.
using ModelSink = std::function<void(const std::vector<Lit>&)>;

EnumStats enumerate_models(const Cnf& cnf,
                           const std::vector<DynamicConstraintPtr>& dynamics,
                           const EnumConfig& config, const ModelSink& sink);

// Convenience wrapper collecting the projected models.
std::pair<std::vector<std::vector<Lit>>, EnumStats> enumerate_collect(
    const Cnf& cnf, const std::vector<DynamicConstraintPtr>& dynamics,
    const EnumConfig& config);

}  // namespace ccard

#endif
