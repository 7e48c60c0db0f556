// SPDX-License-Identifier: Apache-2.0

#ifndef CCARD_PROPAGATE_HPP
#define CCARD_PROPAGATE_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "ccard/cnf.hpp"

namespace ccard {

enum class Value : std::int8_t { False = -1, Unassigned = 0, True = 1 };

enum class PropOutcome { Fixpoint, Conflict };

struct PropResult {
  PropOutcome outcome = PropOutcome::Fixpoint;
  // Literals added by unit propagation, excluding the assumptions themselves,
  // sorted by variable id. On Conflict this holds the literals derived before
  // the conflict surfaced.
  std::vector<Lit> implied;
  std::optional<Clause> conflict_clause;
};

// Two-watched-literal propagation engine over a clause database seeded from
// a Cnf. Supports decision levels, chronological backtracking and permanent
// clause addition (blocking clauses), which is all the enumerator needs.
//
// Level 0 holds the closure of the original unit clauses; assumptions and
// decisions live on levels >= 1. An engine is single-threaded; run separate
// engines over the same Cnf for parallel sweeps.
class Engine {
 public:
  explicit Engine(const Cnf& cnf);

  int num_vars() const { return num_vars_; }
  Value value(Var v) const { return assign_[static_cast<std::size_t>(v)]; }
  Value value(Lit l) const {
    Value v = value(l.var());
    if (v == Value::Unassigned) return v;
    return (v == Value::True) == l.positive() ? Value::True : Value::False;
  }

  int level() const { return static_cast<int>(lims_.size()); }
  void new_level() { lims_.push_back(trail_.size()); }
  void backtrack(int target_level);

  // Assigns l at the current level. Returns false when l is already false.
  // No-op (true) when l already holds.
  bool enqueue(Lit l, int reason_clause = -1);

  // Runs propagation to fixpoint; returns the index of a falsified clause,
  // or nullopt. The first falsified clause encountered in the fixed
  // traversal order is reported.
  std::optional<int> propagate();

  // Appends a clause to the database. Must be called with the clause not
  // falsified by the current assignment unless at level 0 (enumerator model
  // blocking handles falsified additions itself via backtracking).
  // An empty `lits` records a root conflict.
  void add_clause(std::vector<Lit> lits);

  bool root_conflict() const { return root_conflict_; }
  const std::vector<Lit>& trail() const { return trail_; }
  std::size_t trail_size() const { return trail_.size(); }
  // Reason clause index for an assigned var; -1 for decisions/assumptions.
  int reason(Var v) const { return reason_[static_cast<std::size_t>(v)]; }

  std::uint64_t num_propagations() const { return propagations_; }
  const std::vector<Lit>& clause_lits(int idx) const {
    return clauses_[static_cast<std::size_t>(idx)].lits;
  }

 private:
  struct WClause {
    std::vector<Lit> lits;  // lits[0], lits[1] are the watched pair
  };

  void attach_watch(int clause_idx);
  void unassign_above(std::size_t trail_mark);

  int num_vars_ = 0;
  std::vector<WClause> clauses_;
  std::vector<std::vector<int>> watches_;  // lit_index -> clause indices
  std::vector<Value> assign_;
  std::vector<int> reason_;
  std::vector<Lit> trail_;
  std::vector<std::size_t> lims_;
  std::size_t qhead_ = 0;
  bool root_conflict_ = false;
  std::uint64_t propagations_ = 0;
};

// Unit-propagation closure of `cnf` under `assumptions`.
// Throws InconsistentAssumptions when the assumptions contain a
// complementary pair; the implied set is order-independent.
PropResult propagate(const Cnf& cnf, const std::vector<Lit>& assumptions);

// Reference propagator: scans the clause list to a fixpoint without watch
// structures. Exists only to differentially test the engine.
PropResult propagate_naive(const Cnf& cnf, const std::vector<Lit>& assumptions);

// F |=* c  iff  (F and ~c) propagates to conflict.
bool entails_by_up(const Cnf& cnf, const Clause& clause);

// Phi+ (exactly one positive literal), Phi- (all-negative) and the rest.
// The input is Horn iff non_horn is empty.
struct HornPartition {
  std::vector<Clause> positive_part;
  std::vector<Clause> negative_part;
  std::vector<Clause> non_horn;
};

HornPartition horn_partition(const Cnf& cnf);

// Executable form of the Horn unsat witness: for Horn `cnf` and all-positive
// `rho`, returns a negative clause falsified by the unit-propagation closure
// of the positive part under rho, exactly when cnf|rho propagates to
// conflict; nullopt otherwise. Throws NotHorn / std::invalid_argument on
// precondition breaches.
std::optional<Clause> horn_unsat_witness(const Cnf& cnf, const std::vector<Lit>& rho);

}  // namespace ccard

#endif
