// SPDX-License-Identifier: Apache-2.0

#include "ccard/propagate.hpp"

#include <algorithm>
#include <unordered_set>

#include "ccard/errors.hpp"

namespace ccard {

Engine::Engine(const Cnf& cnf) : num_vars_(cnf.num_vars()) {
  assign_.assign(static_cast<std::size_t>(num_vars_) + 1, Value::Unassigned);
  reason_.assign(static_cast<std::size_t>(num_vars_) + 1, -1);
  watches_.assign(2 * static_cast<std::size_t>(num_vars_) + 2, {});
  clauses_.reserve(cnf.num_clauses());
  for (const Clause& c : cnf.clauses()) add_clause(std::vector<Lit>(c.lits()));
}

void Engine::attach_watch(int clause_idx) {
  const auto& lits = clauses_[static_cast<std::size_t>(clause_idx)].lits;
  watches_[static_cast<std::size_t>(lit_index(lits[0]))].push_back(clause_idx);
  watches_[static_cast<std::size_t>(lit_index(lits[1]))].push_back(clause_idx);
}

void Engine::add_clause(std::vector<Lit> lits) {
  if (lits.empty()) {
    root_conflict_ = true;
    return;
  }
  if (lits.size() == 1) {
    // Unit clauses never enter the watch structures; their assignment lives
    // at level 0 so it survives backtracking. Callers adding a unit clause
    // mid-search must be at the root.
    if (level() != 0) throw std::logic_error("unit clause added above level 0");
    int idx = static_cast<int>(clauses_.size());
    clauses_.push_back({std::move(lits)});
    Lit l = clauses_.back().lits[0];
    if (!enqueue(l, idx)) root_conflict_ = true;
    return;
  }
  // Prefer unassigned/true literals in the watched pair so the invariant
  // "a false watch means the clause was handled" holds on entry.
  auto better = [&](Lit a, Lit b) {
    auto score = [&](Lit l) {
      Value v = value(l);
      return v == Value::False ? 0 : (v == Value::Unassigned ? 1 : 2);
    };
    return score(a) > score(b);
  };
  for (std::size_t i = 0; i < 2 && i < lits.size(); ++i)
    for (std::size_t j = i + 1; j < lits.size(); ++j)
      if (better(lits[j], lits[i])) std::swap(lits[i], lits[j]);
  int idx = static_cast<int>(clauses_.size());
  clauses_.push_back({std::move(lits)});
  attach_watch(idx);
  const auto& stored = clauses_[static_cast<std::size_t>(idx)].lits;
  if (value(stored[0]) == Value::False) {
    if (level() != 0) throw std::logic_error("falsified clause added above level 0");
    root_conflict_ = true;
  } else if (value(stored[0]) == Value::Unassigned && value(stored[1]) == Value::False) {
    // Unit under the current assignment: apply it now, the watch pass that
    // would normally catch this already ran.
    ++propagations_;
    enqueue(stored[0], idx);
  }
}

bool Engine::enqueue(Lit l, int reason_clause) {
  Value v = value(l);
  if (v == Value::True) return true;
  if (v == Value::False) return false;
  assign_[static_cast<std::size_t>(l.var())] = l.positive() ? Value::True : Value::False;
  reason_[static_cast<std::size_t>(l.var())] = reason_clause;
  trail_.push_back(l);
  return true;
}

std::optional<int> Engine::propagate() {
  if (root_conflict_) return -1;
  while (qhead_ < trail_.size()) {
    Lit assigned = trail_[qhead_++];
    // Clauses watching ~assigned just lost that watch.
    std::vector<int>& ws = watches_[static_cast<std::size_t>(lit_index(~assigned))];
    std::size_t keep = 0;
    for (std::size_t wi = 0; wi < ws.size(); ++wi) {
      int ci = ws[wi];
      auto& lits = clauses_[static_cast<std::size_t>(ci)].lits;
      if (lits[0] == ~assigned) std::swap(lits[0], lits[1]);
      // lits[1] is the falsified watch now.
      if (value(lits[0]) == Value::True) {
        ws[keep++] = ci;
        continue;
      }
      bool moved = false;
      for (std::size_t k = 2; k < lits.size(); ++k) {
        if (value(lits[k]) != Value::False) {
          std::swap(lits[1], lits[k]);
          watches_[static_cast<std::size_t>(lit_index(lits[1]))].push_back(ci);
          moved = true;
          break;
        }
      }
      if (moved) continue;
      ws[keep++] = ci;
      if (value(lits[0]) == Value::False) {
        // Conflict: first falsified clause in traversal order.
        for (std::size_t rest = wi + 1; rest < ws.size(); ++rest) ws[keep++] = ws[rest];
        ws.resize(keep);
        return ci;
      }
      ++propagations_;
      enqueue(lits[0], ci);
    }
    ws.resize(keep);
  }
  return std::nullopt;
}

void Engine::unassign_above(std::size_t trail_mark) {
  while (trail_.size() > trail_mark) {
    Var v = trail_.back().var();
    assign_[static_cast<std::size_t>(v)] = Value::Unassigned;
    reason_[static_cast<std::size_t>(v)] = -1;
    trail_.pop_back();
  }
  qhead_ = std::min(qhead_, trail_.size());
}

void Engine::backtrack(int target_level) {
  if (target_level >= level()) return;
  std::size_t mark = lims_[static_cast<std::size_t>(target_level)];
  lims_.resize(static_cast<std::size_t>(target_level));
  unassign_above(mark);
}

namespace {

void check_fundamental(const std::vector<Lit>& assumptions) {
  std::unordered_set<int> seen;
  for (Lit l : assumptions) seen.insert(l.code);
  for (Lit l : assumptions)
    if (seen.count((~l).code))
      throw InconsistentAssumptions("assumptions contain a complementary pair");
}

PropResult extract(const Engine& eng, const std::vector<Lit>& assumptions,
                   std::optional<int> conflict) {
  PropResult res;
  std::unordered_set<int> assumed;
  for (Lit l : assumptions) assumed.insert(l.var());
  for (Lit l : eng.trail())
    if (!assumed.count(l.var())) res.implied.push_back(l);
  std::sort(res.implied.begin(), res.implied.end(),
            [](Lit a, Lit b) { return a.var() < b.var(); });
  if (conflict) {
    res.outcome = PropOutcome::Conflict;
    if (*conflict >= 0) {
      auto c = Clause::normalized(eng.clause_lits(*conflict));
      res.conflict_clause = c ? *c : Clause{};
    } else {
      res.conflict_clause = Clause{};  // empty clause in the database
    }
  }
  return res;
}

}  // namespace

PropResult propagate(const Cnf& cnf, const std::vector<Lit>& assumptions) {
  check_fundamental(assumptions);
  for (Lit l : assumptions)
    if (l.var() < 1 || l.var() > cnf.num_vars())
      throw std::invalid_argument("assumption variable out of range");
  Engine eng(cnf);
  if (auto conflict = eng.propagate()) return extract(eng, assumptions, conflict);
  eng.new_level();
  for (Lit l : assumptions) {
    if (!eng.enqueue(l)) {
      // The assumption contradicts a propagated literal; report the clause
      // that forced the opposite value.
      int why = eng.reason(l.var());
      std::optional<int> conflict = why >= 0 ? std::optional<int>(why) : std::optional<int>(-1);
      return extract(eng, assumptions, conflict);
    }
  }
  auto conflict = eng.propagate();
  return extract(eng, assumptions, conflict);
}

PropResult propagate_naive(const Cnf& cnf, const std::vector<Lit>& assumptions) {
  check_fundamental(assumptions);
  std::vector<Value> val(static_cast<std::size_t>(cnf.num_vars()) + 1, Value::Unassigned);
  auto lit_val = [&](Lit l) {
    Value v = val[static_cast<std::size_t>(l.var())];
    if (v == Value::Unassigned) return v;
    return (v == Value::True) == l.positive() ? Value::True : Value::False;
  };
  for (Lit l : assumptions)
    val[static_cast<std::size_t>(l.var())] = l.positive() ? Value::True : Value::False;
  PropResult res;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const Clause& c : cnf.clauses()) {
      int unassigned = 0;
      Lit unit{0};
      bool satisfied = false;
      for (Lit l : c) {
        Value v = lit_val(l);
        if (v == Value::True) {
          satisfied = true;
          break;
        }
        if (v == Value::Unassigned) {
          ++unassigned;
          unit = l;
        }
      }
      if (satisfied) continue;
      if (unassigned == 0) {
        res.outcome = PropOutcome::Conflict;
        res.conflict_clause = c;
        return res;
      }
      if (unassigned == 1) {
        val[static_cast<std::size_t>(unit.var())] =
            unit.positive() ? Value::True : Value::False;
        res.implied.push_back(unit);
        changed = true;
      }
    }
  }
  std::sort(res.implied.begin(), res.implied.end(),
            [](Lit a, Lit b) { return a.var() < b.var(); });
  return res;
}

bool entails_by_up(const Cnf& cnf, const Clause& clause) {
  std::vector<Lit> assumptions;
  assumptions.reserve(clause.size());
  for (Lit l : clause) assumptions.push_back(~l);
  return propagate(cnf, assumptions).outcome == PropOutcome::Conflict;
}

HornPartition horn_partition(const Cnf& cnf) {
  HornPartition part;
  for (const Clause& c : cnf.clauses()) {
    int positives = 0;
    for (Lit l : c)
      if (l.positive()) ++positives;
    if (positives == 0)
      part.negative_part.push_back(c);
    else if (positives == 1)
      part.positive_part.push_back(c);
    else
      part.non_horn.push_back(c);
  }
  return part;
}

std::optional<Clause> horn_unsat_witness(const Cnf& cnf, const std::vector<Lit>& rho) {
  HornPartition part = horn_partition(cnf);
  if (!part.non_horn.empty()) throw NotHorn("formula is not Horn");
  for (Lit l : rho)
    if (!l.positive()) throw std::invalid_argument("rho must be all-positive");

  // Propagating positives through Phi+ only ever derives more positives, so
  // the closure is conflict-free and a plain engine over Phi+ computes it.
  Cnf positive_only;
  positive_only.ensure_vars(cnf.num_vars());
  for (const Clause& c : part.positive_part) positive_only.add_clause(c.lits());
  PropResult closure = propagate(positive_only, rho);

  std::vector<char> in_closure(static_cast<std::size_t>(cnf.num_vars()) + 1, 0);
  for (Lit l : rho) in_closure[static_cast<std::size_t>(l.var())] = 1;
  for (Lit l : closure.implied)
    if (l.positive()) in_closure[static_cast<std::size_t>(l.var())] = 1;

  for (const Clause& c : part.negative_part) {
    bool falsified = true;
    for (Lit l : c)
      if (!in_closure[static_cast<std::size_t>(l.var())]) {
        falsified = false;
        break;
      }
    if (falsified) return c;
  }
  return std::nullopt;
}

}  // namespace ccard
