// SPDX-License-Identifier: Apache-2.0

#ifndef CCARD_CNF_HPP
#define CCARD_CNF_HPP

#include <cstdlib>
#include <initializer_list>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

namespace ccard {

// Variables are 1-based dense integers, DIMACS-compatible.
using Var = int;

// A literal is a signed variable: +v is the positive literal, -v the negated
// one. The value 0 never occurs in a well-formed literal.
struct Lit {
  int code = 0;

  constexpr Var var() const { return code < 0 ? -code : code; }
  constexpr bool positive() const { return code > 0; }
  constexpr Lit operator~() const { return Lit{-code}; }
  constexpr auto operator<=>(const Lit&) const = default;
};

constexpr Lit pos(Var v) { return Lit{v}; }
constexpr Lit neg(Var v) { return Lit{-v}; }

// Index for literal-keyed arrays (watch lists): 2*v for +v, 2*v+1 for -v.
constexpr int lit_index(Lit l) { return 2 * l.var() + (l.positive() ? 0 : 1); }

// A clause is a set of literals, normalized on construction: duplicates are
// dropped and literals are kept sorted by (var, polarity). A clause holding a
// complementary pair is a tautology and never materializes as a Clause;
// new_clause reports it so the caller can skip it.
class Clause {
 public:
  Clause() = default;  // empty clause (falsum); see Cnf::add_conflict

  const std::vector<Lit>& lits() const { return lits_; }
  std::size_t size() const { return lits_.size(); }
  bool empty() const { return lits_.empty(); }
  auto begin() const { return lits_.begin(); }
  auto end() const { return lits_.end(); }
  bool operator==(const Clause&) const = default;
  bool operator<(const Clause& o) const { return lits_ < o.lits_; }

  // Normalizes `lits`; returns nullopt for tautologies.
  static std::optional<Clause> normalized(std::vector<Lit> lits);

 private:
  std::vector<Lit> lits_;
};

// Alias for the construction entry point used throughout the encoders.
inline std::optional<Clause> new_clause(std::vector<Lit> lits) {
  return Clause::normalized(std::move(lits));
}

class Cnf {
 public:
  int num_vars() const { return num_vars_; }
  const std::vector<Clause>& clauses() const { return clauses_; }
  std::size_t num_clauses() const { return clauses_.size(); }

  // Declares variables up to `n` even if no clause mentions them yet.
  void ensure_vars(int n);

  // Adds the normalized clause; tautologies are dropped. Returns true when a
  // clause was actually stored.
  bool add_clause(std::vector<Lit> lits);
  bool add_clause(std::initializer_list<Lit> lits) {
    return add_clause(std::vector<Lit>(lits));
  }

  // Explicit conflict constructor: the only way to place the empty clause.
  void add_conflict() { clauses_.push_back(Clause{}); }

  bool operator==(const Cnf&) const = default;

 private:
  int num_vars_ = 0;
  std::vector<Clause> clauses_;
};

std::string to_string(Lit l);
std::string to_string(const Clause& c);

// Fresh-variable allocator with role-tagged names ("x[3]", "y", "s[4][2]").
// Names are injective; allocation order is the numbering.
class VarPool {
 public:
  Var fresh(std::string name);
  int num_vars() const { return static_cast<int>(names_.size()) - 1; }
  const std::string& name(Var v) const { return names_.at(static_cast<std::size_t>(v)); }

  // Snapshot of all names, indexed by variable id (entry 0 unused).
  const std::vector<std::string>& names() const { return names_; }

 private:
  std::vector<std::string> names_ = {""};
  std::unordered_set<std::string> used_;
};

}  // namespace ccard

#endif
