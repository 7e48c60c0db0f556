// SPDX-License-Identifier: Apache-2.0

#include "ccard/cnf.hpp"

#include <algorithm>
#include <stdexcept>

namespace ccard {

std::optional<Clause> Clause::normalized(std::vector<Lit> lits) {
  std::sort(lits.begin(), lits.end(), [](Lit a, Lit b) {
    if (a.var() != b.var()) return a.var() < b.var();
    return a.positive() && !b.positive();
  });
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  for (std::size_t i = 1; i < lits.size(); ++i)
    if (lits[i].var() == lits[i - 1].var()) return std::nullopt;  // x and ~x
  Clause c;
  c.lits_ = std::move(lits);
  return c;
}

void Cnf::ensure_vars(int n) { num_vars_ = std::max(num_vars_, n); }

bool Cnf::add_clause(std::vector<Lit> lits) {
  for (Lit l : lits) {
    if (l.code == 0) throw std::invalid_argument("literal 0 in clause");
    ensure_vars(l.var());
  }
  auto c = Clause::normalized(std::move(lits));
  if (!c) return false;
  clauses_.push_back(std::move(*c));
  return true;
}

std::string to_string(Lit l) {
  return l.positive() ? std::to_string(l.var()) : "-" + std::to_string(l.var());
}

std::string to_string(const Clause& c) {
  std::string s = "(";
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) s += " ";
    s += to_string(c.lits()[i]);
  }
  return s + ")";
}

Var VarPool::fresh(std::string name) {
  if (!used_.insert(name).second)
    throw std::invalid_argument("duplicate variable name: " + name);
  names_.push_back(std::move(name));
  return static_cast<Var>(names_.size()) - 1;
}

}  // namespace ccard
