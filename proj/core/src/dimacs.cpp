// SPDX-License-Identifier: Apache-2.0

#include "ccard/dimacs.hpp"

#include <ostream>
#include <sstream>
#include <string>

#include "ccard/errors.hpp"

namespace ccard {

void write_dimacs(const EncodingArtifact& artifact, std::ostream& out) {
  const Cnf& cnf = artifact.cnf;
  for (Var v = 1; v <= cnf.num_vars(); ++v) {
    if (static_cast<std::size_t>(v) < artifact.var_names.size() &&
        !artifact.var_names[static_cast<std::size_t>(v)].empty())
      out << "c var " << v << " = " << artifact.var_names[static_cast<std::size_t>(v)] << "\n";
  }
  out << "p cnf " << cnf.num_vars() << " " << cnf.num_clauses() << "\n";
  for (const Clause& c : cnf.clauses()) {
    for (Lit l : c) out << l.code << " ";
    out << "0\n";
  }
  if (!out) throw std::runtime_error("dimacs: write failed");
}

std::string dimacs_string(const EncodingArtifact& artifact) {
  std::ostringstream os;
  write_dimacs(artifact, os);
  return os.str();
}

Cnf read_dimacs(std::istream& in) {
  Cnf cnf;
  int declared_vars = -1;
  long declared_clauses = -1;
  long seen_clauses = 0;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;  // blank line
    if (tok == "c") continue;
    if (tok == "p") {
      if (declared_vars >= 0) throw ParseError(lineno, "duplicate header");
      std::string fmt;
      if (!(ls >> fmt >> declared_vars >> declared_clauses) || fmt != "cnf" ||
          declared_vars < 0 || declared_clauses < 0)
        throw ParseError(lineno, "malformed header, expected `p cnf <vars> <clauses>`");
      cnf.ensure_vars(declared_vars);
      continue;
    }
    if (declared_vars < 0) throw ParseError(lineno, "clause before header");
    // Clause line(s): integers up to a terminating 0.
    std::vector<Lit> lits;
    ls.clear();
    ls.seekg(0);
    int v;
    bool terminated = false;
    while (ls >> v) {
      if (v == 0) {
        terminated = true;
        break;
      }
      if (std::abs(v) > declared_vars)
        throw ParseError(lineno, "literal " + std::to_string(v) + " out of range");
      lits.push_back(Lit{v});
    }
    if (!terminated) {
      if (!ls.eof()) throw ParseError(lineno, "malformed literal");
      throw ParseError(lineno, "clause not terminated by 0");
    }
    if (!ls.eof()) {
      std::string trailing;
      if (ls >> trailing) throw ParseError(lineno, "trailing tokens after clause");
    }
    ++seen_clauses;
    if (seen_clauses > declared_clauses) throw ParseError(lineno, "more clauses than declared");
    if (lits.empty())
      cnf.add_conflict();
    else
      cnf.add_clause(std::move(lits));  // tautologies normalized away
  }
  if (declared_vars < 0) throw ParseError(lineno, "missing header");
  if (seen_clauses != declared_clauses)
    throw ParseError(lineno, "fewer clauses than declared");
  return cnf;
}

}  // namespace ccard
