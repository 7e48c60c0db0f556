// SPDX-License-Identifier: Apache-2.0

#ifndef CCARD_DIMACS_HPP
#define CCARD_DIMACS_HPP

#include <iosfwd>
#include <string>

#include "ccard/artifact.hpp"
#include "ccard/cnf.hpp"

namespace ccard {

// Writes standard DIMACS CNF. Named variables are announced first as
// `c var <id> = <name>` comment lines in ascending id order, then the
// `p cnf <vars> <clauses>` header, then one zero-terminated clause per line.
void write_dimacs(const EncodingArtifact& artifact, std::ostream& out);

std::string dimacs_string(const EncodingArtifact& artifact);

// Parses DIMACS CNF. Comment lines are skipped; clauses are normalized like
// every other clause in the system (duplicate literals dropped, tautologies
// removed). Throws ParseError with a line number on malformed input or when
// a literal exceeds the declared variable count.
Cnf read_dimacs(std::istream& in);

}  // namespace ccard

#endif
