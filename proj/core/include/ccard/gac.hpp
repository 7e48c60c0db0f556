// SPDX-License-Identifier: Apache-2.0

#ifndef CCARD_GAC_HPP
#define CCARD_GAC_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "ccard/artifact.hpp"
#include "ccard/constraint.hpp"
#include "ccard/encode.hpp"

namespace ccard {

// Truth function of the semantic constraint, independent of any encoding.
class SemanticOracle {
 public:
  explicit SemanticOracle(ConstraintSpec spec);

  const ConstraintSpec& spec() const { return spec_; }
  bool cardinality_met(int true_count) const;
  // Complete assignment over {y} u X. `y` is ignored for unconditioned specs.
  bool satisfied(int true_count, bool y) const {
    return (spec_.conditional && !y) || cardinality_met(true_count);
  }

 private:
  ConstraintSpec spec_;
};

// Result of the brute-force entailment oracle over a partial assignment.
// Literals use the documented numbering: inputs x1..xn are vars 1..n and the
// condition y is var n+1 (present only for conditional specs).
struct OracleResult {
  bool unsat = false;
  std::vector<Lit> entailed;  // over unassigned constraint vars, sorted by var
};

// Enumerates all completions of `rho` over {y} u X and reports Unsat or the
// literals true in every satisfying completion. `rho` must be fundamental.
OracleResult oracle_entailed_literals(const ConstraintSpec& spec,
                                      const std::vector<Lit>& rho);

struct GacCounterexample {
  enum class Kind { MissedConflict, MissedLiteral, SpuriousConflict };
  std::vector<Lit> rho;  // over the artifact's constraint variables
  Kind kind = Kind::MissedConflict;
  Lit missed{0};  // set for MissedLiteral
};

struct GacReport {
  bool pass = true;
  std::uint64_t checked_assignments = 0;
  std::vector<GacCounterexample> counterexamples;  // capped
};

struct GacOptions {
  int max_n = 10;                 // cap on the 3^(n+1) sweep
  unsigned threads = 0;           // 0 = hardware default
  int max_counterexamples = 32;
};

// Exhaustive GAC / consistency-completeness check: for every fundamental
// partial assignment rho over the artifact's {y} u X, unit propagation must
// conflict whenever the oracle reports Unsat and must derive every
// oracle-entailed constraint literal otherwise. Auxiliaries are never
// assumed. Throws TooLarge beyond the cap.
GacReport check_gac(const EncodingArtifact& artifact, const GacOptions& opts = {});

// Assignments over {y} u X (X alone when unconditioned) that extend to a
// full model, found by exhaustive extension search. Each model is a bitmask
// with bit i = truth of slot i (slots 0..n-1 are x1..xn, slot n is y);
// masks come back sorted.
std::vector<std::uint64_t> projected_models(const EncodingArtifact& artifact, int max_n = 10);

std::uint64_t projected_model_count(const EncodingArtifact& artifact, int max_n = 10);

struct FlavorRow {
  EncodingFlavor flavor;
  int n = 0;
  int k = 0;
  int vars = 0;
  long clauses = 0;
  bool pass = false;
  int counterexamples = 0;
};

// Machine-readable line: flavor,n,k,vars,clauses,verdict,counterexamples.
std::string to_line(const FlavorRow& row);

// Plain-text report with named literals, one counterexample per line,
// ending in "GAC: PASS|FAIL".
std::string to_text(const GacReport& report, const EncodingArtifact& artifact);

// Encodes `spec` under each flavor (spec.conditional is aligned with the
// flavor's mode) and runs the checker; rows come back in input order.
std::vector<FlavorRow> compare_flavors(const ConstraintSpec& spec,
                                       const std::vector<EncodingFlavor>& flavors,
                                       const GacOptions& opts = {});

}  // namespace ccard

#endif
