// SPDX-License-Identifier: Apache-2.0

#ifndef CCARD_ENCODE_HPP
#define CCARD_ENCODE_HPP

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ccard/artifact.hpp"
#include "ccard/cnf.hpp"
#include "ccard/constraint.hpp"

namespace ccard {

enum class Family { Pairwise, SeqCounter, PigeonHole, SortNet, PigeonHoleBasic };

// None encodes the unconditioned constraint. NaiveAllClauses guards every
// clause with ~y; GacSubset guards only the subset that keeps unit
// propagation complete (for Pairwise the two coincide).
enum class ConditionalMode { None, NaiveAllClauses, GacSubset };

struct EncodingFlavor {
  Family family = Family::SeqCounter;
  ConditionalMode mode = ConditionalMode::None;
};

std::string to_string(Family f);
std::string to_string(ConditionalMode m);
std::string to_string(EncodingFlavor f);  // e.g. "seqcounter-gac"

// ---------------------------------------------------------------------------
// Clause-level builders. These append onto an existing Cnf over caller-owned
// input literals, allocating auxiliaries from `pool`; the mining encoder
// reuses them over its own variables. Returned vector = auxiliaries in
// allocation order. `aux_prefix` tags the auxiliary names.

// sum(inputs) <= 1 as all negative pairs; no auxiliaries.
void append_pairwise_amo(Cnf& cnf, std::span<const Lit> inputs,
                         std::optional<Var> cond, ConditionalMode mode);

// Sequential-counter at-most-one with chain variables p1..p(n-1).
// n <= 1 emits nothing (the constraint is vacuous).
std::vector<Var> append_seqcounter_amo(Cnf& cnf, VarPool& pool,
                                       std::span<const Lit> inputs,
                                       std::optional<Var> cond, ConditionalMode mode,
                                       const std::string& aux_prefix = "p");

// Sequential unary counter for sum(inputs) <= k, 1 <= k < n, with partial
// sums s[i][j] ("at least j of the first i inputs"), row-major allocation.
std::vector<Var> append_seqcounter_amk(Cnf& cnf, VarPool& pool,
                                       std::span<const Lit> inputs, int k,
                                       std::optional<Var> cond, ConditionalMode mode,
                                       const std::string& aux_prefix = "s");

// Basic pigeon-hole encoding of sum(inputs) >= k (k pigeons, n holes,
// p[j][i] = pigeon j sits in hole i). Unconditioned only; kept as the
// propagation-weak exhibit.
std::vector<Var> append_pigeonhole_basic_alk(Cnf& cnf, VarPool& pool,
                                             std::span<const Lit> inputs, int k);

// Symmetry-broken pigeon-hole encoding of sum(inputs) >= k with variables
// p[i][j], i in 1..k, j in 1..n-k+1. GacSubset guards only the k positive
// clauses.
std::vector<Var> append_pigeonhole_alk(Cnf& cnf, VarPool& pool,
                                       std::span<const Lit> inputs, int k,
                                       std::optional<Var> cond, ConditionalMode mode);

// Odd-even mergesort network over the inputs (padded internally to a power
// of two with constant-false wires; comparators touching a constant collapse
// to plain wires). Outputs descend: out[0] = "at least one input true", etc.
// Only the monotone comparator halves are emitted, so on partial inputs the
// outputs are lower-bounded only. `cond` guards every comparator clause and
// is only used by the naive conditional mode.
struct SortingNetwork {
  std::vector<Lit> outputs;       // size n; may alias inputs for n == 1
  std::vector<Var> auxiliaries;   // comparator outputs in construction order
  int comparators = 0;            // comparators that emitted clauses
};

SortingNetwork append_sorting_network(Cnf& cnf, VarPool& pool,
                                      std::span<const Lit> inputs,
                                      std::optional<Var> guard_all,
                                      const std::string& aux_prefix = "z");

// ---------------------------------------------------------------------------
// Artifact-level encoders over freshly allocated inputs (ids 1..n, then y).

EncodingArtifact encode_pairwise_amo(VarPool& pool, const std::vector<Var>& xs,
                                     std::optional<Var> cond, ConditionalMode mode);

EncodingArtifact encode_seqcounter_amo(VarPool& pool, const std::vector<Var>& xs,
                                       std::optional<Var> cond, ConditionalMode mode);

EncodingArtifact encode_seqcounter_amk(VarPool& pool, const std::vector<Var>& xs, int k,
                                       std::optional<Var> cond, ConditionalMode mode);

EncodingArtifact encode_pigeonhole_basic_alk(VarPool& pool, const std::vector<Var>& xs, int k);

EncodingArtifact encode_pigeonhole_alk(VarPool& pool, const std::vector<Var>& xs, int k,
                                       std::optional<Var> cond, ConditionalMode mode);

// Sorting network over fresh inputs; returns the output wires and the CNF.
std::pair<std::vector<Lit>, Cnf> build_sorting_network(VarPool& pool,
                                                       const std::vector<Var>& xs);

// sum(xs) <= k via sorting network plus the (guarded) unit ~z[k+1].
// Accepts k = 0 (guard the top output); requires k < n.
EncodingArtifact encode_sortnet_amk(VarPool& pool, const std::vector<Var>& xs, int k,
                                    std::optional<Var> cond, ConditionalMode mode);

// Dispatch: allocates x[1..n] (and y when conditional), validates the
// spec/flavor combination, rewrites between AtMostK and AtLeastK over
// negated inputs where the family demands it, and applies the degenerate
// cases (k >= n tautology, k = 0 forced literals, ExactlyOne = AMO + ALO).
// Throws UnsupportedCombination / InvalidBound.
EncodingArtifact encode(const ConstraintSpec& spec, EncodingFlavor flavor, VarPool& pool);

}  // namespace ccard

#endif
