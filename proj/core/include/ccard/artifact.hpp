// SPDX-License-Identifier: Apache-2.0

#ifndef CCARD_ARTIFACT_HPP
#define CCARD_ARTIFACT_HPP

#include <optional>
#include <string>
#include <vector>

#include "ccard/cnf.hpp"
#include "ccard/constraint.hpp"

namespace ccard {

// A CNF together with the role of every variable in it: the constraint
// inputs x1..xn, the optional condition y and the encoder's auxiliaries.
// The three families partition the allocated variables.
struct EncodingArtifact {
  Cnf cnf;
  std::vector<Var> inputs;
  std::optional<Var> condition;
  std::vector<Var> auxiliaries;
  std::vector<std::string> var_names;  // indexed by id, entry 0 unused
  ConstraintSpec spec;

  const std::string& name_of(Var v) const { return var_names.at(static_cast<std::size_t>(v)); }

  // Checks the partition invariant and |inputs| == spec.n; throws on breach.
  void validate() const;
};

}  // namespace ccard

#endif
