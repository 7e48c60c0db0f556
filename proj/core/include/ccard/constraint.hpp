// SPDX-License-Identifier: Apache-2.0

#ifndef CCARD_CONSTRAINT_HPP
#define CCARD_CONSTRAINT_HPP

#include <string>

namespace ccard {

enum class ConstraintKind { AtMostK, AtLeastK, ExactlyOne };

// Semantic description of a (possibly conditional) cardinality constraint
// over inputs x1..xn: `sum(x) <= k`, `sum(x) >= k` or `sum(x) == 1`,
// guarded by a condition variable y when `conditional` is set.
struct ConstraintSpec {
  ConstraintKind kind = ConstraintKind::AtMostK;
  int n = 0;
  int k = 0;
  bool conditional = false;

  bool operator==(const ConstraintSpec&) const = default;
};

std::string to_string(ConstraintKind k);

// Validates n >= 1 and 0 <= k <= n; throws std::invalid_argument otherwise.
void validate(const ConstraintSpec& spec);

}  // namespace ccard

#endif
