// SPDX-License-Identifier: Apache-2.0

#include <stdexcept>
#include <unordered_set>

#include "ccard/artifact.hpp"
#include "ccard/constraint.hpp"
#include "ccard/ratio.hpp"

namespace ccard {

std::string to_string(ConstraintKind k) {
  switch (k) {
    case ConstraintKind::AtMostK: return "atmost";
    case ConstraintKind::AtLeastK: return "atleast";
    case ConstraintKind::ExactlyOne: return "exactly-one";
  }
  return "?";
}

void validate(const ConstraintSpec& spec) {
  if (spec.n < 1) throw std::invalid_argument("constraint needs n >= 1");
  if (spec.k < 0 || spec.k > spec.n)
    throw std::invalid_argument("constraint needs 0 <= k <= n");
}

void EncodingArtifact::validate() const {
  if (static_cast<int>(inputs.size()) != spec.n)
    throw std::logic_error("artifact: |inputs| != spec.n");
  std::unordered_set<Var> seen;
  auto take = [&](Var v) {
    if (v < 1 || v > cnf.num_vars() || !seen.insert(v).second)
      throw std::logic_error("artifact: variable families do not partition the pool");
  };
  for (Var v : inputs) take(v);
  if (condition) take(*condition);
  for (Var v : auxiliaries) take(v);
  if (static_cast<int>(seen.size()) != cnf.num_vars())
    throw std::logic_error("artifact: unaccounted variables");
}

Ratio parse_ratio(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty ratio");
  auto to_int = [](const std::string& s) {
    std::size_t used = 0;
    long long v = std::stoll(s, &used);
    if (used != s.size()) throw std::invalid_argument("malformed number: " + s);
    return v;
  };
  if (text.back() == '%')
    return Ratio{to_int(text.substr(0, text.size() - 1)), 100};
  auto slash = text.find('/');
  if (slash == std::string::npos) return Ratio{to_int(text), 1};
  Ratio r{to_int(text.substr(0, slash)), to_int(text.substr(slash + 1))};
  if (r.den <= 0) throw std::invalid_argument("ratio denominator must be positive");
  return r;
}

}  // namespace ccard
