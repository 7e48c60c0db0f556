// SPDX-License-Identifier: Apache-2.0

#ifndef CCARD_ERRORS_HPP
#define CCARD_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ccard {

struct ParseError : std::runtime_error {
  int line;
  ParseError(int line_, const std::string& what_)
      : std::runtime_error("line " + std::to_string(line_) + ": " + what_), line(line_) {}
};

struct InvalidBound : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct UnsupportedCombination : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NotHorn : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct TooLarge : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct InconsistentAssumptions : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct DegenerateThreshold : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct UnknownItem : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace ccard

#endif
