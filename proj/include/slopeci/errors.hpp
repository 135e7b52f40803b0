#pragma once

#include <stdexcept>
#include <string>

#include "slopeci/rational.hpp"

namespace slopeci {

// A caller-supplied argument violates a precondition (bad level, bad k, ...).
class invalid_parameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The data set itself is unusable (too short, duplicate x, parse failure).
class invalid_dataset : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An exact null distribution was requested beyond the supported size.
class distribution_too_large : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The requested confidence level cannot be met by any interval at this sample
// size.  Carries the largest level that is achievable so callers can report
// it ("n = 4 supports at most 11/12").
class unachievable_level : public std::runtime_error {
 public:
  unachievable_level(const std::string& message, Rational max_achievable)
      : std::runtime_error(message), max_achievable_(std::move(max_achievable)) {}

  const Rational& max_achievable() const { return max_achievable_; }

 private:
  Rational max_achievable_;
};

}  // namespace slopeci
