// Copyright 2026 The dicore Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace dicore {

// Argument outside the mathematical domain of a function (z <= 0, rho > 1/2, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A documented precondition of an operation does not hold for the given inputs.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An enumeration or exhaustive search would exceed its hard size limit.
class GuardError : public std::length_error {
 public:
  GuardError(const std::string& what, double estimated_size)
      : std::length_error(what), estimated_size_(estimated_size) {}

  double estimated_size() const noexcept { return estimated_size_; }

 private:
  double estimated_size_;
};

// A randomized or iterative procedure ran out of its attempt budget.
class ExhaustedError : public std::runtime_error {
 public:
  ExhaustedError(const std::string& what, std::uint64_t attempts)
      : std::runtime_error(what), attempts_(attempts) {}

  std::uint64_t attempts() const noexcept { return attempts_; }

 private:
  std::uint64_t attempts_;
};

}  // namespace dicore
