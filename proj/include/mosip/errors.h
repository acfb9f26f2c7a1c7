#pragma once

#include <stdexcept>
#include <string>

namespace mosip {

// Malformed input: dimension mismatches, parse failures, bad parameters.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An operation was called outside its precondition (e.g. subgradient
// requested outside the function's domain).
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The request is well-formed but outside what the exact machinery covers
// (dimension cap, non-polyhedral subdifferential, ...).
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Candidate point violates a constraint. `index` names the violated
// constraint index, or -1 for a row of the feasible-set description.
class InfeasibleCandidateError : public std::runtime_error {
 public:
  InfeasibleCandidateError(const std::string& what, long index)
      : std::runtime_error(what), index_(index) {}
  long index() const { return index_; }

 private:
  long index_;
};

// A certificate failed its own exact re-verification. Always a bug.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace mosip
