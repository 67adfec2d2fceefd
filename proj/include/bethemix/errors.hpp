#pragma once

#include <stdexcept>
#include <string>

namespace bethemix {

/// Base class for all recoverable bethemix errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inputs outside an operation's stated domain (bad q/b, color out of range, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The update denominator vanished: the sub-instance admits no proper coloring.
class ZeroDenominatorError : public Error {
 public:
  using Error::Error;
};

/// Exact enumeration found zero colorings consistent with the boundary.
class UnsatisfiableError : public Error {
 public:
  using Error::Error;
};

/// Subtree exceeds the brute-force enumeration cap.
class CapExceededError : public Error {
 public:
  using Error::Error;
};

/// Node id not present in the tree.
class UnknownNodeError : public Error {
 public:
  using Error::Error;
};

/// A lemma was requested outside the (q, b) regime its hypotheses cover.
class UnsupportedRegimeError : public Error {
 public:
  using Error::Error;
};

/// c*b landed within the guard band of an integer; the ceiling is ambiguous.
class CeilingAmbiguousError : public Error {
 public:
  using Error::Error;
};

/// The constrained sampler could not produce a set member.
class SamplerStuckError : public Error {
 public:
  using Error::Error;
};

/// Retry budget exhausted (e.g. no satisfiable boundary pair found).
class RetriesExhaustedError : public Error {
 public:
  using Error::Error;
};

/// Requested structure exceeds the configured memory budget.
class BudgetExceededError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file or JSON document.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace bethemix
