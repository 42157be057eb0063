#pragma once

#include <stdexcept>
#include <string>

namespace paraprox {

/// Base class of every error thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// -- block space ------------------------------------------------------------

class EmptyPartition : public Error {
 public:
  using Error::Error;
};

class InvalidSize : public Error {
 public:
  using Error::Error;
};

/// Two block vectors (or a vector and an operator) disagree on the partition.
class PartitionMismatch : public Error {
 public:
  using Error::Error;
};

/// A point or partition has the wrong total dimension for a problem.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// -- configuration ----------------------------------------------------------

class InvalidParams : public Error {
 public:
  using Error::Error;
};

/// Schedule cannot drive the requested run (wrong block count, future reads).
class ScheduleMismatch : public Error {
 public:
  using Error::Error;
};

// -- numerics ---------------------------------------------------------------

/// I + M could not be solved reliably; with a monotone M this cannot happen.
class SingularSystem : public Error {
 public:
  using Error::Error;
};

class InvalidAtom : public Error {
 public:
  using Error::Error;
};

/// No boundary/interior pattern satisfied the inclusion; the problem data is
/// malformed or not monotone.
class NoConsistentPattern : public Error {
 public:
  using Error::Error;
};

class DimensionTooLarge : public Error {
 public:
  using Error::Error;
};

class InnerSolverDiverged : public Error {
 public:
  using Error::Error;
};

class DualUnbounded : public Error {
 public:
  using Error::Error;
};

class GridTooCoarse : public Error {
 public:
  using Error::Error;
};

/// Wraps failures raised while evaluating a fixed-point operator.
class EvaluationFailure : public Error {
 public:
  using Error::Error;
};

// -- problem files ----------------------------------------------------------

class ParseError : public Error {
 public:
  using Error::Error;
};

class SchemaError : public Error {
 public:
  using Error::Error;
};

class ConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace paraprox
