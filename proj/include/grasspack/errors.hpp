#pragma once

#include <stdexcept>
#include <string>

namespace grasspack {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on sizes or parameters was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Two planes (or matrices) do not share the same (m, n).
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// A generator matrix has numerical rank below n.
class RankDeficient : public Error {
 public:
  using Error::Error;
};

/// Rows of a generator matrix are too far from orthonormal to repair.
class NotOrthonormal : public Error {
 public:
  using Error::Error;
};

/// Some pairwise distance is at or below the potential offset.
class PoleCrossed : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// Header counts disagree with the body of a packing file.
class CountMismatch : public Error {
 public:
  using Error::Error;
};

class NotConferenceMatrix : public Error {
 public:
  using Error::Error;
};

class NotComplementClosed : public Error {
 public:
  using Error::Error;
};

/// A point set handed to the matcher is not closed under negation.
class NotAntipodal : public Error {
 public:
  using Error::Error;
};

}  // namespace grasspack
