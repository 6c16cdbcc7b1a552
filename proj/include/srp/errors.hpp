#pragma once

#include <stdexcept>
#include <string>

namespace srp {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input matrix is numerically rank deficient.
class RankDeficient : public Error {
 public:
  using Error::Error;
};

/// Two subspaces live in ambient spaces of different dimension.
class AmbientMismatch : public Error {
 public:
  using Error::Error;
};

/// Projector target dimension is not smaller than the source dimension.
class DimensionOrder : public Error {
 public:
  using Error::Error;
};

/// A projected basis lost rank (probability-zero event; indicates misuse).
class RankCollapse : public Error {
 public:
  using Error::Error;
};

/// Scalar argument outside its documented domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Tight deviation event requested without a principal-angle spectrum.
class MissingCosines : public Error {
 public:
  using Error::Error;
};

/// Requested affinity spectrum cannot be scaled into [0,1].
class SpectrumInfeasible : public Error {
 public:
  using Error::Error;
};

/// Requested geometry does not fit in the ambient space.
class Infeasible : public Error {
 public:
  using Error::Error;
};

/// Malformed input file or config.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace srp
