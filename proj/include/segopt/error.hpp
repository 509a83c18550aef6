#pragma once

#include <stdexcept>
#include <string>

namespace segopt {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside its documented domain (probability out of [0,1], volume
// outside [0,1], non-positive weight, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

// Dice of an empty segmentation against a zero-mass marginal (0/0).
class DegenerateDice : public Error {
 public:
  DegenerateDice() : Error("dice is undefined: segmentation and marginal both have zero volume") {}
};

// Dice optimization requested for a marginal with zero total mass.
class DegenerateMarginal : public Error {
 public:
  DegenerateMarginal() : Error("marginal has zero mass; dice optimum is undefined") {}
};

class GridTooLarge : public Error {
 public:
  using Error::Error;
};

class UnachievableVolume : public Error {
 public:
  using Error::Error;
};

// A generator breakpoint does not fall on a cell boundary.
class MisalignedBreakpoint : public Error {
 public:
  using Error::Error;
};

// Malformed or unreadable input file.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace segopt
