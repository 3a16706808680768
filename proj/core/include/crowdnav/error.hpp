#pragma once

#include <stdexcept>
#include <string>

namespace crowdnav {

/// Base of every exception thrown by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two points closer than kCoincidenceThreshold where a direction is needed.
class CoincidentPoints : public Error {
 public:
  CoincidentPoints() : Error("coincident points: direction undefined") {}
};

class PlacementFailure : public Error {
 public:
  using Error::Error;
};

class UnknownPreset : public Error {
 public:
  using Error::Error;
};

class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

class EmptyInput : public Error {
 public:
  using Error::Error;
};

/// Malformed config, trajectory or network file.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// A policy emitted an action faster than its agent's preferred speed.
class PolicyViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace crowdnav
