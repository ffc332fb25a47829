#pragma once

#include <stdexcept>
#include <string>

namespace ggsp {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class NonFiniteError : public Error {
 public:
  using Error::Error;
};

class NotHermitianError : public Error {
 public:
  using Error::Error;
};

// Frame operator (or any positive matrix) with an eigenvalue at or below the floor.
class RankDeficientError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// Malformed input file or out-of-range configuration.
class InputError : public Error {
 public:
  using Error::Error;
};

}  // namespace ggsp
