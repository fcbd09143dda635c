#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rpt {

// Malformed or inconsistent inputs (bad dimensions, nonpositive costs, ...).
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

// An iterative routine failed to reach its tolerance within its iteration cap.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

// File ingestion or emission failure.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// A solver run blew up: the objective gap exceeded the guard threshold.
class DivergenceError : public NumericalError {
 public:
  DivergenceError(const std::string& what, std::size_t iteration, double gap)
      : NumericalError(what), iteration(iteration), gap(gap) {}

  std::size_t iteration;
  double gap;
};

}  // namespace rpt
