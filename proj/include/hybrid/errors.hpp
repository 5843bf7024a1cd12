#pragma once

#include <stdexcept>
#include <string>

namespace hybrid {

/// Base class for every error raised by the simulation engine.
class EngineError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidParameter : public EngineError {
 public:
  using EngineError::EngineError;
};

class SingularMatrix : public EngineError {
 public:
  using EngineError::EngineError;
};

/// K lost positive definiteness during integration (or diverged, which is the
/// same event seen from the covariance side: an eigenvalue of Z collapsed).
class PositiveDefinitenessLost : public EngineError {
 public:
  PositiveDefinitenessLost(const std::string& what, double t) : EngineError(what), time(t) {}
  double time;
};

class StepSizeUnderflow : public EngineError {
 public:
  StepSizeUnderflow(const std::string& what, double t) : EngineError(what), time(t) {}
  double time;
};

class PreconditionViolated : public EngineError {
 public:
  using EngineError::EngineError;
};

// pde verifier
class GridTooSmall : public EngineError {
 public:
  using EngineError::EngineError;
};

class NormDrift : public EngineError {
 public:
  using EngineError::EngineError;
};

class BoundaryLeak : public EngineError {
 public:
  using EngineError::EngineError;
};

/// Scenario file or command-line configuration problem.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hybrid
