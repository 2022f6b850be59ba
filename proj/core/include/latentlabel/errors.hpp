#pragma once

#include <stdexcept>
#include <string>

namespace latentlabel {

// Two failure families: bad inputs (shapes, values, files) and numerical
// failures during optimization. The CLI maps them to exit codes 2 and 3.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class InputError : public Error {
public:
  using Error::Error;
};

class SolverError : public Error {
public:
  using Error::Error;
};

class DimensionMismatch : public InputError {
public:
  using InputError::InputError;
};

class NonBinaryLabel : public InputError {
public:
  using InputError::InputError;
};

class NonFiniteValue : public InputError {
public:
  using InputError::InputError;
};

class NegativeFeature : public InputError {
public:
  using InputError::InputError;
};

class EmptyInput : public InputError {
public:
  using InputError::InputError;
};

class InvalidK : public InputError {
public:
  using InputError::InputError;
};

class InvalidFoldCount : public InputError {
public:
  using InputError::InputError;
};

class NoEvaluableSamples : public InputError {
public:
  using InputError::InputError;
};

class LineSearchFailed : public SolverError {
public:
  using SolverError::SolverError;
};

class SingularSystem : public SolverError {
public:
  using SolverError::SolverError;
};

}  // namespace latentlabel
