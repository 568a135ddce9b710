#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace oscnet {

enum class ErrorKind {
  // graph construction
  IndexOutOfRange,
  SelfLoop,
  DuplicateEdge,
  NonPositiveWeight,
  InvalidSize,
  InvalidSubset,
  ZeroOutDegree,
  // linear algebra
  DimensionMismatch,
  ConvergenceFailure,
  ComplexSpectrum,
  NegativeEigenvalue,
  NoPrincipalRoot,
  // integration
  InvalidConfig,
  UnstableStep,
  NonFiniteState,
  OddLength,
  TooFewSamples,
  NonUniformSampling,
  // echo-chamber analysis
  Overflow,
  ZeroAmplitude,
  EmptyTrajectory,
  // io
  ParseError,
  MissingKey,
  InvalidValue,
  IoError,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Numerical failures map to CLI exit code 2, everything else to 1.
bool is_numerical(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what,
        std::optional<std::size_t> index = std::nullopt)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind),
        index_(index) {}

  ErrorKind kind() const noexcept { return kind_; }

  // Offending element (edge index for graph validation errors), if any.
  std::optional<std::size_t> index() const noexcept { return index_; }

 private:
  ErrorKind kind_;
  std::optional<std::size_t> index_;
};

}  // namespace oscnet
