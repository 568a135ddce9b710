#include "oscnet/errors.hpp"

namespace oscnet {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::SelfLoop: return "SelfLoop";
    case ErrorKind::DuplicateEdge: return "DuplicateEdge";
    case ErrorKind::NonPositiveWeight: return "NonPositiveWeight";
    case ErrorKind::InvalidSize: return "InvalidSize";
    case ErrorKind::InvalidSubset: return "InvalidSubset";
    case ErrorKind::ZeroOutDegree: return "ZeroOutDegree";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorKind::ComplexSpectrum: return "ComplexSpectrum";
    case ErrorKind::NegativeEigenvalue: return "NegativeEigenvalue";
    case ErrorKind::NoPrincipalRoot: return "NoPrincipalRoot";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::UnstableStep: return "UnstableStep";
    case ErrorKind::NonFiniteState: return "NonFiniteState";
    case ErrorKind::OddLength: return "OddLength";
    case ErrorKind::TooFewSamples: return "TooFewSamples";
    case ErrorKind::NonUniformSampling: return "NonUniformSampling";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::ZeroAmplitude: return "ZeroAmplitude";
    case ErrorKind::EmptyTrajectory: return "EmptyTrajectory";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::MissingKey: return "MissingKey";
    case ErrorKind::InvalidValue: return "InvalidValue";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

bool is_numerical(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::ConvergenceFailure:
    case ErrorKind::ComplexSpectrum:
    case ErrorKind::NegativeEigenvalue:
    case ErrorKind::NoPrincipalRoot:
    case ErrorKind::UnstableStep:
    case ErrorKind::NonFiniteState:
    case ErrorKind::Overflow:
      return true;
    default:
      return false;
  }
}

}  // namespace oscnet
