#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wsdirac {

/// Failure categories surfaced by the solver pipeline. Sweeps and the CLI
/// serialize these by name, so the spelling of `to_string` is part of the
/// output format.
enum class ErrorKind {
  InvalidInput,
  DegenerateSuperpotential,
  LadderSingular,
  NoRealRoot,
  NotNormalizable,
  NotBoundRegime,
  IntegrationBlowup,
  NoEigenvalueInBracket,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::DegenerateSuperpotential: return "DegenerateSuperpotential";
    case ErrorKind::LadderSingular: return "LadderSingular";
    case ErrorKind::NoRealRoot: return "NoRealRoot";
    case ErrorKind::NotNormalizable: return "NotNormalizable";
    case ErrorKind::NotBoundRegime: return "NotBoundRegime";
    case ErrorKind::IntegrationBlowup: return "IntegrationBlowup";
    case ErrorKind::NoEigenvalueInBracket: return "NoEigenvalueInBracket";
  }
  return "Unknown";
}

class SolverError : public std::runtime_error {
 public:
  SolverError(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace wsdirac
