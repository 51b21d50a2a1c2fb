#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace perfect {

/// Failure categories shared by every module. The CLI reports these names
/// verbatim, so renaming one is a user-visible change.
enum class Errc {
  ContextMismatch,
  InvalidArgument,
  DivisionByZero,
  ZeroDenominator,
  NotAPthPower,
  NotDivisible,
  PoleAtPoint,
  LevelTooLow,
  LevelOverflow,
  ExponentOverflow,
  NotPerfectMode,
  DerivativeNonzero,
  ConstantPolynomial,
  BoundExceeded,
  NoEmbedding,
  Unsupported,
  SyntaxError,
  UnknownVariable,
  UnknownCommand,
};

constexpr std::string_view errc_name(Errc e) {
  switch (e) {
    case Errc::ContextMismatch: return "ContextMismatch";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::ZeroDenominator: return "ZeroDenominator";
    case Errc::NotAPthPower: return "NotAPthPower";
    case Errc::NotDivisible: return "NotDivisible";
    case Errc::PoleAtPoint: return "PoleAtPoint";
    case Errc::LevelTooLow: return "LevelTooLow";
    case Errc::LevelOverflow: return "LevelOverflow";
    case Errc::ExponentOverflow: return "ExponentOverflow";
    case Errc::NotPerfectMode: return "NotPerfectMode";
    case Errc::DerivativeNonzero: return "DerivativeNonzero";
    case Errc::ConstantPolynomial: return "ConstantPolynomial";
    case Errc::BoundExceeded: return "BoundExceeded";
    case Errc::NoEmbedding: return "NoEmbedding";
    case Errc::Unsupported: return "Unsupported";
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::UnknownVariable: return "UnknownVariable";
    case Errc::UnknownCommand: return "UnknownCommand";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace perfect
