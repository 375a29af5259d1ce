#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ksr {

enum class Errc {
  InvalidArgument,
  ParseError,
  ModelMismatch,
  NoDifference,
  NonIsotropic,
  NotInvertible,
  NegativeArgument,
  Unbounded,
  NotSubadditive,
  MassMismatch,
  BadSupportOrder,
  NonConcave,
  NonzeroBoundary,
  CannotCertify,
  SearchFailed,
  KnotViolation,
  WindowViolation,
  OutOfDomain,
};

std::string_view errc_name(Errc code) noexcept;

/// Every failure in the library is reported through this type. The code is
/// stable and machine-checkable; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) { throw Error(code, message); }

inline void require(bool condition, Errc code, const std::string& message) {
  if (!condition) fail(code, message);
}

inline std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::ParseError: return "ParseError";
    case Errc::ModelMismatch: return "ModelMismatch";
    case Errc::NoDifference: return "NoDifference";
    case Errc::NonIsotropic: return "NonIsotropic";
    case Errc::NotInvertible: return "NotInvertible";
    case Errc::NegativeArgument: return "NegativeArgument";
    case Errc::Unbounded: return "Unbounded";
    case Errc::NotSubadditive: return "NotSubadditive";
    case Errc::MassMismatch: return "MassMismatch";
    case Errc::BadSupportOrder: return "BadSupportOrder";
    case Errc::NonConcave: return "NonConcave";
    case Errc::NonzeroBoundary: return "NonzeroBoundary";
    case Errc::CannotCertify: return "CannotCertify";
    case Errc::SearchFailed: return "SearchFailed";
    case Errc::KnotViolation: return "KnotViolation";
    case Errc::WindowViolation: return "WindowViolation";
    case Errc::OutOfDomain: return "OutOfDomain";
  }
  return "Unknown";
}

}  // namespace ksr
