#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace solun {

enum class ErrorKind {
  Syntax,
  UndeclaredSymbol,
  IllTyped,
  SymbolOrderTooHigh,
  EquationNotBaseType,
  NotSuperficial,
  NotLinear,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Syntax: return "SyntaxError";
    case ErrorKind::UndeclaredSymbol: return "UndeclaredSymbol";
    case ErrorKind::IllTyped: return "IllTyped";
    case ErrorKind::SymbolOrderTooHigh: return "SymbolOrderTooHigh";
    case ErrorKind::EquationNotBaseType: return "EquationNotBaseType";
    case ErrorKind::NotSuperficial: return "NotSuperficial";
    case ErrorKind::NotLinear: return "NotLinear";
  }
  return "Unknown";
}

struct SourcePosition {
  std::size_t line = 1;
  std::size_t column = 1;
};

/// Raised for malformed or ill-posed user input. Maps to CLI exit code 1.
class InputError : public std::runtime_error {
 public:
  InputError(ErrorKind kind, const std::string& message,
             std::optional<SourcePosition> where = std::nullopt)
      : std::runtime_error(format(kind, message, where)),
        kind_(kind),
        where_(where) {}

  ErrorKind kind() const { return kind_; }
  const std::optional<SourcePosition>& where() const { return where_; }

 private:
  static std::string format(ErrorKind kind, const std::string& message,
                            const std::optional<SourcePosition>& where) {
    std::string out = to_string(kind);
    if (where) {
      out += " at " + std::to_string(where->line) + ":" +
             std::to_string(where->column);
    }
    return out + ": " + message;
  }

  ErrorKind kind_;
  std::optional<SourcePosition> where_;
};

/// Building a term whose parts do not fit together (application of a
/// non-function, argument type mismatch, loose bound variable in a binding).
class TypeError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A broken engine invariant. Never expected; maps to CLI exit code 2.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace solun
