#pragma once

#include <stdexcept>
#include <string>

namespace relaxec {

enum class ErrorKind {
    Syntax,
    MultiplyDriven,
    UndefinedNet,
    Cycle,
    LevelMismatch,
    Range,
    NoGateAboveLevel,
    Budget,
    Bound,
    NotUnsat,
    BoundaryNotVerified,
    Usage,
};

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

  private:
    ErrorKind kind_;
};

}  // namespace relaxec
