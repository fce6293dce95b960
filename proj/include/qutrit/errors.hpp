#pragma once

#include <stdexcept>
#include <string>

namespace qutrit {

// Coarse classification used to pick CLI exit codes.
enum class ErrorKind {
  Parse,       // malformed input text, wrong matrix shape
  Domain,      // invalid values, failed validation
  Degenerate,  // statistics undefined for the given data
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

#define QUTRIT_DEFINE_ERROR(Name, Kind)                        \
  class Name : public Error {                                  \
   public:                                                     \
    explicit Name(const std::string& what)                     \
        : Error(ErrorKind::Kind, #Name ": " + what) {}         \
  }

QUTRIT_DEFINE_ERROR(NormalizationError, Domain);
QUTRIT_DEFINE_ERROR(NegativeCoefficient, Domain);
QUTRIT_DEFINE_ERROR(DomainError, Domain);
QUTRIT_DEFINE_ERROR(DimensionError, Domain);
QUTRIT_DEFINE_ERROR(IndexError, Domain);
QUTRIT_DEFINE_ERROR(BoundaryError, Domain);
QUTRIT_DEFINE_ERROR(InsufficientSpan, Domain);
QUTRIT_DEFINE_ERROR(ValidationError, Domain);
QUTRIT_DEFINE_ERROR(DegenerateVariance, Degenerate);
QUTRIT_DEFINE_ERROR(EmptyMatrix, Degenerate);
QUTRIT_DEFINE_ERROR(ParseError, Parse);
QUTRIT_DEFINE_ERROR(ShapeError, Parse);

#undef QUTRIT_DEFINE_ERROR

}  // namespace qutrit
