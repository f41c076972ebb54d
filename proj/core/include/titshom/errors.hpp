#pragma once

#include <stdexcept>
#include <string>

namespace titshom {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define TITSHOM_ERROR(Name)                                   \
  class Name : public Error {                                 \
   public:                                                    \
    explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
  }

TITSHOM_ERROR(DegreeOutOfRange);
TITSHOM_ERROR(FieldTooLarge);
TITSHOM_ERROR(BudgetExceeded);
TITSHOM_ERROR(NonComplementary);
TITSHOM_ERROR(ZeroVector);
TITSHOM_ERROR(BadCertificate);
TITSHOM_ERROR(DegreeZero);
TITSHOM_ERROR(NotSaturated);
TITSHOM_ERROR(NotSpanning);
TITSHOM_ERROR(ShapeUnavailable);
TITSHOM_ERROR(InvalidDescriptor);
TITSHOM_ERROR(IntegralModeNonTypeA);
TITSHOM_ERROR(UnknownSuite);
TITSHOM_ERROR(InvalidArgument);
TITSHOM_ERROR(ParseError);

#undef TITSHOM_ERROR

// Carries the degree and the offending generator.
class DDNotZero : public Error {
 public:
  DDNotZero(int degree, std::string generator)
      : Error("DDNotZero: d∘d != 0 at degree " + std::to_string(degree) + " on " + generator),
        degree_(degree),
        generator_(std::move(generator)) {}
  int degree() const noexcept { return degree_; }
  const std::string& generator() const noexcept { return generator_; }

 private:
  int degree_;
  std::string generator_;
};

class IdentityViolation : public Error {
 public:
  IdentityViolation(std::string identity, std::string cell)
      : Error("IdentityViolation: " + identity + " fails on " + cell),
        identity_(std::move(identity)),
        cell_(std::move(cell)) {}
  const std::string& identity() const noexcept { return identity_; }
  const std::string& cell() const noexcept { return cell_; }

 private:
  std::string identity_;
  std::string cell_;
};

class CertificateFailure : public Error {
 public:
  explicit CertificateFailure(std::string step)
      : Error("CertificateFailure at " + step), step_(std::move(step)) {}
  const std::string& step() const noexcept { return step_; }

 private:
  std::string step_;
};

}  // namespace titshom
