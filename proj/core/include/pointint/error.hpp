#pragma once

#include <stdexcept>
#include <string>

namespace pointint {

/// Failure classes reported by the solvers. `Validation` errors come from bad
/// inputs; `Numerical` errors signal a breakdown inside a computation.
enum class ErrorClass { Validation, Numerical };

class Error : public std::runtime_error {
 public:
  Error(std::string kind, ErrorClass cls, const std::string& detail)
      : std::runtime_error(detail), kind_(std::move(kind)), class_(cls) {}

  const std::string& kind() const noexcept { return kind_; }
  ErrorClass error_class() const noexcept { return class_; }

 private:
  std::string kind_;
  ErrorClass class_;
};

/// A unitarity, unimodularity or range constraint failed.
class ConstraintViolation : public Error {
 public:
  ConstraintViolation(std::string field, double residual);

  const std::string& field() const noexcept { return field_; }
  double residual() const noexcept { return residual_; }

 private:
  std::string field_;
  double residual_;
};

class InvalidInput : public Error {
 public:
  explicit InvalidInput(const std::string& detail)
      : Error("InvalidInput", ErrorClass::Validation, detail) {}
};

class SideMismatch : public Error {
 public:
  explicit SideMismatch(const std::string& detail)
      : Error("SideMismatch", ErrorClass::Validation, detail) {}
};

class WrongVariant : public Error {
 public:
  explicit WrongVariant(const std::string& detail)
      : Error("WrongVariant", ErrorClass::Validation, detail) {}
};

class BelowGap : public Error {
 public:
  explicit BelowGap(const std::string& detail)
      : Error("BelowGap", ErrorClass::Validation, detail) {}
};

class NoPreimage : public Error {
 public:
  explicit NoPreimage(const std::string& detail)
      : Error("NoPreimage", ErrorClass::Numerical, detail) {}
};

class SingularSystem : public Error {
 public:
  explicit SingularSystem(const std::string& detail)
      : Error("SingularSystem", ErrorClass::Numerical, detail) {}
};

class StepTooCoarse : public Error {
 public:
  explicit StepTooCoarse(const std::string& detail)
      : Error("StepTooCoarse", ErrorClass::Numerical, detail) {}
};

class NoDiscreteSpectrum : public Error {
 public:
  explicit NoDiscreteSpectrum(const std::string& detail)
      : Error("NoDiscreteSpectrum", ErrorClass::Numerical, detail) {}
};

}  // namespace pointint
