#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace acihs {

/// Base of every numerical/domain error raised by the library. `name()` is the
/// stable identifier surfaced in CLI reports.
class Error : public std::runtime_error {
 public:
  Error(std::string_view name, const std::string& what)
      : std::runtime_error(std::string(name) + ": " + what), name_(name) {}

  std::string_view name() const noexcept { return name_; }

 private:
  std::string_view name_;
};

#define ACIHS_DEFINE_ERROR(Type)                                        \
  class Type : public Error {                                           \
   public:                                                              \
    explicit Type(const std::string& what) : Error(#Type, what) {}      \
  }

ACIHS_DEFINE_ERROR(InvalidArgument);
ACIHS_DEFINE_ERROR(DuplicateNodes);
ACIHS_DEFINE_ERROR(DivisionByZeroPolynomial);
ACIHS_DEFINE_ERROR(IllConditioned);
ACIHS_DEFINE_ERROR(DegenerateLine);
ACIHS_DEFINE_ERROR(StepRejected);
ACIHS_DEFINE_ERROR(ConstraintDegenerate);
ACIHS_DEFINE_ERROR(PointNotOnCurve);
ACIHS_DEFINE_ERROR(ThetaDivisorDegenerate);
ACIHS_DEFINE_ERROR(ConfluentDivisor);
ACIHS_DEFINE_ERROR(SingularCurve);
ACIHS_DEFINE_ERROR(DuplicatePoints);
ACIHS_DEFINE_ERROR(DegreeTooHigh);
ACIHS_DEFINE_ERROR(ResidueSumNonzero);
ACIHS_DEFINE_ERROR(LeadingNotRegularNilpotent);
ACIHS_DEFINE_ERROR(BetaZero);
ACIHS_DEFINE_ERROR(RamifiedFiber);
ACIHS_DEFINE_ERROR(SamplerFailure);
ACIHS_DEFINE_ERROR(AsymmetricPeriodMatrix);
ACIHS_DEFINE_ERROR(ConfigError);

#undef ACIHS_DEFINE_ERROR

}  // namespace acihs
