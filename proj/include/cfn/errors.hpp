#pragma once

#include <stdexcept>
#include <string>

namespace cfn {

// Base for everything thrown by the library. Subtypes carry no extra state;
// they exist so callers can catch by failure kind.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define CFN_DEFINE_ERROR(Name)                                  \
  struct Name : Error {                                         \
    explicit Name(const std::string& msg) : Error(msg) {}       \
  }

// root system construction / queries
CFN_DEFINE_ERROR(NonReduced);
CFN_DEFINE_ERROR(BadX0);
CFN_DEFINE_ERROR(InconsistentMultiplicity);
CFN_DEFINE_ERROR(EmptyNoncompact);
CFN_DEFINE_ERROR(NotARoot);
CFN_DEFINE_ERROR(IncompleteAssignment);
CFN_DEFINE_ERROR(NotPositiveSystem);

// c-function evaluation
CFN_DEFINE_ERROR(NotNoncompactPositive);
CFN_DEFINE_ERROR(NotCompactPositive);

// catalog
CFN_DEFINE_ERROR(UnknownEntry);
CFN_DEFINE_ERROR(ParseError);
CFN_DEFINE_ERROR(ValidationFailure);

// oracles
CFN_DEFINE_ERROR(OutsideOmega);
CFN_DEFINE_ERROR(NewtonDivergence);
CFN_DEFINE_ERROR(OutOfDomain);
CFN_DEFINE_ERROR(QuadratureFailure);
CFN_DEFINE_ERROR(NotSymmetric);

// cli input
CFN_DEFINE_ERROR(BadGrid);

#undef CFN_DEFINE_ERROR

}  // namespace cfn
