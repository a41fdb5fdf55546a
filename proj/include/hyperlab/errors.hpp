#pragma once

#include <stdexcept>
#include <string>

namespace hyperlab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* code() const noexcept { return "error"; }
};

#define HYPERLAB_ERROR(Name, Code)                            \
  class Name : public Error {                                 \
   public:                                                    \
    using Error::Error;                                       \
    const char* code() const noexcept override { return Code; } \
  };

// Bad construction input: dimensions, signatures, malformed configs.
HYPERLAB_ERROR(InvalidInput, "invalid_input")
// Lagrangian evaluated outside its domain of definition.
HYPERLAB_ERROR(DomainError, "domain_error")
HYPERLAB_ERROR(DefectiveFrame, "defective_frame")
HYPERLAB_ERROR(ZeroVector, "zero_vector")
HYPERLAB_ERROR(AsymmetricInput, "asymmetric_input")
HYPERLAB_ERROR(ZeroPolynomial, "zero_polynomial")
HYPERLAB_ERROR(DegenerateDirection, "degenerate_direction")
HYPERLAB_ERROR(RankConstraintViolation, "rank_constraint_violation")
HYPERLAB_ERROR(EpsilonTooLarge, "epsilon_too_large")

#undef HYPERLAB_ERROR

}  // namespace hyperlab
