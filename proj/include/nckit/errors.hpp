#pragma once

#include <stdexcept>
#include <string>

namespace nckit {

// Every library failure derives from Error so callers can catch one type.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

#define NCKIT_DEFINE_ERROR(Name)                                               \
  class Name : public Error {                                                  \
  public:                                                                      \
    explicit Name(const std::string &what) : Error(#Name ": " + what) {}       \
  }

// poly
NCKIT_DEFINE_ERROR(ParseError);

// series
NCKIT_DEFINE_ERROR(NonUnitLeadingCoefficient);
NCKIT_DEFINE_ERROR(PositiveValuationRequired);
NCKIT_DEFINE_ERROR(NotInvertible);
NCKIT_DEFINE_ERROR(OutOfTruncationRange);

// ncpart
NCKIT_DEFINE_ERROR(NotAPartition);
NCKIT_DEFINE_ERROR(CrossingPartition);
NCKIT_DEFINE_ERROR(GroundMismatch);
NCKIT_DEFINE_ERROR(NotBlockUnion);

// trees
NCKIT_DEFINE_ERROR(NotSchroder);
NCKIT_DEFINE_ERROR(NotPrime);
NCKIT_DEFINE_ERROR(InvalidArrangement);

// cumulants
NCKIT_DEFINE_ERROR(PreconditionViolated);
NCKIT_DEFINE_ERROR(LengthMismatch);
NCKIT_DEFINE_ERROR(NoConvergenceAtOrder);

#undef NCKIT_DEFINE_ERROR

} // namespace nckit
