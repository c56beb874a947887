#pragma once

#include <stdexcept>
#include <string>

namespace mdtb {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define MDTB_DEFINE_ERROR(Name)                     \
    class Name : public Error {                     \
    public:                                         \
        using Error::Error;                         \
    }

MDTB_DEFINE_ERROR(MissingZeroRoot);
MDTB_DEFINE_ERROR(DuplicateRoot);
MDTB_DEFINE_ERROR(EmptyInterval);
MDTB_DEFINE_ERROR(DegreeTooSmall);
MDTB_DEFINE_ERROR(ParameterOverflow);
MDTB_DEFINE_ERROR(PointOutOfInterval);
MDTB_DEFINE_ERROR(SingularSystem);
MDTB_DEFINE_ERROR(DerivOrderTooHigh);
MDTB_DEFINE_ERROR(OddDegree);
MDTB_DEFINE_ERROR(DimensionMismatch);
MDTB_DEFINE_ERROR(AllZeroVector);
MDTB_DEFINE_ERROR(DegenerateConstraint);
MDTB_DEFINE_ERROR(PeriodicSmoothnessTooHigh);
MDTB_DEFINE_ERROR(InvalidSpec);
MDTB_DEFINE_ERROR(UnknownExample);

#undef MDTB_DEFINE_ERROR

} // namespace mdtb
