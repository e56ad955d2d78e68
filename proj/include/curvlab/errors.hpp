#pragma once

#include <stdexcept>
#include <string>

namespace curvlab {

// Base class for all library errors. Input/usage problems derive from
// InputError (CLI maps these to exit code 2); everything else signals a
// broken internal contract or numerical breakdown.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class InputError : public Error {
public:
    explicit InputError(const std::string& msg) : Error(msg) {}
};

#define CURVLAB_DEFINE_ERROR(Name, Base)                                     \
    class Name : public Base {                                               \
    public:                                                                   \
        explicit Name(const std::string& msg) : Base(#Name ": " + msg) {}     \
    }

CURVLAB_DEFINE_ERROR(NonReversible, InputError);
CURVLAB_DEFINE_ERROR(AsymmetricSupport, InputError);
CURVLAB_DEFINE_ERROR(NonPositiveRate, InputError);
CURVLAB_DEFINE_ERROR(DisconnectedGraph, InputError);
CURVLAB_DEFINE_ERROR(BadParams, InputError);
CURVLAB_DEFINE_ERROR(MassMismatch, InputError);
CURVLAB_DEFINE_ERROR(NegativeTime, InputError);
CURVLAB_DEFINE_ERROR(TooLargeForExact, InputError);
CURVLAB_DEFINE_ERROR(ParseError, InputError);

CURVLAB_DEFINE_ERROR(Infeasible, Error);
CURVLAB_DEFINE_ERROR(Unbounded, Error);
CURVLAB_DEFINE_ERROR(NumericalFailure, Error);
CURVLAB_DEFINE_ERROR(ConstructionViolation, Error);
CURVLAB_DEFINE_ERROR(CurvatureNotCertified, Error);
CURVLAB_DEFINE_ERROR(EigensolverFailure, Error);

#undef CURVLAB_DEFINE_ERROR

}  // namespace curvlab
