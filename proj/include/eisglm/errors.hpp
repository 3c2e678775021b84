#ifndef EISGLM_ERRORS_HPP
#define EISGLM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace eisglm {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define EISGLM_DEFINE_ERROR(Name)                                             \
    class Name : public Error {                                               \
    public:                                                                   \
        using Error::Error;                                                   \
    }

// tableau
EISGLM_DEFINE_ERROR(NonUniqueAbscissas);
EISGLM_DEFINE_ERROR(InconsistentAbscissas);
EISGLM_DEFINE_ERROR(OrderShortfall);
EISGLM_DEFINE_ERROR(EisViolation);
EISGLM_DEFINE_ERROR(ParseError);
EISGLM_DEFINE_ERROR(InvariantViolation);
EISGLM_DEFINE_ERROR(UnknownMethod);

// stepper
EISGLM_DEFINE_ERROR(StartupFailure);
EISGLM_DEFINE_ERROR(NonFinite);
EISGLM_DEFINE_ERROR(NewtonDivergence);
EISGLM_DEFINE_ERROR(SingularJacobian);
EISGLM_DEFINE_ERROR(InvalidWindow);

// postproc
EISGLM_DEFINE_ERROR(SingularT);
EISGLM_DEFINE_ERROR(DimensionMismatch);

// stability
EISGLM_DEFINE_ERROR(SingularAmplification);

// harness
EISGLM_DEFINE_ERROR(ReferenceUnconverged);
EISGLM_DEFINE_ERROR(InsufficientPoints);

#undef EISGLM_DEFINE_ERROR

} // namespace eisglm

#endif
