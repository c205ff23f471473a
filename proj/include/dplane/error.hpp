#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dplane {

enum class ErrorKind {
    // input / usage
    SyntaxError,
    Inhomogeneous,
    ZeroPolynomial,
    CoefficientNotInField,
    InvalidArgument,
    FieldMismatch,
    // mathematical preconditions
    BothConstantInVariable,
    FieldNotFinite,
    NotIrreducible,
    RationalsUnsupported,
    CharacteristicDividesDegree,
    BadCharacteristic,
    NonReduced,
    PointNotOnCurve,
    SingularPoint,
    ExhaustedAttempts,
    CommonComponent,
    GoodPositionFailed,
    FieldTooSmall,
    BNotSmooth,
    CNotSmooth,
    DegreeMismatch,
    NoRationalPoint,
    ZeroSamplesPossible,
    OddS,
    RootsOfUnityMissing,
    NotAConic,
    ExhaustedTries,
    FieldTooLarge,
    DifferentBranchCurves,
    // bugs
    TransitivityViolation,
    OracleDisagreement,
    Internal,
};

std::string_view error_name(ErrorKind k);

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(error_name(kind)) + ": " + what), kind_(kind), detail_(what)
    {
    }

    ErrorKind kind() const noexcept { return kind_; }
    const std::string& detail() const noexcept { return detail_; }

    // 2 usage/parse, 3 mathematical precondition, 4 internal assertion
    int exit_code() const noexcept;

  private:
    ErrorKind kind_;
    std::string detail_;
};

[[noreturn]] inline void fail(ErrorKind k, const std::string& msg) { throw Error(k, msg); }

#define DPLANE_ASSERT(cond, msg)                                                              \
    do {                                                                                      \
        if (!(cond))                                                                          \
            ::dplane::fail(::dplane::ErrorKind::Internal,                                     \
                           std::string(msg) + " (" __FILE__ ":" + std::to_string(__LINE__) + ")"); \
    } while (0)

} // namespace dplane
