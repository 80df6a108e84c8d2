#pragma once

#include <stdexcept>
#include <string>

namespace arithlift {

// Exit-code classes used by the CLI: input problems map to 2, missing data to 3.
enum class ErrorClass { Input, InsufficientData, Numeric, Internal };

class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& msg, ErrorClass cls = ErrorClass::Input)
        : std::runtime_error(kind + ": " + msg), kind_(std::move(kind)), cls_(cls) {}
    const std::string& kind() const { return kind_; }
    ErrorClass error_class() const { return cls_; }

private:
    std::string kind_;
    ErrorClass cls_;
};

#define ARITHLIFT_ERROR(Name, Cls)                                              \
    class Name : public Error {                                                 \
    public:                                                                     \
        explicit Name(const std::string& msg) : Error(#Name, msg, Cls) {}      \
    };

ARITHLIFT_ERROR(NonFundamental, ErrorClass::Input)
ARITHLIFT_ERROR(EvenDiscriminant, ErrorClass::Input)
ARITHLIFT_ERROR(PrecisionUnachievable, ErrorClass::Numeric)
ARITHLIFT_ERROR(NotPositiveDefinite, ErrorClass::Input)
ARITHLIFT_ERROR(DomainMismatch, ErrorClass::Input)
ARITHLIFT_ERROR(EnumerationBudgetExceeded, ErrorClass::Numeric)
ARITHLIFT_ERROR(SplitPrime, ErrorClass::Input)
ARITHLIFT_ERROR(UnsupportedPresentation, ErrorClass::Input)
ARITHLIFT_ERROR(NotIntegral, ErrorClass::Input)
ARITHLIFT_ERROR(NotOrthogonalSum, ErrorClass::Input)
ARITHLIFT_ERROR(InsufficientPrecision, ErrorClass::InsufficientData)
ARITHLIFT_ERROR(RankMismatch, ErrorClass::Input)
ARITHLIFT_ERROR(DomainError, ErrorClass::Input)
ARITHLIFT_ERROR(OnSingularLocus, ErrorClass::Input)
ARITHLIFT_ERROR(TruncationBudgetExceeded, ErrorClass::Numeric)
ARITHLIFT_ERROR(DegenerateTestFunction, ErrorClass::Input)
ARITHLIFT_ERROR(ParseError, ErrorClass::Input)
ARITHLIFT_ERROR(HeckeViolation, ErrorClass::Input)
ARITHLIFT_ERROR(MissingCoefficient, ErrorClass::InsufficientData)
ARITHLIFT_ERROR(OutsideConvergence, ErrorClass::Input)
ARITHLIFT_ERROR(KernelDivergence, ErrorClass::Numeric)

#undef ARITHLIFT_ERROR

}  // namespace arithlift
