#ifndef GCMCE_ERRORS_HPP
#define GCMCE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gcmce {

// Base class for all domain errors thrown by the library. The CLI maps
// these to exit code 1 with a JSON error object.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct NotPrimePower : Error {
    explicit NotPrimePower(const std::string& msg) : Error(msg) {}
};

struct DegreeTooLarge : Error {
    explicit DegreeTooLarge(const std::string& msg) : Error(msg) {}
};

struct BasisRankDeficient : Error {
    explicit BasisRankDeficient(const std::string& msg) : Error(msg) {}
};

struct EnumerationTooLarge : Error {
    explicit EnumerationTooLarge(const std::string& msg) : Error(msg) {}
};

struct ParametersInfeasible : Error {
    explicit ParametersInfeasible(const std::string& msg) : Error(msg) {}
};

struct GivesUpAfterMaxTries : Error {
    explicit GivesUpAfterMaxTries(const std::string& msg) : Error(msg) {}
};

struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& msg) : Error(msg) {}
};

struct ThetaNotInjective : Error {
    explicit ThetaNotInjective(const std::string& msg) : Error(msg) {}
};

struct FieldMismatch : Error {
    explicit FieldMismatch(const std::string& msg) : Error(msg) {}
};

struct NotApplicable : Error {
    explicit NotApplicable(const std::string& msg) : Error(msg) {}
};

struct ErrorBudgetTooLarge : Error {
    explicit ErrorBudgetTooLarge(const std::string& msg) : Error(msg) {}
};

struct DecodeFailure : Error {
    explicit DecodeFailure(const std::string& msg) : Error(msg) {}
};

struct MaxItersExceeded : Error {
    explicit MaxItersExceeded(const std::string& msg) : Error(msg) {}
};

struct InsufficientWords : Error {
    explicit InsufficientWords(const std::string& msg) : Error(msg) {}
};

struct AmbiguousSignatures : Error {
    explicit AmbiguousSignatures(const std::string& msg) : Error(msg) {}
};

struct SignatureMismatch : Error {
    explicit SignatureMismatch(const std::string& msg) : Error(msg) {}
};

struct RankDeficientBlock : Error {
    explicit RankDeficientBlock(const std::string& msg) : Error(msg) {}
};

struct TooFewCleanBlocks : Error {
    explicit TooFewCleanBlocks(const std::string& msg) : Error(msg) {}
};

struct InfeasibleParameters : Error {
    explicit InfeasibleParameters(const std::string& msg) : Error(msg) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

}  // namespace gcmce

#endif
