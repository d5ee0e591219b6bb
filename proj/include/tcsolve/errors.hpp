#pragma once

#include <stdexcept>
#include <string>

namespace tcsolve {

/// Machine-readable category of a module error. Mathematical verdicts
/// (no rational root, no candidate found) are values, never errors.
enum class ErrorKind {
    DivisionByZero,
    ZeroFunction,
    ConstantExponentOnly,
    WrongShape,
    LinearlyDependent,
    NonRationalResult,
    NonzeroExponentConstant,
    OdeMismatch,
    MissingOde,
    PhiVanishes,
    PreconditionViolated,
    ZeroS,
    ZeroR0,
    ShapeMismatch,
    RatioMismatch,
    SingularOrigin,
    TruncationTooShort,
    PoleOnCircle,
    QuadratureNearPole,
    ContourTooClose,
    InsufficientSamples,
    SyntaxError,
    UnknownSymbol,
    RamificationError,
    InvalidInput,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace tcsolve
