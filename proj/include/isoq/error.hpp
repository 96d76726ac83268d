#pragma once

#include <stdexcept>
#include <string>

namespace isoq {

enum class ErrorKind {
    BaseMismatch,
    DivisionByIdenticallyZero,
    BranchPointAtBase,
    OrderExhausted,
    ZeroJet,
    ZeroDenominator,
    NotInSpan,
    NotSymplectic,
    NotUnimodular,
    NotLagrangian,
    OnHyperplaneSection,
    OnQuadric,
    DegenerateSolve,
    SyntaxError,
    PoleAtPoint,
    BranchPointAtPoint,
    BothDiagonalEntriesVanish,
    NotLegendre,
    SingularFrame,
    BranchPoint,
    AssociateBranchPoint,
    GaugeSolveFailed,
    HeptacticPoint,
    CycleCurve,
    ExceptionalKappa,
    CriticalPoint,
    SingularityOnPath,
    StepUnderflow,
    DVanishes,
    FrameUnavailable,
    AtEnd,
    SingularJacobian,
    SchemaError,
    IoError,
    Validation,
};

const char* to_string(ErrorKind k);

// True for kinds caused by bad input rather than by the numerics.
bool is_validation(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

class SyntaxError : public Error {
public:
    SyntaxError(std::size_t offset, const std::string& what)
        : Error(ErrorKind::SyntaxError, what + " at offset " + std::to_string(offset)), offset_(offset) {}
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

}  // namespace isoq
