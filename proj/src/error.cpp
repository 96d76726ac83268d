#include "isoq/error.hpp"

namespace isoq {

const char* to_string(ErrorKind k) {
    switch (k) {
        case ErrorKind::BaseMismatch: return "BaseMismatch";
        case ErrorKind::DivisionByIdenticallyZero: return "DivisionByIdenticallyZero";
        case ErrorKind::BranchPointAtBase: return "BranchPointAtBase";
        case ErrorKind::OrderExhausted: return "OrderExhausted";
        case ErrorKind::ZeroJet: return "ZeroJet";
        case ErrorKind::ZeroDenominator: return "ZeroDenominator";
        case ErrorKind::NotInSpan: return "NotInSpan";
        case ErrorKind::NotSymplectic: return "NotSymplectic";
        case ErrorKind::NotUnimodular: return "NotUnimodular";
        case ErrorKind::NotLagrangian: return "NotLagrangian";
        case ErrorKind::OnHyperplaneSection: return "OnHyperplaneSection";
        case ErrorKind::OnQuadric: return "OnQuadric";
        case ErrorKind::DegenerateSolve: return "DegenerateSolve";
        case ErrorKind::SyntaxError: return "SyntaxError";
        case ErrorKind::PoleAtPoint: return "PoleAtPoint";
        case ErrorKind::BranchPointAtPoint: return "BranchPointAtPoint";
        case ErrorKind::BothDiagonalEntriesVanish: return "BothDiagonalEntriesVanish";
        case ErrorKind::NotLegendre: return "NotLegendre";
        case ErrorKind::SingularFrame: return "SingularFrame";
        case ErrorKind::BranchPoint: return "BranchPoint";
        case ErrorKind::AssociateBranchPoint: return "AssociateBranchPoint";
        case ErrorKind::GaugeSolveFailed: return "GaugeSolveFailed";
        case ErrorKind::HeptacticPoint: return "HeptacticPoint";
        case ErrorKind::CycleCurve: return "CycleCurve";
        case ErrorKind::ExceptionalKappa: return "ExceptionalKappa";
        case ErrorKind::CriticalPoint: return "CriticalPoint";
        case ErrorKind::SingularityOnPath: return "SingularityOnPath";
        case ErrorKind::StepUnderflow: return "StepUnderflow";
        case ErrorKind::DVanishes: return "DVanishes";
        case ErrorKind::FrameUnavailable: return "FrameUnavailable";
        case ErrorKind::AtEnd: return "AtEnd";
        case ErrorKind::SingularJacobian: return "SingularJacobian";
        case ErrorKind::SchemaError: return "SchemaError";
        case ErrorKind::IoError: return "IoError";
        case ErrorKind::Validation: return "Validation";
    }
    return "Unknown";
}

bool is_validation(ErrorKind k) {
    switch (k) {
        case ErrorKind::SyntaxError:
        case ErrorKind::SchemaError:
        case ErrorKind::Validation:
        case ErrorKind::NotSymplectic:
        case ErrorKind::NotUnimodular:
        case ErrorKind::NotLagrangian:
        case ErrorKind::NotLegendre:
        case ErrorKind::ExceptionalKappa:
        case ErrorKind::IoError:
            return true;
        default:
            return false;
    }
}

}  // namespace isoq
