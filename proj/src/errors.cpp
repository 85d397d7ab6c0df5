#include "morita/errors.hpp"

#include <sstream>

namespace morita {

std::string_view kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::BadInput: return "BadInput";
        case ErrorKind::BadTable: return "BadTable";
        case ErrorKind::OutOfRange: return "OutOfRange";
        case ErrorKind::TooLarge: return "TooLarge";
        case ErrorKind::GeneratorSetTooLarge: return "GeneratorSetTooLarge";
        case ErrorKind::NotAssociative: return "NotAssociative";
        case ErrorKind::NotInverse: return "NotInverse";
        case ErrorKind::BadZero: return "BadZero";
        case ErrorKind::BadIdentity: return "BadIdentity";
        case ErrorKind::OrderMismatch: return "OrderMismatch";
        case ErrorKind::NoZero: return "NoZero";
        case ErrorKind::MissingJoin: return "MissingJoin";
        case ErrorKind::NotDistributive: return "NotDistributive";
        case ErrorKind::IdempotentsNotFrame: return "IdempotentsNotFrame";
        case ErrorKind::NotCompatible: return "NotCompatible";
        case ErrorKind::RelationsNotRespected: return "RelationsNotRespected";
        case ErrorKind::NotStable: return "NotStable";
        case ErrorKind::NucleusLawFailed: return "NucleusLawFailed";
        case ErrorKind::AdjunctionFailed: return "AdjunctionFailed";
        case ErrorKind::NotQuantalFrame: return "NotQuantalFrame";
        case ErrorKind::CoverFails: return "CoverFails";
        case ErrorKind::NotIsomorphic: return "NotIsomorphic";
        case ErrorKind::NotAction: return "NotAction";
        case ErrorKind::SupportLaw1Failed: return "SupportLaw1Failed";
        case ErrorKind::SupportLaw2Failed: return "SupportLaw2Failed";
        case ErrorKind::NotPointed: return "NotPointed";
        case ErrorKind::ModuleLawFailed: return "ModuleLawFailed";
        case ErrorKind::NotHomomorphism: return "NotHomomorphism";
        case ErrorKind::NotDistributiveLattice: return "NotDistributiveLattice";
        case ErrorKind::NotQModule: return "NotQModule";
        case ErrorKind::SupportMissing: return "SupportMissing";
        case ErrorKind::SupportNotEquivariant: return "SupportNotEquivariant";
        case ErrorKind::SupportConditionFails: return "SupportConditionFails";
        case ErrorKind::SupportMismatch: return "SupportMismatch";
        case ErrorKind::SectionEscape: return "SectionEscape";
        case ErrorKind::HilbertLawFailed: return "HilbertLawFailed";
        case ErrorKind::CoveringFails: return "CoveringFails";
        case ErrorKind::AssociativityFails: return "AssociativityFails";
        case ErrorKind::BA1Failed: return "BA1Failed";
        case ErrorKind::BA2Failed: return "BA2Failed";
        case ErrorKind::BA3Failed: return "BA3Failed";
        case ErrorKind::BA4Failed: return "BA4Failed";
        case ErrorKind::BA5Failed: return "BA5Failed";
        case ErrorKind::BA6Failed: return "BA6Failed";
        case ErrorKind::BA7Failed: return "BA7Failed";
        case ErrorKind::BiactionLawFailed: return "BiactionLawFailed";
        case ErrorKind::CoveringFailsLeft: return "CoveringFailsLeft";
        case ErrorKind::CoveringFailsRight: return "CoveringFailsRight";
        case ErrorKind::JoinMissing: return "JoinMissing";
        case ErrorKind::DistributivityFails: return "DistributivityFails";
        case ErrorKind::E1Fails: return "E1Fails";
        case ErrorKind::E2Fails: return "E2Fails";
        case ErrorKind::JoinUndefined: return "JoinUndefined";
        case ErrorKind::EnlargementLawFailed: return "EnlargementLawFailed";
        case ErrorKind::EquivalenceMismatch: return "EquivalenceMismatch";
        case ErrorKind::InvarianceViolated: return "InvarianceViolated";
    }
    return "Unknown";
}

bool is_input_error(ErrorKind k) {
    switch (k) {
        case ErrorKind::BadInput:
        case ErrorKind::BadTable:
        case ErrorKind::OutOfRange:
        case ErrorKind::TooLarge:
        case ErrorKind::GeneratorSetTooLarge:
            return true;
        default:
            return false;
    }
}

namespace {

std::string render(ErrorKind kind, const std::string& detail,
                   const std::vector<std::size_t>& witness) {
    std::ostringstream os;
    os << kind_name(kind);
    if (!witness.empty()) {
        os << '(';
        for (std::size_t i = 0; i < witness.size(); ++i) os << (i ? "," : "") << witness[i];
        os << ')';
    }
    if (!detail.empty()) os << ": " << detail;
    return os.str();
}

}  // namespace

Error::Error(ErrorKind kind, std::string detail, std::vector<std::size_t> witness)
    : std::runtime_error(render(kind, detail, witness)),
      kind_(kind),
      detail_(std::move(detail)),
      witness_(std::move(witness)) {}

void fail(ErrorKind kind, std::string detail, std::vector<std::size_t> witness) {
    throw Error(kind, std::move(detail), std::move(witness));
}

}  // namespace morita
