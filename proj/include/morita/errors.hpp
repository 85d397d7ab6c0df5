#pragma once

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace morita {

enum class ErrorKind {
    // malformed input (CLI exit code 2)
    BadInput,
    BadTable,
    OutOfRange,
    TooLarge,
    GeneratorSetTooLarge,
    // failed verification (CLI exit code 1)
    NotAssociative,
    NotInverse,
    BadZero,
    BadIdentity,
    OrderMismatch,
    NoZero,
    MissingJoin,
    NotDistributive,
    IdempotentsNotFrame,
    NotCompatible,
    RelationsNotRespected,
    NotStable,
    NucleusLawFailed,
    AdjunctionFailed,
    NotQuantalFrame,
    CoverFails,
    NotIsomorphic,
    NotAction,
    SupportLaw1Failed,
    SupportLaw2Failed,
    NotPointed,
    ModuleLawFailed,
    NotHomomorphism,
    NotDistributiveLattice,
    NotQModule,
    SupportMissing,
    SupportNotEquivariant,
    SupportConditionFails,
    SupportMismatch,
    SectionEscape,
    HilbertLawFailed,
    CoveringFails,
    AssociativityFails,
    BA1Failed,
    BA2Failed,
    BA3Failed,
    BA4Failed,
    BA5Failed,
    BA6Failed,
    BA7Failed,
    BiactionLawFailed,
    CoveringFailsLeft,
    CoveringFailsRight,
    JoinMissing,
    DistributivityFails,
    E1Fails,
    E2Fails,
    JoinUndefined,
    EnlargementLawFailed,
    EquivalenceMismatch,
    InvarianceViolated,
};

std::string_view kind_name(ErrorKind k);

// True for kinds that describe malformed or oversized input rather than a
// failed mathematical check.
bool is_input_error(ErrorKind k);

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, std::string detail, std::vector<std::size_t> witness = {});

    ErrorKind kind() const noexcept { return kind_; }
    const std::vector<std::size_t>& witness() const noexcept { return witness_; }
    const std::string& detail() const noexcept { return detail_; }

  private:
    ErrorKind kind_;
    std::string detail_;
    std::vector<std::size_t> witness_;
};

[[noreturn]] void fail(ErrorKind kind, std::string detail, std::vector<std::size_t> witness = {});

}  // namespace morita
