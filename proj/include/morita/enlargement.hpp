#pragma once

#include <compare>
#include <cstdint>
#include <vector>

#include "morita/actions.hpp"
#include "morita/bimodules.hpp"
#include "morita/pseudogroup.hpp"

namespace morita {

// eUe with the operations of U; its identity is e.
struct LocalPseudogroup {
    PseudogroupPtr p;
    std::vector<Elem> index;  // local → U
    std::vector<Elem> local;  // U → local, npos outside eUe
};
// Throws BadInput when e is not an idempotent of U.
LocalPseudogroup local_pseudogroup(const PseudogroupPtr& u, Elem e);

// u = a·s·b with s in the local pseudogroup. All U indices.
struct Factorization {
    Elem a = 0, s = 0, b = 0;
    bool operator==(const Factorization&) const = default;
};

struct EnlargementReport {
    Elem e = 0;
    LocalPseudogroup s;
    // e1[i]: local element i written a·t·b with a, b local and t in U.
    std::vector<Factorization> e1;
    // e2[u]: products from U·S·U lying below u whose join is u (the maximal
    // ones, one factorization each).
    std::vector<std::vector<Factorization>> e2;
};

// S = eUe. E1 (S = SUS) and E2 (U = (USU)∨) by brute force, then the two
// consequences of E1: S is an order-ideal, and d(t), r(t) ∈ S ⟹ t ∈ S.
// Throws BadInput, E1Fails {a,t,b} or {s}, E2Fails {u},
// EnlargementLawFailed {1, s, t} / {2, t}.
EnlargementReport check_sup_enlargement(const PseudogroupPtr& u, Elem e);

// X = eUf, actions by multiplication, ⟨x,y⟩ = xy⁻¹, [x,y] = x⁻¹y.
struct EnlargementBimodule {
    LocalPseudogroup s, t;
    std::vector<Elem> x_index;  // X element → U
    EquivalenceBimodule bimodule;
};
// Propagates biaction and bimodule verification failures.
EnlargementBimodule bimodule_from_enlargement(const PseudogroupPtr& u, Elem e, Elem f);

// (s x; ȳ t) with s⁻¹·x = 0, y·t = 0, s·y = 0, x·t⁻¹ = 0.
struct RookMatrix {
    Elem s = 0, x = 0, y = 0, t = 0;
    auto operator<=>(const RookMatrix&) const = default;
};

struct Enlargement {
    PseudogroupPtr u;
    std::vector<RookMatrix> matrices;  // U index → quadruple, ascending
    Elem e_s = 0, e_t = 0;             // (e_S,0,0̄,0) and (0,0,0̄,e_T)
    std::vector<Elem> embed_s, embed_t;
    EnlargementReport s_report, t_report;
};

inline constexpr std::size_t default_max_quadruples = 1'000'000;

// The matrix pseudogroup over S, X, X̄, T. Every entry join is checked before
// use (JoinUndefined {i, j, entry}); products must satisfy the rook
// conditions, mm⁻¹ must be diagonal with (ss⁻¹ ∨ ⟨x,x⟩, [y,y] ∨ tt⁻¹), joins
// of U must be componentwise, and every element must split along the four
// decomposition schemas (EnlargementLawFailed). U is then validated as a
// pseudogroup, the corners checked against S and T (NotIsomorphic) and both
// enlargement reports computed. Throws TooLarge beyond max_quadruples.
Enlargement enlarge_from_bimodule(const EquivalenceBimodule& b, std::size_t max_quadruples = default_max_quadruples);

// Product of two quadruples by the matrix formula, no lookup.
RookMatrix rook_product(const EquivalenceBimodule& b, const RookMatrix& m, const RookMatrix& n);
bool satisfies_rook(const EquivalenceBimodule& b, const RookMatrix& m);

// ψ: x ↦ (0,x,0̄,0) as a biaction iso from b onto
// bimodule_from_enlargement(U, e_S, e_T). Throws NotIsomorphic.
std::vector<Elem> round_trip_iso(const EquivalenceBimodule& b, const Enlargement& en,
                                 const EnlargementBimodule& back);

struct Certificate {
    std::size_t s_size = 0, t_size = 0, x_size = 0, u_size = 0;
    std::uint64_t bimodule_hash = 0;
    Enlargement enlargement;
    std::vector<Elem> round_trip;
};
// Verifies b as an equivalence bimodule, builds the enlargement, certifies E1
// and E2 on both corners and the round trip.
Certificate joint_equivalence(PseudogroupPtr s, PseudogroupPtr t, const Biaction& b,
                              std::size_t max_quadruples = default_max_quadruples);

std::uint64_t bimodule_hash(const Biaction& b);

}  // namespace morita
