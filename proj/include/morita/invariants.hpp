#pragma once

#include <array>
#include <optional>
#include <vector>

#include "morita/enlargement.hpp"
#include "morita/pseudogroup.hpp"

namespace morita {

// (SaS)∨, the least sup-ideal containing a.
Bits principal_sup_ideal(const Pseudogroup& s, Elem a);
// Ideals closed under compatible joins, canonical order (count, then value).
// Subset filter for |S| ≤ 16, closures of unions of principal ones above.
std::vector<Bits> sup_ideals(const Pseudogroup& s);
// The generator route alone: closures of unions with principal sup-ideals.
std::vector<Bits> sup_ideals_from_principal(const Pseudogroup& s);
// A∨ is an ideal for every principal ideal A = SaS; {a, b, x} with b·x or
// x·b escaping (SaS)∨, else nullopt.
std::optional<std::vector<Elem>> ideal_closure_failure(const Pseudogroup& s);

// ⋁d(x) = e and ⋁r(x) ≤ f.
struct Pencil {
    Elem from_e = 0, to_f = 0;
    std::vector<Elem> elements;
};
// Greedy over {x : d(x) ≤ e, r(x) ≤ f}, larger d(x) first, then pruned of
// redundant members. BadInput unless e, f are idempotents.
std::optional<Pencil> pencil_preorder(const Pseudogroup& s, Elem e, Elem f);
bool is_pencil(const Pseudogroup& s, const Pencil& p);
// b⁻¹Xa: from e to f given a pencil X from e′ to f′ and e –a→ e′, f –b→ f′.
std::vector<Elem> transport_pencil(const Pseudogroup& s, const std::vector<Elem>& x, Elem a, Elem b);

struct SimplifyingReport {
    bool by_ideals = false;  // no sup-ideal besides {0} and S
    bool by_pencils = false; // e ⪯ f for all nonzero e, f
    bool by_pairs = false;   // some Z with ⋁d = e, ⋁r = f for all nonzero e, f
    bool value = false;
    std::optional<Bits> proper_ideal;
    std::optional<std::array<Elem, 2>> missing_pencil, missing_pair;
};
// Throws EquivalenceMismatch when the routes disagree.
SimplifyingReport is_zero_simplifying(const Pseudogroup& s);

// An element outside E(S) commuting with every idempotent.
std::optional<Elem> fundamental_witness(const InverseSemigroup& s);
inline bool is_fundamental(const InverseSemigroup& s) { return !fundamental_witness(s).has_value(); }

// e = u·u⁻¹, u⁻¹·u in the corner; u = e·a·s from e = a·s·b.
struct DWitness {
    Elem idempotent = 0, u = 0, target = 0;
};
// For every idempotent of U·S·U. Throws EnlargementLawFailed {e}.
std::vector<DWitness> d_relation_witnesses(const Pseudogroup& u, const EnlargementReport& rep);

struct InvarianceReport {
    SimplifyingReport s_simplifying, t_simplifying, u_simplifying;
    bool s_fundamental = false, t_fundamental = false, u_fundamental = false;
    std::size_t s_idempotents = 0, t_idempotents = 0;
    std::size_t s_d_classes = 0, t_d_classes = 0;
    std::vector<DWitness> s_witnesses, t_witnesses;
};
// S, T and U must agree on both properties (InvarianceViolated {0} for
// 0-simplifying, {1} for fundamental).
InvarianceReport invariance_report(const Pseudogroup& s, const Pseudogroup& t, const Enlargement& en);

}  // namespace morita
