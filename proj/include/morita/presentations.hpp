#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <unordered_set>
#include <utility>
#include <vector>

#include "morita/bits.hpp"
#include "morita/lattice.hpp"
#include "morita/pseudogroup.hpp"

namespace morita {

// A relation (S, T) stands for ⋁S = ⋁T.
struct Relation {
    Bits lhs, rhs;
};

// Generators {0..generators-1} and relations between subsets of them.
// Relations are normalised: each pair is stored once, with its two sides in
// canonical order.
class Presentation {
  public:
    explicit Presentation(std::size_t generators = 0) : n_(generators) {}
    void add(Bits lhs, Bits rhs);
    void add(const std::vector<std::size_t>& lhs, const std::vector<std::size_t>& rhs);
    std::size_t generators() const noexcept { return n_; }
    const std::vector<Relation>& relations() const noexcept { return rel_; }
    bool contains(const Bits& lhs, const Bits& rhs) const;

    // Y satisfies every relation: S ⊆ Y ⟺ T ⊆ Y.
    bool is_closed(const Bits& y) const;
    // Least closed set containing y (fixpoint of the relation rules).
    Bits closure(const Bits& y) const;

  private:
    std::size_t n_;
    struct PairHash {
        std::size_t operator()(const std::pair<Bits, Bits>& p) const noexcept {
            return p.first.hash() * 31 ^ p.second.hash();
        }
    };
    std::vector<Relation> rel_;
    std::unordered_set<std::pair<Bits, Bits>, PairHash> seen_;
};

struct PresentOptions {
    // Filter all 2^n subsets up to this many generators, otherwise generate
    // the carrier from the generator images by closure of unions.
    std::size_t enumerate_bound = 20;
    std::size_t max_generators = 4096;
    std::size_t max_carrier = 1u << 16;
};

// The sup-lattice ⟨X | R⟩ realised as the family of closed subsets of X.
class PresentedSupLattice {
  public:
    // Throws GeneratorSetTooLarge.
    static PresentedSupLattice present(Presentation p, PresentOptions opt = {});

    const Presentation& presentation() const noexcept { return p_; }
    const ClosureFamily& carrier() const noexcept { return carrier_; }
    const FiniteLattice& lattice() const noexcept { return lattice_; }
    std::size_t size() const noexcept { return carrier_.size(); }
    // Index of the closure of {x}.
    std::size_t eta(std::size_t x) const noexcept { return eta_[x]; }
    // Index of the closure of y.
    std::size_t close(const Bits& y) const;
    bool generated() const noexcept { return generated_; }

  private:
    Presentation p_;
    ClosureFamily carrier_;
    FiniteLattice lattice_;
    std::vector<std::size_t> eta_;
    bool generated_ = false;
};

// f♯ for f : X → L given as L-indices. Checks that f respects every relation
// (throws RelationsNotRespected with the relation index), then that f♯∘η = f
// and that f♯ preserves binary joins and the bottom.
std::vector<std::size_t> extend(const PresentedSupLattice& p, const std::vector<std::size_t>& f,
                                const FiniteLattice& target);

// An action table M × X → X, row-major by M.
struct ActionTable {
    std::size_t m = 0, x = 0;
    std::vector<Elem> act;
    Elem operator()(Elem a, Elem y) const noexcept { return act[a * x + y]; }
    Bits apply(const Bits& a, const Bits& y) const;
};
ActionTable left_multiplication(const InverseSemigroup& s);

// A\Z = {x : A·x ⊆ Z} and Z/Y = {a : a·Y ⊆ Z}.
Bits left_residual(const ActionTable& act, const Bits& a, const Bits& z);
Bits right_residual(const ActionTable& act, const Bits& z, const Bits& y);
// Checks A·W ⊆ Z ⟺ W ⊆ A\Z and B·Y ⊆ Z ⟺ B ⊆ Z/Y for every W, B (all
// subsets when small, a fixed pseudo-random sample otherwise). Throws
// AdjunctionFailed.
void check_residuation_adjunctions(const ActionTable& act, const Bits& a, const Bits& y, const Bits& z);

// R_M stable under left multiplication and the involution; R_X stable under
// the action and R_M·x ⊆ R_X. Throws NotStable naming the failing clause.
void check_jointly_stable(const InverseSemigroup& m, const Presentation& rm, const ActionTable& act,
                          const Presentation& rx);
void check_stable(const InverseSemigroup& m, const Presentation& rm);

struct NucleusReport {
    std::size_t pairs_checked = 0;
    bool exhaustive = false;
};
// j(A)·j(B) ⊆ j(A·B) and j(A)* = j(A*), after checking stability. With an
// action and R_X, also j(A)·k(Y) ⊆ k(A·Y). Exhaustive for |M| ≤ 8 (and |X| ≤
// 8), sampled otherwise. Throws NotStable or NucleusLawFailed.
NucleusReport verify_nucleus(const InverseSemigroup& m, const Presentation& rm);
NucleusReport verify_nucleus(const InverseSemigroup& m, const Presentation& rm, const ActionTable& act,
                             const Presentation& rx);

// Relations (C, {⋁C}) for every subset C of {0..n-1} that is pairwise
// related by `compat`, including the empty set (joined to `bottom`).
Presentation join_relations(std::size_t n, const std::function<bool(Elem, Elem)>& compat,
                            const std::function<Elem(const std::vector<Elem>&)>& join, std::size_t max_relations = 1u << 20);
Presentation compatible_join_relations(const Pseudogroup& s, std::size_t max_relations = 1u << 20);

// The quantale presented by an involutive monoid M and stable relations:
// closed subsets of M with U·V = j(UV), U* pointwise, unit j({1}).
struct PresentedQuantale {
    PresentedSupLattice lattice;
    std::vector<std::size_t> mult;  // [u * size + v]
    std::vector<std::size_t> star;
    std::size_t unit = 0;
};
// Throws NotStable, NucleusLawFailed (associativity or unit failure).
PresentedQuantale presented_quantale(const InverseSemigroup& m, Presentation rm, PresentOptions opt = {});

// The module ⟨X | R_X⟩ over a presented quantale: U·Y = k(U·Y). Associativity
// of the induced action is checked; throws NotStable or NucleusLawFailed.
struct PresentedModule {
    PresentedSupLattice lattice;
    std::vector<std::size_t> act;  // [quantale index * size + module index]
};
PresentedModule presented_module(const InverseSemigroup& m, const PresentedQuantale& q, const ActionTable& act,
                                 Presentation rx, PresentOptions opt = {});

}  // namespace morita
