#pragma once

#include <optional>
#include <string>
#include <vector>

#include "morita/bits.hpp"
#include "morita/pseudogroup.hpp"

namespace morita {

// Raw data of a left action S × X → X with support X → E(S).
struct ActionData {
    SemigroupPtr s;
    std::size_t x_size = 0;
    std::vector<Elem> act;      // [a * x_size + x] = a·x
    std::vector<Elem> support;  // p(x)
    std::vector<std::string> names;
};

class SupportedAction {
  public:
    // Throws BadTable, NotAction, SupportLaw1Failed, SupportLaw2Failed,
    // OrderMismatch.
    static SupportedAction validate(ActionData d);

    const InverseSemigroup& S() const noexcept { return *d_.s; }
    const SemigroupPtr& S_ptr() const noexcept { return d_.s; }
    std::size_t size() const noexcept { return d_.x_size; }
    const ActionData& data() const noexcept { return d_; }
    Elem act(Elem a, Elem x) const noexcept { return d_.act[a * d_.x_size + x]; }
    Elem p(Elem x) const noexcept { return d_.support[x]; }
    std::string name(Elem x) const;

    // x ≤ y iff x = p(x)·y.
    bool leq(Elem x, Elem y) const noexcept { return below_[y].test(x); }
    const Bits& below(Elem y) const noexcept { return below_[y]; }
    bool left_compatible(Elem x, Elem y) const noexcept { return act(p(x), y) == act(p(y), x); }
    // Minimum element fixed by S and with 0_S·x = it, when there is one.
    std::optional<Elem> zero() const noexcept { return zero_; }
    // s·A elementwise.
    Bits act_set(Elem a, const Bits& xs) const;

  private:
    explicit SupportedAction(ActionData d) : d_(std::move(d)) {}
    ActionData d_;
    std::vector<Bits> below_;
    std::optional<Elem> zero_;
};

// s ▷ x = x·s⁻¹ turns a right action into a left one; `ract` is [x * |S| + s].
ActionData right_as_left(SemigroupPtr s, std::size_t x_size, const std::vector<Elem>& ract,
                         std::vector<Elem> support);

// Left multiplication on a left ideal I (given as a subset of S), support
// x ↦ xx⁻¹; element i of the action is the i-th element of I.
ActionData left_ideal_action(SemigroupPtr s, const Bits& ideal);
// Right multiplication on a right ideal as a left action via right_as_left,
// support x ↦ x⁻¹x.
ActionData right_ideal_action(SemigroupPtr s, const Bits& ideal);
// Conjugation s·e = ses⁻¹ on E(S) with p(e) = e.
ActionData idempotent_action(SemigroupPtr s);

// A supported action of a pseudogroup with joins of left-compatible sets and
// both distributive laws.
//
// Finite reduction as for pseudogroups: the empty join is the minimum and
// every finite left-compatible family is folded from binary joins; x ∼ y, x ∼
// z, y ∼ z imply x ∼ y ∨ z (checked), so the fold stays compatible.
class PseudoModule {
  public:
    // Throws NotPointed, JoinMissing, ModuleLawFailed, BadInput.
    static PseudoModule from(PseudogroupPtr s, SupportedAction a);

    const Pseudogroup& S() const noexcept { return *s_; }
    const PseudogroupPtr& S_ptr() const noexcept { return s_; }
    const SupportedAction& action() const noexcept { return a_; }
    std::size_t size() const noexcept { return a_.size(); }
    Elem act(Elem s, Elem x) const noexcept { return a_.act(s, x); }
    Elem p(Elem x) const noexcept { return a_.p(x); }
    bool leq(Elem x, Elem y) const noexcept { return a_.leq(x, y); }
    bool left_compatible(Elem x, Elem y) const noexcept { return a_.left_compatible(x, y); }
    Elem zero() const noexcept { return zero_; }
    // npos when not left compatible.
    Elem join(Elem x, Elem y) const noexcept { return join_[x * size() + y]; }
    Elem meet(Elem x, Elem y) const noexcept { return meet_[x * size() + y]; }
    // Throws NotCompatible.
    Elem join_of(const Bits& xs) const;

  private:
    PseudoModule(PseudogroupPtr s, SupportedAction a) : s_(std::move(s)), a_(std::move(a)) {}
    PseudogroupPtr s_;
    SupportedAction a_;
    Elem zero_ = 0;
    std::vector<Elem> join_, meet_;
};

// Module-law property checks. Each returns the first failing witness, or
// nullopt when the property holds on every tuple.
using Witness = std::optional<std::vector<std::size_t>>;
// x ∼ y ⟹ s·x ∼ s·y, and s ∼ t ⟹ s·x ∼ t·x.
Witness day_failure(const SupportedAction& a);
// p(x ∨ y) = p(x) ∨ p(y), p(0) = 0.
Witness groucho_failure(const PseudoModule& m);
// x ∧ y is the greatest lower bound.
Witness harpo_failure(const PseudoModule& m);
// x ∧ (y ∨ z) = (x ∧ y) ∨ (x ∧ z) and x ∧ 0 = 0.
Witness zeppo_failure(const PseudoModule& m);
// e_S·x = x and s·0 = 0, 0·x = 0.
Witness unital_failure(const PseudoModule& m);
// Runs the four module-law checks; throws ModuleLawFailed naming the law.
void check_module_laws(const PseudoModule& m);

// θ : A → B of supported actions over the same S: θ(s·x) = s·θ(x) and
// q(θ(x)) = p(x). Throws NotHomomorphism.
void check_action_hom(const SupportedAction& a, const SupportedAction& b, const std::vector<Elem>& theta);
// Additionally preserves the bottom and joins of left-compatible pairs.
void check_module_hom(const PseudoModule& a, const PseudoModule& b, const std::vector<Elem>& theta);

// Bijection ψ: A → B over a pseudogroup iso φ: S_A → S_B with
// ψ(s·x) = φ(s)·ψ(x), q(ψx) = φ(p(x)) and joins carried over (npos included).
// Throws NotIsomorphic.
void check_module_iso(const PseudoModule& a, const PseudoModule& b, const std::vector<Elem>& phi,
                      const std::vector<Elem>& psi);

// Every module homomorphism A → B, by exhaustive search over maps that
// preserve support. Throws TooLarge above `max_maps` candidate maps.
std::vector<std::vector<Elem>> module_homs(const PseudoModule& a, const PseudoModule& b,
                                           double max_maps = 1e7);

// 𝖫(X): the left-compatible order-ideals A of a pointed supported action that
// also contain (s ∨ t)·y whenever they contain s·y and t·y, acted on
// elementwise with p̂(A) = ⋁ p(x). Without the second condition inclusion and
// the module order part ways (in I2 acting on itself, {0,e1} and {0,e2} get two
// minimal upper bounds). Members are in canonical order; order is inclusion.
struct Completion {
    PseudoModule module;
    std::vector<Bits> members;
    std::vector<Elem> iota;  // x ↦ index of x↓
    std::size_t index_of(const Bits& a) const;
};
// Throws NotPointed, TooLarge, plus anything PseudoModule::from throws.
Completion schein_complete(PseudogroupPtr s, const SupportedAction& a, std::size_t max_carrier = 4096);

// β(A) = ⋁ α(a) for a homomorphism α : X → M. Checks α, then β∘ι = α and that
// β is a module homomorphism. Throws NotHomomorphism.
std::vector<Elem> universal_extend(const Completion& l, const SupportedAction& x, const PseudoModule& m,
                                   const std::vector<Elem>& alpha);

}  // namespace morita
