#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "morita/pseudogroup.hpp"

namespace morita {

// Raw (S,T)-biaction tables, row-major.
struct BiactionTables {
    SemigroupPtr s, t;
    std::size_t x_size = 0;
    std::vector<Elem> lact;     // [a * x_size + x] = a·x
    std::vector<Elem> ract;     // [x * |T| + b] = x·b
    std::vector<Elem> inner_s;  // [x * x_size + y] = ⟨x,y⟩ ∈ S
    std::vector<Elem> inner_t;  // [x * x_size + y] = [x,y] ∈ T
};

// An (S,T)-biaction with both inner products; all axioms verified at
// construction.
class Biaction {
  public:
    // Throws NotAction, BA1Failed … BA7Failed, BiactionLawFailed, BadTable.
    static Biaction verify(BiactionTables tables);

    const InverseSemigroup& S() const noexcept { return *t_.s; }
    const InverseSemigroup& T() const noexcept { return *t_.t; }
    const SemigroupPtr& S_ptr() const noexcept { return t_.s; }
    const SemigroupPtr& T_ptr() const noexcept { return t_.t; }
    std::size_t size() const noexcept { return t_.x_size; }
    const BiactionTables& tables() const noexcept { return t_; }

    Elem lact(Elem a, Elem x) const noexcept { return t_.lact[a * t_.x_size + x]; }
    Elem ract(Elem x, Elem b) const noexcept { return t_.ract[x * t_.t->size() + b]; }
    Elem ip_s(Elem x, Elem y) const noexcept { return t_.inner_s[x * t_.x_size + y]; }
    Elem ip_t(Elem x, Elem y) const noexcept { return t_.inner_t[x * t_.x_size + y]; }
    Elem p(Elem x) const noexcept { return ip_s(x, x); }
    Elem q(Elem x) const noexcept { return ip_t(x, x); }

    // x ≤ y iff x = p(x)·y (equal to x = y·q(x), checked at construction).
    bool leq(Elem x, Elem y) const noexcept { return lact(p(x), y) == x; }
    bool left_compatible(Elem x, Elem y) const noexcept { return lact(p(x), y) == lact(p(y), x); }
    bool right_compatible(Elem x, Elem y) const noexcept { return ract(x, q(y)) == ract(y, q(x)); }
    bool compatible(Elem x, Elem y) const noexcept { return left_compatible(x, y) && right_compatible(x, y); }

  private:
    explicit Biaction(BiactionTables t) : t_(std::move(t)) {}
    BiactionTables t_;
};

// {x,y,z} = ⟨x,y⟩·z.
inline Elem heap(const Biaction& b, Elem x, Elem y, Elem z) { return b.lact(b.ip_s(x, y), z); }

// Biaction over pseudogroups with joins of compatible pairs, distributivity
// and both covering conditions.
class EquivalenceBimodule {
  public:
    // Throws CoveringFailsLeft/Right, JoinMissing, DistributivityFails,
    // EquivalenceMismatch, BadInput.
    static EquivalenceBimodule verify(PseudogroupPtr s, PseudogroupPtr t, Biaction b);

    const Biaction& base() const noexcept { return b_; }
    const Pseudogroup& S() const noexcept { return *s_; }
    const Pseudogroup& T() const noexcept { return *t_; }
    const PseudogroupPtr& S_ptr() const noexcept { return s_; }
    const PseudogroupPtr& T_ptr() const noexcept { return t_; }
    std::size_t size() const noexcept { return b_.size(); }
    Elem zero() const noexcept { return zero_; }
    // Join of a compatible pair, npos otherwise.
    Elem join(Elem x, Elem y) const noexcept { return join_[x * b_.size() + y]; }
    Elem join_of(const Bits& xs) const;
    const Bits& below(Elem x) const noexcept { return below_[x]; }

  private:
    EquivalenceBimodule(PseudogroupPtr s, PseudogroupPtr t, Biaction b)
        : s_(std::move(s)), t_(std::move(t)), b_(std::move(b)) {}

    PseudogroupPtr s_, t_;
    Biaction b_;
    Elem zero_ = 0;
    std::vector<Elem> join_;
    std::vector<Bits> below_;
};

// (T,S)-biaction on the same indices: t·x̄ = (x·t⁻¹)‾, x̄·s = (s⁻¹·x)‾, inner
// products swapped.
Biaction dual(const Biaction& b);
EquivalenceBimodule dual(const EquivalenceBimodule& b);

// Bijection ψ: X → X' with ψ(s·x) = φS(s)·ψ(x), ψ(x·t) = ψ(x)·φT(t) and both
// inner products carried by φS, φT. Backtracking search; nullopt if none.
std::optional<std::vector<Elem>> find_biaction_iso(const Biaction& a, const Biaction& b,
                                                   const std::vector<Elem>& phi_s, const std::vector<Elem>& phi_t);
// Checks a given ψ; throws NotIsomorphic with a witness.
void check_biaction_iso(const Biaction& a, const Biaction& b, const std::vector<Elem>& phi_s,
                        const std::vector<Elem>& phi_t, const std::vector<Elem>& psi);

std::vector<Elem> identity_map(std::size_t n);

}  // namespace morita
