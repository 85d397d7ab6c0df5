#pragma once

#include <memory>
#include <vector>

#include "morita/semigroup.hpp"

namespace morita {

// A finite inverse semigroup with zero in which every compatible subset has a
// join and multiplication distributes over those joins.
//
// Finite reduction: a finite compatible set is the empty set or {a} ∪ B with B
// compatible; in a semigroup with binary joins of compatible pairs, a is
// compatible with ⋁B whenever it is compatible with each member of B, so the
// empty join (zero) plus binary joins give every finite join, and distributivity
// over binary joins propagates to all finite joins by induction.
class Pseudogroup {
  public:
    // Throws NoZero, MissingJoin, NotDistributive, IdempotentsNotFrame.
    static Pseudogroup from(InverseSemigroup s);
    static std::shared_ptr<const Pseudogroup> make(InverseSemigroup s) {
        return std::make_shared<const Pseudogroup>(from(std::move(s)));
    }

    const InverseSemigroup& S() const noexcept { return s_; }
    std::size_t size() const noexcept { return s_.size(); }
    Elem zero() const noexcept { return zero_; }
    // e_S, the join of all idempotents.
    Elem top() const noexcept { return top_; }

    // Binary join, npos when a and b are not compatible.
    Elem join(Elem a, Elem b) const noexcept { return join_[a * s_.size() + b]; }
    // Throws NotCompatible with the first incompatible pair.
    Elem join_of(const std::vector<Elem>& xs) const;
    Elem join_of(const Bits& xs) const { return join_of(xs.elements()); }
    Elem meet(Elem a, Elem b) const noexcept { return meet_[a * s_.size() + b]; }

    // X∨: all joins of compatible subsets of x.
    Bits join_closure(const Bits& x) const;
    // Smallest order-ideal containing x closed under compatible joins.
    Bits ideal_closure(const Bits& x) const;
    // Whether x is an order-ideal closed under compatible joins.
    bool is_closed_ideal(const Bits& x) const;

  private:
    explicit Pseudogroup(InverseSemigroup s) : s_(std::move(s)) {}

    InverseSemigroup s_;
    Elem zero_ = 0;
    Elem top_ = 0;
    std::vector<Elem> join_;
    std::vector<Elem> meet_;
};

using PseudogroupPtr = std::shared_ptr<const Pseudogroup>;
using SemigroupPtr = std::shared_ptr<const InverseSemigroup>;
inline SemigroupPtr semigroup_of(const PseudogroupPtr& p) { return SemigroupPtr(p, &p->S()); }
inline SemigroupPtr share(InverseSemigroup s) { return std::make_shared<const InverseSemigroup>(std::move(s)); }

}  // namespace morita
