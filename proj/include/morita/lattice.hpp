#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <unordered_map>
#include <vector>

#include "morita/bits.hpp"
#include "morita/semigroup.hpp"

namespace morita {

// A finite lattice on indices 0..size()-1 with explicit join and meet tables.
class FiniteLattice {
  public:
    FiniteLattice() = default;
    // Builds joins and meets from a partial order given as rows
    // below[a] = {b : b ≤ a}. Throws NotDistributiveLattice when some pair
    // lacks a join or meet.
    static FiniteLattice from_order(std::vector<Bits> below);

    std::size_t size() const noexcept { return below_.size(); }
    bool leq(std::size_t a, std::size_t b) const noexcept { return below_[b].test(a); }
    std::size_t join(std::size_t a, std::size_t b) const noexcept { return join_[a * size() + b]; }
    std::size_t meet(std::size_t a, std::size_t b) const noexcept { return meet_[a * size() + b]; }
    std::size_t bottom() const noexcept { return bottom_; }
    std::size_t top() const noexcept { return top_; }
    std::size_t join_of(const std::vector<std::size_t>& xs) const;
    const Bits& below(std::size_t a) const noexcept { return below_[a]; }

    // Smallest failing triple of a ∧ (b ∨ c) = (a ∧ b) ∨ (a ∧ c), if any.
    std::optional<std::array<std::size_t, 3>> distributivity_failure() const;

  private:
    friend class ClosureFamily;
    std::vector<Bits> below_;
    std::vector<std::size_t> join_, meet_;
    std::size_t bottom_ = 0, top_ = 0;
};

// An intersection-closed family of subsets of {0..ground-1}, sorted
// canonically (by size, then value), with lookup and closure.
class ClosureFamily {
  public:
    ClosureFamily() = default;
    ClosureFamily(std::size_t ground, std::vector<Bits> members);

    std::size_t size() const noexcept { return members_.size(); }
    std::size_t ground() const noexcept { return ground_; }
    const Bits& operator[](std::size_t i) const noexcept { return members_[i]; }
    const std::vector<Bits>& members() const noexcept { return members_; }
    std::size_t index_of(const Bits& b) const;  // npos when absent
    bool contains(const Bits& b) const { return index_of(b) != npos; }

    // Least member containing x (intersection of all members above x); npos
    // if x lies in no member.
    std::size_t closure_index(const Bits& x) const;

    // Inclusion order; join = closure of union, meet = intersection. Throws
    // NotDistributiveLattice if intersections fall outside the family.
    FiniteLattice lattice() const;

  private:
    std::size_t ground_ = 0;
    std::vector<Bits> members_;
    std::unordered_map<Bits, std::size_t, BitsHash> index_;
};

}  // namespace morita
