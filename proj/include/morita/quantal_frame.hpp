#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "morita/lattice.hpp"
#include "morita/pseudogroup.hpp"

namespace morita {

struct LccOptions {
    // Filter all 2^|S| subsets up to this size; generate from principal
    // ideals above it.
    std::size_t filter_bound = 16;
    std::size_t max_carrier = 4096;
};

// The closed ideals of a pseudogroup S (order-ideals closed under compatible
// joins) with U·V the closed ideal generated by the pointwise product, U* the
// pointwise inverse, unit E(S) and top S.
class QuantalFrame {
  public:
    // Throws TooLarge, NotQuantalFrame, CoverFails.
    static QuantalFrame lcc(PseudogroupPtr s, LccOptions opt = {});

    const Pseudogroup& S() const noexcept { return *s_; }
    const PseudogroupPtr& S_ptr() const noexcept { return s_; }
    std::size_t size() const noexcept { return carrier_.size(); }
    const ClosureFamily& carrier() const noexcept { return carrier_; }
    const Bits& operator[](std::size_t u) const noexcept { return carrier_[u]; }
    const FiniteLattice& lattice() const noexcept { return lattice_; }
    bool generated() const noexcept { return generated_; }

    std::size_t mul(std::size_t u, std::size_t v) const noexcept { return mult_[u * size() + v]; }
    std::size_t star(std::size_t u) const noexcept { return star_[u]; }
    std::size_t unit() const noexcept { return unit_; }
    std::size_t top() const noexcept { return lattice_.top(); }
    std::size_t bottom() const noexcept { return lattice_.bottom(); }
    bool leq(std::size_t u, std::size_t v) const noexcept { return lattice_.leq(u, v); }
    std::size_t join(std::size_t u, std::size_t v) const noexcept { return lattice_.join(u, v); }
    std::size_t meet(std::size_t u, std::size_t v) const noexcept { return lattice_.meet(u, v); }
    // Index of s↓.
    std::size_t principal(Elem s) const noexcept { return principal_[s]; }
    // Index of the closed ideal generated by a subset of S.
    std::size_t generate(const Bits& x) const;

    // Q_I = {U : UU* ≤ e, U*U ≤ e}, ascending.
    const std::vector<std::size_t>& partial_units() const noexcept { return units_; }
    bool is_partial_unit(std::size_t u) const noexcept;
    // {U : U ≤ e}, ascending.
    std::vector<std::size_t> below_unit() const;

    // Re-runs every axiom check (done once by lcc).
    void verify() const;

    std::uint64_t mult_digest() const;

  private:
    PseudogroupPtr s_;
    ClosureFamily carrier_;
    FiniteLattice lattice_;
    std::vector<std::size_t> mult_, star_, principal_, units_;
    std::size_t unit_ = 0;
    bool generated_ = false;
};

using QuantalFramePtr = std::shared_ptr<const QuantalFrame>;
inline QuantalFramePtr make_lcc(PseudogroupPtr s, LccOptions opt = {}) {
    return std::make_shared<const QuantalFrame>(QuantalFrame::lcc(std::move(s), opt));
}

// Q_I with the inherited multiplication, as a pseudogroup. index[i] is the
// carrier index of its i-th element.
struct PartialUnits {
    PseudogroupPtr pseudogroup;
    std::vector<std::size_t> index;
};
PartialUnits partial_units(const QuantalFrame& q);

// The principal-ideal map S → Q_I; checks bijectivity and preservation of
// product, inverse, order and compatible joins. Returns, for each s, the
// position of s↓ in partial_units(). Throws NotIsomorphic.
std::vector<std::size_t> iso_check(const Pseudogroup& s, const QuantalFrame& q);

// e ↦ e↓ from E(S) onto {U ≤ e}, checked as an order isomorphism. Throws
// NotIsomorphic.
void idempotent_frame_check(const Pseudogroup& s, const QuantalFrame& q);

}  // namespace morita
