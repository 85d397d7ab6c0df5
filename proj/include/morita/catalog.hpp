#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "morita/bimodules.hpp"
#include "morita/pseudogroup.hpp"

namespace morita {

// A partial injection from {0..src-1} into {0..tgt-1}; img[i] < 0 means
// undefined at i.
struct PartialMap {
    std::vector<int> img;
    std::size_t tgt = 0;

    bool operator==(const PartialMap&) const = default;
    std::uint64_t domain_mask() const;
    std::uint64_t image_mask() const;
    PartialMap inverse() const;
    std::string label() const;
};

// (s∘t)(i) = s(t(i)): t is applied first.
PartialMap compose(const PartialMap& s, const PartialMap& t);

// All partial injections src → tgt, ordered by domain bit-set, then by the
// tuple of images read in increasing domain order.
std::vector<PartialMap> partial_injections(std::size_t src, std::size_t tgt);

// Closes nothing: maps must already be closed under composition and inverse.
InverseSemigroup from_partial_maps(const std::vector<PartialMap>& maps);

// Iₙ for 1 ≤ n ≤ 4, elements in partial_injections(n, n) order.
// Index 0 is the empty map. Throws OutOfRange.
InverseSemigroup symmetric_inverse_monoid_table(std::size_t n);
PseudogroupPtr symmetric_inverse_monoid(std::size_t n);
std::size_t symmetric_inverse_monoid_index(std::size_t n, const PartialMap& m);

// Chain 0 < 1 < … < k-1 under min.
InverseSemigroup chain(std::size_t k);
// Subsets of a k-set under intersection, indexed by bit mask.
InverseSemigroup boolean(std::size_t k);
// Cyclic group of order m with a zero adjoined at index 0.
InverseSemigroup group_with_zero(std::size_t m);
// Five-element Brandt semigroup {0, e, f, a, a⁻¹}.
InverseSemigroup brandt_b2();

// Atlas bimodule: partial injections {0..n-1} → {0..m-1} as an (Iₘ, Iₙ)
// biaction with ⟨x,y⟩ = x∘y⁻¹ and [x,y] = x⁻¹∘y.
Biaction atlas_bimodule(std::size_t m, std::size_t n);
// Like atlas_bimodule but restricted to maps whose domain lies in `domain`
// (bit mask); used to build deliberately non-covering instances.
Biaction atlas_bimodule_restricted(std::size_t m, std::size_t n, std::uint64_t domain);

struct CatalogEntry {
    std::string name;
    std::string description;
};
std::vector<CatalogEntry> catalog_entries();
// Concrete instance names of every family entry that is a pseudogroup, up to
// the given size.
std::vector<std::string> catalog_pseudogroups(std::size_t max_size);
// Looks up names such as "I3", "chain3", "boolean2", "zgroup2", "B2".
InverseSemigroup catalog_semigroup(const std::string& name);

}  // namespace morita
