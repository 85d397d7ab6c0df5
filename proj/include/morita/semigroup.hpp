#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "morita/bits.hpp"

namespace morita {

using Elem = std::size_t;
inline constexpr Elem npos = static_cast<Elem>(-1);

enum class Compat { neither, left, right, both };

std::string_view compat_name(Compat c);

// Unvalidated Cayley table, row-major: mult[a*n + b] = a·b.
struct RawTable {
    std::size_t n = 0;
    std::vector<Elem> mult;
    std::optional<Elem> zero;
    std::optional<Elem> identity;
    std::vector<std::string> names;
};

// A finite inverse semigroup. Immutable once validated; all relations are
// cached as bit rows.
class InverseSemigroup {
  public:
    // Throws NotAssociative, NotInverse, BadZero, BadIdentity or BadTable.
    static InverseSemigroup validate(RawTable raw);

    std::size_t size() const noexcept { return n_; }
    Elem mul(Elem a, Elem b) const noexcept { return mult_[a * n_ + b]; }
    Elem mul(Elem a, Elem b, Elem c) const noexcept { return mul(mul(a, b), c); }
    Elem inv(Elem a) const noexcept { return inv_[a]; }
    Elem d(Elem a) const noexcept { return mul(inv_[a], a); }
    Elem r(Elem a) const noexcept { return mul(a, inv_[a]); }
    bool is_idempotent(Elem a) const noexcept { return idem_.test(a); }
    const Bits& idempotent_bits() const noexcept { return idem_; }
    const std::vector<Elem>& idempotents() const noexcept { return idem_list_; }

    std::optional<Elem> zero() const noexcept { return zero_; }
    std::optional<Elem> identity() const noexcept { return identity_; }

    const std::vector<std::string>& names() const noexcept { return names_; }
    std::string name(Elem a) const;
    const std::vector<Elem>& table() const noexcept { return mult_; }

    // a ≤ b iff a = b·d(a).
    bool natural_leq(Elem a, Elem b) const noexcept { return below_[b].test(a); }
    const Bits& below(Elem a) const noexcept { return below_[a]; }
    const Bits& above(Elem a) const noexcept { return above_[a]; }

    Compat compatible(Elem a, Elem b) const noexcept;
    bool left_compatible(Elem a, Elem b) const noexcept { return lcompat_[a].test(b); }
    bool right_compatible(Elem a, Elem b) const noexcept { return rcompat_[a].test(b); }
    bool both_compatible(Elem a, Elem b) const noexcept { return compat_[a].test(b); }
    const Bits& compatible_row(Elem a) const noexcept { return compat_[a]; }

    // Down-closure of a subset.
    Bits down_closure(const Bits& a) const;

    std::vector<std::vector<Elem>> d_classes() const;
    std::size_t d_class_count() const { return d_classes().size(); }

    // Set-wise products {a·b}.
    Bits product(const Bits& a, const Bits& b) const;

  private:
    InverseSemigroup() = default;

    std::size_t n_ = 0;
    std::vector<Elem> mult_;
    std::vector<Elem> inv_;
    Bits idem_;
    std::vector<Elem> idem_list_;
    std::optional<Elem> zero_;
    std::optional<Elem> identity_;
    std::vector<std::string> names_;
    std::vector<Bits> below_, above_, compat_, lcompat_, rcompat_;
};

// Serial reference for associativity, kept alongside the kernel version for
// testing and benchmarking. Returns the smallest failing triple.
std::optional<std::array<Elem, 3>> find_nonassociative_serial(std::size_t n, const std::vector<Elem>& mult);
std::optional<std::array<Elem, 3>> find_nonassociative(std::size_t n, const std::vector<Elem>& mult);

}  // namespace morita
