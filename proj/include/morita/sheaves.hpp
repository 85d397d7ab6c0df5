#pragma once

#include <string>
#include <vector>

#include "morita/actions.hpp"
#include "morita/bimodules.hpp"
#include "morita/lattice.hpp"
#include "morita/quantal_frame.hpp"

namespace morita {

// A finite left Q-module on a lattice carrier. The support is never taken on
// trust: when `support` is non-empty it is compared with the computed one.
struct SheafData {
    QuantalFramePtr q;
    std::vector<Bits> below;         // below[x] = {y : y ≤ x}
    std::vector<std::size_t> act;    // [u * |X| + x] = u·x
    std::vector<std::size_t> support;
    std::vector<std::string> names;
};

class QSheaf {
  public:
    // Throws NotDistributiveLattice, NotQModule, SupportMissing,
    // SupportMismatch, SupportNotEquivariant, SupportConditionFails,
    // CoverFails, BadTable.
    static QSheaf verify(SheafData d);

    const QuantalFrame& Q() const noexcept { return *d_.q; }
    const QuantalFramePtr& Q_ptr() const noexcept { return d_.q; }
    const SheafData& data() const noexcept { return d_; }
    std::size_t size() const noexcept { return d_.below.size(); }
    const FiniteLattice& lattice() const noexcept { return lat_; }
    std::string name(std::size_t x) const;

    std::size_t act(std::size_t u, std::size_t x) const noexcept { return d_.act[u * size() + x]; }
    // Least b ≤ e with x ≤ b·1.
    std::size_t spp(std::size_t x) const noexcept { return spp_[x]; }
    bool leq(std::size_t x, std::size_t y) const noexcept { return lat_.leq(x, y); }
    std::size_t join(std::size_t x, std::size_t y) const noexcept { return lat_.join(x, y); }
    std::size_t meet(std::size_t x, std::size_t y) const noexcept { return lat_.meet(x, y); }
    std::size_t top() const noexcept { return lat_.top(); }
    std::size_t bottom() const noexcept { return lat_.bottom(); }

    // Local sections: spp(x ∧ γ)·γ ≤ x for every x. Ascending.
    const std::vector<std::size_t>& sections() const noexcept { return sections_; }
    bool is_section(std::size_t x) const noexcept { return section_bits_.test(x); }

  private:
    explicit QSheaf(SheafData d) : d_(std::move(d)) {}
    SheafData d_;
    FiniteLattice lat_;
    std::vector<std::size_t> spp_, sections_;
    Bits section_bits_;
};

// Q acting on itself by multiplication.
SheafData self_sheaf(QuantalFramePtr q);
// Q_0 = {b ≤ e} with u·b = ub1 ∧ e.
SheafData base_sheaf(QuantalFramePtr q);
// A right action x·r turned into a left one, r ▷ x = x·r*; `ract` is
// [x * |R| + r].
SheafData right_sheaf_as_left(QuantalFramePtr r, std::vector<Bits> below, const std::vector<std::size_t>& ract);

// Property checks on a verified sheaf; first failing tuple or nullopt.
// γ ≤ γ′ ⟺ γ = spp(γ)·γ′ on sections.
Witness section_order_failure(const QSheaf& x);
// spp(s·x) = s·spp(x)·s* for partial units s.
Witness conjugation_failure(const QSheaf& x);
// Sections are downward closed.
Witness section_downset_failure(const QSheaf& x);
// b·(x ∧ y) = x ∧ b·y for b ≤ e.
Witness base_meet_failure(const QSheaf& x);

// Θ(Ξ): the local sections as a module over Q_I. sections[i] is the carrier
// index of module element i.
struct Theta {
    PartialUnits units;
    std::vector<std::size_t> sections;
    PseudoModule module;
};
// Throws SectionEscape when the action, support or joins leave the sections.
Theta theta(const QSheaf& x);

// 𝒧∨(X): order-ideals of X closed under joins of left-compatible pairs, with
// U·J the closure of the pointwise action and spp(J) = ⋁ p(z)↓. q must be
// lcc of the pseudogroup X is a module over.
struct ModuleSheaf {
    QSheaf sheaf;
    std::vector<Bits> members;
    std::vector<std::size_t> iota;  // x ↦ index of x↓
};
// Throws BadInput, TooLarge, SectionEscape (sections other than the principal
// ideals), plus sheaf verification failures.
ModuleSheaf lcc_module(const PseudoModule& x, QuantalFramePtr q, std::size_t max_carrier = 4096);

// x ↦ x↓ from X to Θ(𝒧∨(X)), checked against the iso S ≅ Q_I. Throws
// NotIsomorphic.
std::vector<Elem> unit_iso(const PseudoModule& x, const ModuleSheaf& l, const Theta& th);

// J ↦ ⋁J from 𝒧∨(Θ(Ξ)) to Ξ, over the quantale iso lcc(Q_I) → Q, I ↦ ⋁I.
struct CounitReport {
    Theta theta;
    QuantalFramePtr units_lcc;
    std::vector<std::size_t> quantale_iso;
    ModuleSheaf completion;
    std::vector<std::size_t> counit;
};
// Throws NotIsomorphic.
CounitReport counit_iso(const QSheaf& xi);

// Bijection ψ with ψ(u·x) = φ(u)·ψ(x), order both ways and
// spp(ψx) = φ(spp x). Throws NotIsomorphic.
void check_sheaf_iso(const QSheaf& a, const QSheaf& b, const std::vector<std::size_t>& phi,
                     const std::vector<std::size_t>& psi);

struct HilbertStructure {
    std::size_t n = 0;
    std::vector<std::size_t> inner;  // [x * n + y] = ⟨x,y⟩
    // The local sections, which are also the Hilbert sections and the
    // greatest Hilbert basis.
    std::vector<std::size_t> basis;
    std::size_t ip(std::size_t x, std::size_t y) const noexcept { return inner[x * n + y]; }
};
// ⟨x,y⟩ = U·V* for Q on itself.
std::vector<std::size_t> self_inner(const QuantalFrame& q);
// ⟨x,γ⟩ = ⋁{a ∈ Q_I : a*a ≤ spp(γ), a·γ ≤ x} on sections, extended by
// ⟨x,y⟩ = ⋁γ ⟨x,γ⟩⟨y,γ⟩*. Only a candidate: pass it to verify_hilbert.
std::vector<std::size_t> derive_inner(const QSheaf& x);
// Checks linearity, join preservation, hermitian symmetry, the basis
// expansion, Hilbert sections = local sections, spp(x) = ⟨x,x⟩ ∧ e, Parseval,
// non-degeneracy and maximality of the basis. Throws HilbertLawFailed with
// {law, …} as witness, laws numbered in that order from 1.
HilbertStructure verify_hilbert(const QSheaf& x, std::vector<std::size_t> inner);
// ⟨γ,γ⟩·γ = γ.
bool is_regular_section(const QSheaf& x, const HilbertStructure& h, std::size_t g);

struct BiSheafData {
    SheafData left;                   // Q acting on the left
    QuantalFramePtr r;
    std::vector<std::size_t> ract;    // [x * |R| + b] = x·b
    std::vector<std::size_t> inner_q; // ⟨x,y⟩ ∈ Q
    std::vector<std::size_t> inner_r; // [x,y] ∈ R
};

class BiSheaf {
  public:
    // Both sheaf structures and Hilbert structures, (a·x)·b = a·(x·b), and the
    // two-sided expansion over the bisections. Throws NotQModule,
    // HilbertLawFailed, BadInput and anything QSheaf::verify throws.
    static BiSheaf verify(BiSheafData d);

    const QSheaf& left() const noexcept { return left_; }
    // r ▷ x = x·r*, with inner product [x,y].
    const QSheaf& right() const noexcept { return right_; }
    const QuantalFrame& Q() const noexcept { return left_.Q(); }
    const QuantalFrame& R() const noexcept { return right_.Q(); }
    std::size_t size() const noexcept { return left_.size(); }
    std::size_t lact(std::size_t a, std::size_t x) const noexcept { return left_.act(a, x); }
    std::size_t ract(std::size_t x, std::size_t b) const noexcept { return ract_[x * R().size() + b]; }
    std::size_t ip_q(std::size_t x, std::size_t y) const noexcept { return hl_.ip(x, y); }
    std::size_t ip_r(std::size_t x, std::size_t y) const noexcept { return hr_.ip(x, y); }
    const HilbertStructure& hilbert_left() const noexcept { return hl_; }
    const HilbertStructure& hilbert_right() const noexcept { return hr_; }
    // Local sections for both structures. Ascending.
    const std::vector<std::size_t>& bisections() const noexcept { return bisections_; }

  private:
    BiSheaf(QSheaf l, QSheaf r) : left_(std::move(l)), right_(std::move(r)) {}
    QSheaf left_, right_;
    std::vector<std::size_t> ract_;
    HilbertStructure hl_, hr_;
    std::vector<std::size_t> bisections_;
};

struct BiprincipalReport {
    std::vector<std::size_t> bisections;
    // principal sections: ⟨γ,γ⟩ ≤ e (resp. [γ,γ] ≤ e)
    std::vector<std::size_t> principal_left, principal_right;
    bool left_covered = false, right_covered = false;  // ⋁ principal = 1
};
// Throws CoveringFails ({0} left, {1} right) or AssociativityFails
// {γ, γ′, γ″}.
BiprincipalReport verify_biprincipal(const BiSheaf& b);

// Q over itself on both sides, ⟨U,V⟩ = UV*, [U,V] = U*V.
BiSheafData self_bisheaf(QuantalFramePtr q);

// Order-ideals of a biaction closed under joins of (two-sided) compatible
// pairs, with both actions and both inner products extended pointwise and
// closed. q and r must be lcc of the two acting pseudogroups.
struct BimoduleSheaf {
    BiSheaf sheaf;
    std::vector<Bits> members;
    std::vector<std::size_t> iota;
};
// Throws BadInput, JoinMissing, TooLarge, plus BiSheaf::verify failures.
BimoduleSheaf lcc_bimodule(const Biaction& b, QuantalFramePtr q, QuantalFramePtr r, std::size_t max_carrier = 4096);

// The bisections as a (Q_I, R_I)-biaction, verified as an equivalence
// bimodule. Throws SectionEscape, plus bimodule verification failures.
struct BisectionBimodule {
    PartialUnits q_units, r_units;
    std::vector<std::size_t> bisections;
    EquivalenceBimodule bimodule;
};
BisectionBimodule bisection_bimodule(const BiSheaf& b);

}  // namespace morita
