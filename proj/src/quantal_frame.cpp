#include "morita/quantal_frame.hpp"

#include <unordered_set>

#include "morita/errors.hpp"
#include "morita/hash.hpp"
#include "morita/kernels.hpp"

namespace morita {

QuantalFrame QuantalFrame::lcc(PseudogroupPtr sp, LccOptions opt) {
    const Pseudogroup& s = *sp;
    const InverseSemigroup& S = s.S();
    const std::size_t n = s.size();
    QuantalFrame q;
    q.s_ = std::move(sp);
    std::vector<Bits> members;
    if (n <= opt.filter_bound && n < 64) {
        auto masks = filter_masks(static_cast<unsigned>(n),
                                  [&](std::uint64_t m) { return s.is_closed_ideal(Bits::from_mask(n, m)); });
        if (masks.size() > opt.max_carrier) fail(ErrorKind::TooLarge, "carrier exceeds the bound", {masks.size()});
        for (auto m : masks) members.push_back(Bits::from_mask(n, m));
    } else {
        // every closed ideal is the join of the principal ideals below it
        q.generated_ = true;
        std::vector<Bits> principal(n);
        for (Elem a = 0; a < n; ++a) principal[a] = s.ideal_closure(Bits::single(n, a));
        std::unordered_set<Bits, BitsHash> seen;
        members.push_back(principal[s.zero()]);
        seen.insert(members.back());
        for (std::size_t i = 0; i < members.size(); ++i)
            for (Elem a = 0; a < n; ++a) {
                if (members[i].test(a)) continue;
                Bits y = s.ideal_closure(members[i] | principal[a]);
                if (seen.insert(y).second) {
                    members.push_back(std::move(y));
                    if (members.size() > opt.max_carrier)
                        fail(ErrorKind::TooLarge, "carrier exceeds the bound", {members.size()});
                }
            }
    }
    q.carrier_ = ClosureFamily(n, std::move(members));
    q.lattice_ = q.carrier_.lattice();
    const std::size_t k = q.carrier_.size();

    q.principal_.resize(n);
    for (Elem a = 0; a < n; ++a) {
        q.principal_[a] = q.carrier_.index_of(S.below(a));
        if (q.principal_[a] == npos) fail(ErrorKind::NotQuantalFrame, "principal ideal is not closed", {a});
    }
    q.mult_.assign(k * k, npos);
    for_each_index(k, [&](std::size_t u) {
        for (std::size_t v = 0; v < k; ++v) {
            std::size_t acc = q.lattice_.bottom();
            S.product(q.carrier_[u], q.carrier_[v]).for_each([&](std::size_t p) {
                acc = q.lattice_.join(acc, q.principal_[p]);
            });
            q.mult_[u * k + v] = acc;
        }
    });
    q.star_.resize(k);
    for (std::size_t u = 0; u < k; ++u) {
        Bits st(n);
        q.carrier_[u].for_each([&](std::size_t a) { st.set(S.inv(a)); });
        q.star_[u] = q.carrier_.index_of(st);
        if (q.star_[u] == npos) fail(ErrorKind::NotQuantalFrame, "involution leaves the carrier", {u});
    }
    q.unit_ = q.carrier_.index_of(S.idempotent_bits());
    if (q.unit_ == npos) fail(ErrorKind::NotQuantalFrame, "idempotents do not form a closed ideal");
    for (std::size_t u = 0; u < k; ++u)
        if (q.is_partial_unit(u)) q.units_.push_back(u);
    q.verify();
    return q;
}

std::size_t QuantalFrame::generate(const Bits& x) const { return carrier_.index_of(s_->ideal_closure(x)); }

bool QuantalFrame::is_partial_unit(std::size_t u) const noexcept {
    return leq(mul(u, star(u)), unit_) && leq(mul(star(u), u), unit_);
}

std::vector<std::size_t> QuantalFrame::below_unit() const {
    std::vector<std::size_t> out;
    for (std::size_t u = 0; u < size(); ++u)
        if (leq(u, unit_)) out.push_back(u);
    return out;
}

void QuantalFrame::verify() const {
    const std::size_t k = size();
    if (auto d = lattice_.distributivity_failure())
        fail(ErrorKind::NotQuantalFrame, "carrier is not a frame", {(*d)[0], (*d)[1], (*d)[2]});
    if (auto t = first_triple(k, k, k, [&](std::size_t a, std::size_t b, std::size_t c) {
            return mul(mul(a, b), c) != mul(a, mul(b, c));
        }))
        fail(ErrorKind::NotQuantalFrame, "multiplication is not associative", {(*t)[0], (*t)[1], (*t)[2]});
    if (auto t = first_triple(k, k, k, [&](std::size_t a, std::size_t b, std::size_t c) {
            return mul(a, join(b, c)) != join(mul(a, b), mul(a, c)) ||
                   mul(join(b, c), a) != join(mul(b, a), mul(c, a));
        }))
        fail(ErrorKind::NotQuantalFrame, "multiplication does not preserve joins", {(*t)[0], (*t)[1], (*t)[2]});
    if (auto p = first_pair(k, k, [&](std::size_t a, std::size_t b) {
            return star(mul(a, b)) != mul(star(b), star(a)) || star(join(a, b)) != join(star(a), star(b));
        }))
        fail(ErrorKind::NotQuantalFrame, "involution law fails", {(*p)[0], (*p)[1]});
    for (std::size_t u = 0; u < k; ++u) {
        if (star(star(u)) != u) fail(ErrorKind::NotQuantalFrame, "involution is not involutive", {u});
        if (mul(unit_, u) != u || mul(u, unit_) != u) fail(ErrorKind::NotQuantalFrame, "unit law fails", {u});
        if (mul(u, bottom()) != bottom() || mul(bottom(), u) != bottom())
            fail(ErrorKind::NotQuantalFrame, "bottom is not absorbing", {u});
        std::size_t g = mul(mul(u, star(u)), u);
        if (leq(g, u) && g != u) fail(ErrorKind::NotQuantalFrame, "not stably Gelfand", {u});
    }
    std::size_t cover = bottom();
    for (auto u : units_) cover = join(cover, u);
    if (cover != top()) fail(ErrorKind::CoverFails, "partial units do not cover the top", {cover, top()});
}

std::uint64_t QuantalFrame::mult_digest() const {
    Fnv1a h;
    h.add_all(mult_);
    h.add_all(star_);
    h.add(static_cast<std::uint64_t>(unit_));
    return h.value();
}

PartialUnits partial_units(const QuantalFrame& q) {
    const auto& u = q.partial_units();
    const std::size_t m = u.size();
    std::vector<std::size_t> pos(q.size(), npos);
    for (std::size_t i = 0; i < m; ++i) pos[u[i]] = i;
    RawTable t;
    t.n = m;
    t.mult.resize(m * m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            std::size_t p = pos[q.mul(u[i], u[j])];
            if (p == npos) fail(ErrorKind::NotQuantalFrame, "partial units not closed under product", {u[i], u[j]});
            t.mult[i * m + j] = p;
        }
    for (std::size_t i = 0; i < m; ++i) t.names.push_back(q[u[i]].to_string());
    auto pg = Pseudogroup::make(InverseSemigroup::validate(std::move(t)));
    return {std::move(pg), u};
}

std::vector<std::size_t> iso_check(const Pseudogroup& s, const QuantalFrame& q) {
    const auto& S = s.S();
    const std::size_t n = s.size();
    const auto& units = q.partial_units();
    std::vector<std::size_t> pos(q.size(), npos);
    for (std::size_t i = 0; i < units.size(); ++i) pos[units[i]] = i;
    if (units.size() != n) fail(ErrorKind::NotIsomorphic, "partial units and S differ in size", {units.size(), n});
    std::vector<std::size_t> phi(n);
    std::vector<bool> hit(n, false);
    for (Elem a = 0; a < n; ++a) {
        std::size_t p = pos[q.principal(a)];
        if (p == npos) fail(ErrorKind::NotIsomorphic, "principal ideal is not a partial unit", {a});
        if (hit[p]) fail(ErrorKind::NotIsomorphic, "principal-ideal map is not injective", {a});
        hit[p] = true;
        phi[a] = p;
    }
    auto bad = first_pair(n, n, [&](Elem a, Elem b) {
        if (q.principal(S.mul(a, b)) != q.mul(q.principal(a), q.principal(b))) return true;
        if (S.natural_leq(a, b) != q.leq(q.principal(a), q.principal(b))) return true;
        Elem j = s.join(a, b);
        return j != npos && q.principal(j) != q.join(q.principal(a), q.principal(b));
    });
    if (bad) fail(ErrorKind::NotIsomorphic, "principal-ideal map breaks an operation", {(*bad)[0], (*bad)[1]});
    for (Elem a = 0; a < n; ++a)
        if (q.principal(S.inv(a)) != q.star(q.principal(a)))
            fail(ErrorKind::NotIsomorphic, "principal-ideal map does not commute with inverse", {a});
    return phi;
}

void idempotent_frame_check(const Pseudogroup& s, const QuantalFrame& q) {
    const auto& S = s.S();
    const auto& idem = S.idempotents();
    auto low = q.below_unit();
    if (low.size() != idem.size())
        fail(ErrorKind::NotIsomorphic, "elements below the unit and idempotents differ in number",
             {low.size(), idem.size()});
    std::vector<bool> hit(q.size(), false);
    for (Elem e : idem) {
        std::size_t u = q.principal(e);
        if (!q.leq(u, q.unit()) || hit[u]) fail(ErrorKind::NotIsomorphic, "idempotent map is not a bijection", {e});
        hit[u] = true;
        for (Elem f : idem)
            if (S.natural_leq(e, f) != q.leq(u, q.principal(f)))
                fail(ErrorKind::NotIsomorphic, "idempotent map does not preserve order", {e, f});
    }
}

}  // namespace morita
