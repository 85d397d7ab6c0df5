#include "morita/sheaves.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "morita/errors.hpp"
#include "morita/kernels.hpp"

namespace morita {

namespace {

bool same_table(const InverseSemigroup& a, const InverseSemigroup& b) {
    return a.size() == b.size() && a.table() == b.table();
}

// positions of a sorted index list inside 0..n-1
std::vector<std::size_t> positions(const std::vector<std::size_t>& list, std::size_t n) {
    std::vector<std::size_t> pos(n, npos);
    for (std::size_t i = 0; i < list.size(); ++i) pos[list[i]] = i;
    return pos;
}

// Fixed points of `close` that contain the minimum, canonically sorted.
// Filters every subset for small carriers, otherwise grows closures of unions
// with principal ideals.
template <class Close>
std::vector<Bits> closed_sets(std::size_t n, const std::vector<Bits>& below, Elem zero, Close&& close,
                              std::size_t max) {
    std::vector<Bits> members;
    if (n <= 16) {
        auto masks = filter_masks(static_cast<unsigned>(n), [&](std::uint64_t m) {
            if (!m) return false;
            Bits b = Bits::from_mask(n, m);
            return close(b) == b;
        });
        if (masks.size() > max) fail(ErrorKind::TooLarge, "completion exceeds the bound", {masks.size()});
        for (auto m : masks) members.push_back(Bits::from_mask(n, m));
    } else {
        std::unordered_set<Bits, BitsHash> seen;
        members.push_back(close(below[zero]));
        seen.insert(members.back());
        for (std::size_t i = 0; i < members.size(); ++i)
            for (Elem x = 0; x < n; ++x) {
                if (members[i].test(x)) continue;
                Bits b = close(members[i] | below[x]);
                if (!seen.insert(b).second) continue;
                members.push_back(std::move(b));
                if (members.size() > max) fail(ErrorKind::TooLarge, "completion exceeds the bound", {max});
            }
    }
    std::sort(members.begin(), members.end(), [](const Bits& u, const Bits& v) { return canonical_less(u, v); });
    return members;
}

std::unordered_map<Bits, std::size_t, BitsHash> index_map(const std::vector<Bits>& members) {
    std::unordered_map<Bits, std::size_t, BitsHash> idx;
    for (std::size_t i = 0; i < members.size(); ++i) idx.emplace(members[i], i);
    return idx;
}

std::vector<Bits> inclusion_order(const std::vector<Bits>& members) {
    const std::size_t k = members.size();
    std::vector<Bits> below(k, Bits(k));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            if (members[j].subset_of(members[i])) below[i].set(j);
    return below;
}

}  // namespace

std::string QSheaf::name(std::size_t x) const {
    if (x < d_.names.size() && !d_.names[x].empty()) return d_.names[x];
    return std::to_string(x);
}

QSheaf QSheaf::verify(SheafData d) {
    if (!d.q) fail(ErrorKind::BadInput, "sheaf has no quantale");
    const QuantalFrame& Q = *d.q;
    const std::size_t n = d.below.size(), k = Q.size();
    if (n == 0) fail(ErrorKind::BadInput, "empty carrier");
    if (d.act.size() != k * n) fail(ErrorKind::BadTable, "action table has the wrong size", {d.act.size(), k * n});
    for (std::size_t i = 0; i < d.act.size(); ++i)
        if (d.act[i] >= n) fail(ErrorKind::BadTable, "action entry out of range", {i / n, i % n});
    for (std::size_t x = 0; x < n; ++x)
        if (d.below[x].size() != n || !d.below[x].test(x)) fail(ErrorKind::BadTable, "bad order row", {x});
    if (!d.support.empty() && d.support.size() != n)
        fail(ErrorKind::BadTable, "support table has the wrong size", {d.support.size(), n});

    QSheaf x(std::move(d));
    x.lat_ = FiniteLattice::from_order(x.d_.below);
    if (auto w = x.lat_.distributivity_failure())
        fail(ErrorKind::NotDistributiveLattice, "carrier is not a frame", {(*w)[0], (*w)[1], (*w)[2]});

    if (auto w = first_triple(k, k, n, [&](std::size_t u, std::size_t v, std::size_t y) {
            return x.act(Q.mul(u, v), y) != x.act(u, x.act(v, y)) ||
                   x.act(Q.join(u, v), y) != x.join(x.act(u, y), x.act(v, y));
        }))
        fail(ErrorKind::NotQModule, "action is not associative or not join-preserving in Q", {(*w)[0], (*w)[1], (*w)[2]});
    if (auto w = first_triple(k, n, n, [&](std::size_t u, std::size_t y, std::size_t z) {
            return x.act(u, x.join(y, z)) != x.join(x.act(u, y), x.act(u, z));
        }))
        fail(ErrorKind::NotQModule, "action does not preserve joins of X", {(*w)[0], (*w)[1], (*w)[2]});
    for (std::size_t y = 0; y < n; ++y) {
        if (x.act(Q.unit(), y) != y) fail(ErrorKind::NotQModule, "unit does not act trivially", {y});
        if (x.act(Q.bottom(), y) != x.bottom()) fail(ErrorKind::NotQModule, "bottom of Q does not annihilate", {y});
    }
    for (std::size_t u = 0; u < k; ++u)
        if (x.act(u, x.bottom()) != x.bottom()) fail(ErrorKind::NotQModule, "bottom of X is not fixed", {u});

    // support as the least b ≤ e with y ≤ b·1
    const auto low = Q.below_unit();
    x.spp_.resize(n);
    for (std::size_t y = 0; y < n; ++y) {
        std::size_t m = Q.unit();
        for (auto b : low)
            if (x.leq(y, x.act(b, x.top()))) m = Q.meet(m, b);
        if (!x.leq(y, x.act(m, x.top()))) fail(ErrorKind::SupportMissing, "no least support", {y});
        x.spp_[y] = m;
    }
    for (std::size_t y = 0; y < x.d_.support.size(); ++y)
        if (x.d_.support[y] != x.spp_[y])
            fail(ErrorKind::SupportMismatch, "supplied support differs from the computed one",
                 {y, x.d_.support[y], x.spp_[y]});
    if (auto w = first_pair(low.size(), n, [&](std::size_t i, std::size_t y) {
            return x.spp_[x.act(low[i], y)] != Q.mul(low[i], x.spp_[y]);
        }))
        fail(ErrorKind::SupportNotEquivariant, "spp(b·x) differs from b·spp(x)", {low[(*w)[0]], (*w)[1]});
    for (std::size_t y = 0; y < n; ++y)
        if (x.act(x.spp_[y], y) != y) fail(ErrorKind::SupportConditionFails, "spp(x)·x differs from x", {y});

    std::vector<char> sec(n, 0);
    for_each_index(n, [&](std::size_t g) {
        bool ok = true;
        for (std::size_t y = 0; y < n && ok; ++y) ok = x.leq(x.act(x.spp_[x.meet(y, g)], g), y);
        sec[g] = ok;
    });
    x.section_bits_ = Bits(n);
    std::size_t cover = x.bottom();
    for (std::size_t g = 0; g < n; ++g)
        if (sec[g]) {
            x.section_bits_.set(g);
            x.sections_.push_back(g);
            cover = x.join(cover, g);
        }
    if (cover != x.top()) fail(ErrorKind::CoverFails, "local sections do not cover the top", {cover});
    return x;
}

SheafData self_sheaf(QuantalFramePtr q) {
    const std::size_t k = q->size();
    SheafData d;
    for (std::size_t u = 0; u < k; ++u) {
        d.below.push_back(q->lattice().below(u));
        d.names.push_back((*q)[u].to_string());
    }
    d.act.resize(k * k);
    for (std::size_t u = 0; u < k; ++u)
        for (std::size_t v = 0; v < k; ++v) d.act[u * k + v] = q->mul(u, v);
    d.q = std::move(q);
    return d;
}

SheafData base_sheaf(QuantalFramePtr q) {
    const QuantalFrame& Q = *q;
    const auto low = Q.below_unit();
    const auto pos = positions(low, Q.size());
    const std::size_t m = low.size();
    SheafData d;
    for (std::size_t i = 0; i < m; ++i) {
        Bits b(m);
        for (std::size_t j = 0; j < m; ++j)
            if (Q.leq(low[j], low[i])) b.set(j);
        d.below.push_back(std::move(b));
        d.names.push_back(Q[low[i]].to_string());
    }
    d.act.resize(Q.size() * m);
    for (std::size_t u = 0; u < Q.size(); ++u)
        for (std::size_t i = 0; i < m; ++i)
            d.act[u * m + i] = pos[Q.meet(Q.mul(Q.mul(u, low[i]), Q.top()), Q.unit())];
    d.q = std::move(q);
    return d;
}

SheafData right_sheaf_as_left(QuantalFramePtr r, std::vector<Bits> below, const std::vector<std::size_t>& ract) {
    const std::size_t n = below.size(), k = r->size();
    if (ract.size() != n * k) fail(ErrorKind::BadTable, "right action table has the wrong size", {ract.size(), n * k});
    SheafData d;
    d.below = std::move(below);
    d.act.resize(k * n);
    for (std::size_t b = 0; b < k; ++b)
        for (std::size_t x = 0; x < n; ++x) d.act[b * n + x] = ract[x * k + r->star(b)];
    d.q = std::move(r);
    return d;
}

Witness section_order_failure(const QSheaf& x) {
    const auto& s = x.sections();
    auto w = first_pair(s.size(), s.size(), [&](std::size_t i, std::size_t j) {
        return x.leq(s[i], s[j]) != (s[i] == x.act(x.spp(s[i]), s[j]));
    });
    if (!w) return std::nullopt;
    return std::vector<std::size_t>{s[(*w)[0]], s[(*w)[1]]};
}

Witness conjugation_failure(const QSheaf& x) {
    const QuantalFrame& Q = x.Q();
    const auto& u = Q.partial_units();
    auto w = first_pair(u.size(), x.size(), [&](std::size_t i, std::size_t y) {
        return x.spp(x.act(u[i], y)) != Q.mul(Q.mul(u[i], x.spp(y)), Q.star(u[i]));
    });
    if (!w) return std::nullopt;
    return std::vector<std::size_t>{u[(*w)[0]], (*w)[1]};
}

Witness section_downset_failure(const QSheaf& x) {
    for (auto g : x.sections())
        for (std::size_t y = 0; y < x.size(); ++y)
            if (x.leq(y, g) && !x.is_section(y)) return std::vector<std::size_t>{g, y};
    return std::nullopt;
}

Witness base_meet_failure(const QSheaf& x) {
    const auto low = x.Q().below_unit();
    auto w = first_triple(low.size(), x.size(), x.size(), [&](std::size_t i, std::size_t y, std::size_t z) {
        return x.act(low[i], x.meet(y, z)) != x.meet(y, x.act(low[i], z));
    });
    if (!w) return std::nullopt;
    return std::vector<std::size_t>{low[(*w)[0]], (*w)[1], (*w)[2]};
}

Theta theta(const QSheaf& x) {
    const QuantalFrame& Q = x.Q();
    PartialUnits pu = partial_units(Q);
    const auto upos = positions(pu.index, Q.size());
    const auto& sec = x.sections();
    const auto spos = positions(sec, x.size());
    const std::size_t m = sec.size(), k = pu.index.size();

    ActionData d;
    d.s = semigroup_of(pu.pseudogroup);
    d.x_size = m;
    d.act.resize(k * m);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            std::size_t y = spos[x.act(pu.index[i], sec[j])];
            if (y == npos) fail(ErrorKind::SectionEscape, "partial unit moves a section out", {pu.index[i], sec[j]});
            d.act[i * m + j] = y;
        }
    for (std::size_t j = 0; j < m; ++j) {
        std::size_t p = upos[x.spp(sec[j])];
        if (p == npos) fail(ErrorKind::SectionEscape, "support of a section is not a partial unit", {sec[j]});
        d.support.push_back(p);
        d.names.push_back(x.name(sec[j]));
    }
    auto a = SupportedAction::validate(std::move(d));
    auto mod = PseudoModule::from(pu.pseudogroup, std::move(a));
    if (auto w = first_pair(m, m, [&](std::size_t i, std::size_t j) {
            if (mod.leq(i, j) != x.leq(sec[i], sec[j])) return true;
            std::size_t jn = mod.join(i, j);
            return jn != npos && sec[jn] != x.join(sec[i], sec[j]);
        }))
        fail(ErrorKind::SectionEscape, "section order or joins disagree with the sheaf",
             {sec[(*w)[0]], sec[(*w)[1]]});
    return Theta{std::move(pu), sec, std::move(mod)};
}

ModuleSheaf lcc_module(const PseudoModule& x, QuantalFramePtr q, std::size_t max_carrier) {
    const QuantalFrame& Q = *q;
    if (!same_table(Q.S().S(), x.S().S())) fail(ErrorKind::BadInput, "quantale is not lcc of the module's pseudogroup");
    const std::size_t n = x.size();
    const auto& S = x.S().S();
    std::vector<Bits> below(n);
    for (Elem y = 0; y < n; ++y) below[y] = x.action().below(y);
    auto close = [&](Bits b) {
        bool changed = true;
        while (changed) {
            changed = false;
            Bits down(n);
            b.for_each([&](std::size_t y) { down |= below[y]; });
            if (down != b) {
                b = std::move(down);
                changed = true;
            }
            auto el = b.elements();
            for (std::size_t i = 0; i < el.size(); ++i)
                for (std::size_t j = i + 1; j < el.size(); ++j) {
                    Elem jn = x.join(el[i], el[j]);
                    if (jn != npos && !b.test(jn)) {
                        b.set(jn);
                        changed = true;
                    }
                }
        }
        return b;
    };
    auto members = closed_sets(n, below, x.zero(), close, max_carrier);
    auto idx = index_map(members);
    const std::size_t m = members.size(), k = Q.size();

    SheafData d;
    d.below = inclusion_order(members);
    d.act.resize(k * m);
    for (std::size_t u = 0; u < k; ++u)
        for (std::size_t j = 0; j < m; ++j) {
            Bits img(n);
            Q[u].for_each([&](std::size_t s) { img |= x.action().act_set(s, members[j]); });
            d.act[u * m + j] = idx.at(close(std::move(img)));
        }
    for (std::size_t j = 0; j < m; ++j) {
        Bits ps(S.size());
        members[j].for_each([&](std::size_t y) { ps.set(x.p(y)); });
        d.support.push_back(Q.generate(ps));
        d.names.push_back(members[j].to_string());
    }
    d.q = std::move(q);
    ModuleSheaf out{QSheaf::verify(std::move(d)), std::move(members), {}};
    Bits principal(m);
    for (Elem y = 0; y < n; ++y) {
        auto it = idx.find(below[y]);
        if (it == idx.end()) fail(ErrorKind::SectionEscape, "principal ideal is not closed", {y});
        out.iota.push_back(it->second);
        principal.set(it->second);
    }
    for (std::size_t j = 0; j < m; ++j)
        if (principal.test(j) != out.sheaf.is_section(j))
            fail(ErrorKind::SectionEscape, "local sections differ from the principal ideals", {j});
    return out;
}

std::vector<Elem> unit_iso(const PseudoModule& x, const ModuleSheaf& l, const Theta& th) {
    auto phi = iso_check(x.S(), l.sheaf.Q());
    const auto spos = positions(th.sections, l.sheaf.size());
    std::vector<Elem> psi(x.size());
    for (Elem y = 0; y < x.size(); ++y) {
        psi[y] = spos[l.iota[y]];
        if (psi[y] == npos) fail(ErrorKind::NotIsomorphic, "principal ideal is not a section", {y});
    }
    check_module_iso(x, th.module, phi, psi);
    return psi;
}

void check_sheaf_iso(const QSheaf& a, const QSheaf& b, const std::vector<std::size_t>& phi,
                     const std::vector<std::size_t>& psi) {
    const std::size_t n = a.size();
    if (b.size() != n || psi.size() != n || phi.size() != a.Q().size())
        fail(ErrorKind::NotIsomorphic, "sizes differ", {n, b.size()});
    std::vector<bool> hit(n, false);
    for (std::size_t x = 0; x < n; ++x) {
        if (psi[x] >= n || hit[psi[x]]) fail(ErrorKind::NotIsomorphic, "map is not a bijection", {x});
        hit[psi[x]] = true;
        if (b.spp(psi[x]) != phi[a.spp(x)]) fail(ErrorKind::NotIsomorphic, "support not carried over", {x});
    }
    if (auto w = first_pair(n, n, [&](std::size_t x, std::size_t y) { return a.leq(x, y) != b.leq(psi[x], psi[y]); }))
        fail(ErrorKind::NotIsomorphic, "order not carried over", {(*w)[0], (*w)[1]});
    if (auto w = first_pair(a.Q().size(), n,
                            [&](std::size_t u, std::size_t x) { return psi[a.act(u, x)] != b.act(phi[u], psi[x]); }))
        fail(ErrorKind::NotIsomorphic, "action not carried over", {(*w)[0], (*w)[1]});
}

CounitReport counit_iso(const QSheaf& xi) {
    const QuantalFrame& Q = xi.Q();
    Theta th = theta(xi);
    auto L = make_lcc(th.units.pseudogroup);
    const std::size_t k = L->size();
    if (k != Q.size()) fail(ErrorKind::NotIsomorphic, "lcc(Q_I) and Q differ in size", {k, Q.size()});
    std::vector<std::size_t> qi(k);
    std::vector<bool> hit(k, false);
    for (std::size_t i = 0; i < k; ++i) {
        std::size_t acc = Q.bottom();
        (*L)[i].for_each([&](std::size_t a) { acc = Q.join(acc, th.units.index[a]); });
        if (hit[acc]) fail(ErrorKind::NotIsomorphic, "I ↦ ⋁I is not injective", {i});
        hit[acc] = true;
        qi[i] = acc;
    }
    if (auto w = first_pair(k, k, [&](std::size_t u, std::size_t v) {
            return qi[L->mul(u, v)] != Q.mul(qi[u], qi[v]) || L->leq(u, v) != Q.leq(qi[u], qi[v]);
        }))
        fail(ErrorKind::NotIsomorphic, "I ↦ ⋁I breaks the product or order", {(*w)[0], (*w)[1]});
    for (std::size_t u = 0; u < k; ++u)
        if (qi[L->star(u)] != Q.star(qi[u])) fail(ErrorKind::NotIsomorphic, "I ↦ ⋁I breaks the involution", {u});

    auto c = lcc_module(th.module, L);
    std::vector<std::size_t> counit(c.members.size());
    for (std::size_t j = 0; j < c.members.size(); ++j) {
        std::size_t acc = xi.bottom();
        c.members[j].for_each([&](std::size_t g) { acc = xi.join(acc, th.sections[g]); });
        counit[j] = acc;
    }
    check_sheaf_iso(c.sheaf, xi, qi, counit);
    return CounitReport{std::move(th), std::move(L), std::move(qi), std::move(c), std::move(counit)};
}

std::vector<std::size_t> self_inner(const QuantalFrame& q) {
    const std::size_t k = q.size();
    std::vector<std::size_t> ip(k * k);
    for (std::size_t u = 0; u < k; ++u)
        for (std::size_t v = 0; v < k; ++v) ip[u * k + v] = q.mul(u, q.star(v));
    return ip;
}

std::vector<std::size_t> derive_inner(const QSheaf& x) {
    const QuantalFrame& Q = x.Q();
    const auto& units = Q.partial_units();
    const auto& sec = x.sections();
    const std::size_t n = x.size(), m = sec.size();
    std::vector<std::size_t> onsec(n * m);
    for_each_index(n, [&](std::size_t y) {
        for (std::size_t j = 0; j < m; ++j) {
            std::size_t acc = Q.bottom();
            for (auto a : units)
                if (Q.leq(Q.mul(Q.star(a), a), x.spp(sec[j])) && x.leq(x.act(a, sec[j]), y)) acc = Q.join(acc, a);
            onsec[y * m + j] = acc;
        }
    });
    std::vector<std::size_t> ip(n * n);
    for_each_index(n, [&](std::size_t y) {
        for (std::size_t z = 0; z < n; ++z) {
            std::size_t acc = Q.bottom();
            for (std::size_t j = 0; j < m; ++j) acc = Q.join(acc, Q.mul(onsec[y * m + j], Q.star(onsec[z * m + j])));
            ip[y * n + z] = acc;
        }
    });
    return ip;
}

HilbertStructure verify_hilbert(const QSheaf& x, std::vector<std::size_t> inner) {
    const QuantalFrame& Q = x.Q();
    const std::size_t n = x.size(), k = Q.size();
    if (inner.size() != n * n) fail(ErrorKind::BadTable, "inner product table has the wrong size", {inner.size()});
    for (auto v : inner)
        if (v >= k) fail(ErrorKind::BadTable, "inner product entry out of range", {v});
    HilbertStructure h{n, std::move(inner), x.sections()};
    auto law = [](std::size_t no, const char* what, std::vector<std::size_t> w) {
        w.insert(w.begin(), no);
        fail(ErrorKind::HilbertLawFailed, what, std::move(w));
    };
    if (auto w = first_triple(k, n, n, [&](std::size_t a, std::size_t y, std::size_t z) {
            return h.ip(x.act(a, y), z) != Q.mul(a, h.ip(y, z));
        }))
        law(1, "<a·x,y> differs from a<x,y>", {(*w)[0], (*w)[1], (*w)[2]});
    for (std::size_t z = 0; z < n; ++z)
        if (h.ip(x.bottom(), z) != Q.bottom()) law(2, "<0,y> is not 0", {x.bottom(), x.bottom(), z});
    if (auto w = first_triple(n, n, n, [&](std::size_t y, std::size_t y2, std::size_t z) {
            return h.ip(x.join(y, y2), z) != Q.join(h.ip(y, z), h.ip(y2, z));
        }))
        law(2, "inner product does not preserve joins", {(*w)[0], (*w)[1], (*w)[2]});
    if (auto w = first_pair(n, n, [&](std::size_t y, std::size_t z) { return h.ip(y, z) != Q.star(h.ip(z, y)); }))
        law(3, "inner product is not hermitian", {(*w)[0], (*w)[1]});
    auto expand = [&](std::size_t y, std::size_t extra) {
        std::size_t acc = x.bottom();
        for (auto g : h.basis) acc = x.join(acc, x.act(h.ip(y, g), g));
        if (extra != npos) acc = x.join(acc, x.act(h.ip(y, extra), extra));
        return acc;
    };
    for (std::size_t y = 0; y < n; ++y)
        if (expand(y, npos) != y) law(4, "sections do not expand x", {y});
    for (std::size_t g = 0; g < n; ++g) {
        bool hs = true;
        for (std::size_t y = 0; y < n && hs; ++y) hs = x.leq(x.act(h.ip(y, g), g), y);
        if (hs != x.is_section(g)) law(5, "Hilbert and local sections differ", {g});
    }
    for (std::size_t y = 0; y < n; ++y)
        if (x.spp(y) != Q.meet(h.ip(y, y), Q.unit())) law(6, "spp(x) differs from <x,x> ∧ e", {y});
    if (auto w = first_pair(n, n, [&](std::size_t y, std::size_t z) {
            std::size_t acc = Q.bottom();
            for (auto g : h.basis) acc = Q.join(acc, Q.mul(h.ip(y, g), h.ip(g, z)));
            return acc != h.ip(y, z);
        }))
        law(7, "Parseval identity fails", {(*w)[0], (*w)[1]});
    if (auto w = first_pair(n, n, [&](std::size_t y, std::size_t z) {
            if (y >= z) return false;
            for (std::size_t t = 0; t < n; ++t)
                if (h.ip(y, t) != h.ip(z, t)) return false;
            return true;
        }))
        law(8, "inner product is degenerate", {(*w)[0], (*w)[1]});
    for (std::size_t g = 0; g < n; ++g) {
        if (x.is_section(g)) continue;
        bool breaks = false;
        for (std::size_t y = 0; y < n && !breaks; ++y) breaks = expand(y, g) != y;
        if (!breaks) law(9, "basis is not maximal", {g});
    }
    return h;
}

bool is_regular_section(const QSheaf& x, const HilbertStructure& h, std::size_t g) {
    return x.is_section(g) && x.act(h.ip(g, g), g) == g;
}

BiSheaf BiSheaf::verify(BiSheafData d) {
    if (!d.r) fail(ErrorKind::BadInput, "bisheaf has no right quantale");
    auto right = right_sheaf_as_left(d.r, d.left.below, d.ract);
    BiSheaf b(QSheaf::verify(std::move(d.left)), QSheaf::verify(std::move(right)));
    b.ract_ = std::move(d.ract);
    const std::size_t n = b.size(), kq = b.Q().size(), kr = b.R().size();
    if (auto w = first_triple(kq, n, kr, [&](std::size_t a, std::size_t x, std::size_t c) {
            return b.ract(b.lact(a, x), c) != b.lact(a, b.ract(x, c));
        }))
        fail(ErrorKind::NotQModule, "(a·x)·b differs from a·(x·b)", {(*w)[0], (*w)[1], (*w)[2]});
    b.hl_ = verify_hilbert(b.left_, std::move(d.inner_q));
    b.hr_ = verify_hilbert(b.right_, std::move(d.inner_r));
    for (std::size_t g = 0; g < n; ++g)
        if (b.left_.is_section(g) && b.right_.is_section(g)) b.bisections_.push_back(g);
    for (std::size_t x = 0; x < n; ++x) {
        std::size_t l = b.left_.bottom(), r = b.left_.bottom();
        for (auto g : b.bisections_) {
            l = b.left_.join(l, b.lact(b.ip_q(x, g), g));
            r = b.left_.join(r, b.ract(g, b.ip_r(g, x)));
        }
        if (l != x || r != x) fail(ErrorKind::HilbertLawFailed, "bisections do not expand x", {4, x});
    }
    return b;
}

BiprincipalReport verify_biprincipal(const BiSheaf& b) {
    const QuantalFrame &Q = b.Q(), &R = b.R();
    BiprincipalReport rep;
    rep.bisections = b.bisections();
    const auto& g = rep.bisections;
    std::size_t cq = Q.bottom(), cr = R.bottom();
    for (auto x : g) {
        cq = Q.join(cq, b.ip_q(x, x));
        cr = R.join(cr, b.ip_r(x, x));
    }
    if (cq != Q.unit()) fail(ErrorKind::CoveringFails, "⋁<γ,γ> differs from e_Q", {0, cq});
    if (cr != R.unit()) fail(ErrorKind::CoveringFails, "⋁[γ,γ] differs from e_R", {1, cr});
    const std::size_t m = g.size();
    if (auto w = first_triple(m, m, m, [&](std::size_t i, std::size_t j, std::size_t l) {
            return b.lact(b.ip_q(g[i], g[j]), g[l]) != b.ract(g[i], b.ip_r(g[j], g[l]));
        }))
        fail(ErrorKind::AssociativityFails, "<γ,γ'>γ'' differs from γ[γ',γ'']", {g[(*w)[0]], g[(*w)[1]], g[(*w)[2]]});
    std::size_t pl = b.left().bottom(), pr = b.left().bottom();
    for (auto x : b.left().sections())
        if (Q.leq(b.ip_q(x, x), Q.unit())) {
            rep.principal_left.push_back(x);
            pl = b.left().join(pl, x);
        }
    for (auto x : b.right().sections())
        if (R.leq(b.ip_r(x, x), R.unit())) {
            rep.principal_right.push_back(x);
            pr = b.left().join(pr, x);
        }
    rep.left_covered = pl == b.left().top();
    rep.right_covered = pr == b.left().top();
    return rep;
}

BiSheafData self_bisheaf(QuantalFramePtr q) {
    const std::size_t k = q->size();
    BiSheafData d;
    d.left = self_sheaf(q);
    d.ract.resize(k * k);
    d.inner_q = self_inner(*q);
    d.inner_r.resize(k * k);
    for (std::size_t u = 0; u < k; ++u)
        for (std::size_t v = 0; v < k; ++v) {
            d.ract[u * k + v] = q->mul(u, v);
            d.inner_r[u * k + v] = q->mul(q->star(u), v);
        }
    d.r = std::move(q);
    return d;
}

BimoduleSheaf lcc_bimodule(const Biaction& b, QuantalFramePtr q, QuantalFramePtr r, std::size_t max_carrier) {
    if (!same_table(q->S().S(), b.S()) || !same_table(r->S().S(), b.T()))
        fail(ErrorKind::BadInput, "quantales are not lcc of the acting pseudogroups");
    const std::size_t n = b.size();
    std::vector<Bits> below(n, Bits(n));
    for (Elem x = 0; x < n; ++x)
        for (Elem y = 0; y < n; ++y)
            if (b.leq(y, x)) below[x].set(y);
    Elem zero = npos;
    for (Elem x = 0; x < n && zero == npos; ++x) {
        bool least = true;
        for (Elem y = 0; y < n && least; ++y) least = below[y].test(x);
        if (least) zero = x;
    }
    if (zero == npos) fail(ErrorKind::BadInput, "biaction has no least element");
    std::vector<Elem> join(n * n, npos);
    for (Elem x = 0; x < n; ++x)
        for (Elem y = 0; y < n; ++y) {
            if (!b.compatible(x, y)) continue;
            for (Elem z = 0; z < n; ++z)
                if (below[z].test(x) && below[z].test(y) && (join[x * n + y] == npos || below[join[x * n + y]].test(z)))
                    join[x * n + y] = z;
            Elem j = join[x * n + y];
            if (j == npos) fail(ErrorKind::JoinMissing, "compatible pair has no upper bound", {x, y});
            for (Elem z = 0; z < n; ++z)
                if (below[z].test(x) && below[z].test(y) && !below[z].test(j))
                    fail(ErrorKind::JoinMissing, "compatible pair has no least upper bound", {x, y});
        }
    auto close = [&](Bits s) {
        bool changed = true;
        while (changed) {
            changed = false;
            Bits down(n);
            s.for_each([&](std::size_t y) { down |= below[y]; });
            if (down != s) {
                s = std::move(down);
                changed = true;
            }
            auto el = s.elements();
            for (std::size_t i = 0; i < el.size(); ++i)
                for (std::size_t j = i + 1; j < el.size(); ++j) {
                    Elem jn = join[el[i] * n + el[j]];
                    if (jn != npos && !s.test(jn)) {
                        s.set(jn);
                        changed = true;
                    }
                }
        }
        return s;
    };
    auto members = closed_sets(n, below, zero, close, max_carrier);
    auto idx = index_map(members);
    const std::size_t m = members.size(), kq = q->size(), kr = r->size();

    BiSheafData d;
    d.left.below = inclusion_order(members);
    d.left.act.resize(kq * m);
    for (std::size_t u = 0; u < kq; ++u)
        for (std::size_t j = 0; j < m; ++j) {
            Bits img(n);
            (*q)[u].for_each([&](std::size_t a) { members[j].for_each([&](std::size_t x) { img.set(b.lact(a, x)); }); });
            d.left.act[u * m + j] = idx.at(close(std::move(img)));
        }
    d.ract.resize(m * kr);
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t v = 0; v < kr; ++v) {
            Bits img(n);
            (*r)[v].for_each([&](std::size_t t) { members[j].for_each([&](std::size_t x) { img.set(b.ract(x, t)); }); });
            d.ract[j * kr + v] = idx.at(close(std::move(img)));
        }
    d.inner_q.resize(m * m);
    d.inner_r.resize(m * m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            Bits ps(b.S().size()), pt(b.T().size());
            members[i].for_each([&](std::size_t x) {
                members[j].for_each([&](std::size_t y) {
                    ps.set(b.ip_s(x, y));
                    pt.set(b.ip_t(x, y));
                });
            });
            d.inner_q[i * m + j] = q->generate(ps);
            d.inner_r[i * m + j] = r->generate(pt);
        }
    for (const auto& mem : members) d.left.names.push_back(mem.to_string());
    d.left.q = std::move(q);
    d.r = std::move(r);
    BimoduleSheaf out{BiSheaf::verify(std::move(d)), std::move(members), {}};
    for (Elem x = 0; x < n; ++x) out.iota.push_back(idx.at(below[x]));
    return out;
}

BisectionBimodule bisection_bimodule(const BiSheaf& b) {
    PartialUnits qu = partial_units(b.Q()), ru = partial_units(b.R());
    const auto qpos = positions(qu.index, b.Q().size());
    const auto rpos = positions(ru.index, b.R().size());
    const auto& bis = b.bisections();
    const auto bpos = positions(bis, b.size());
    const std::size_t m = bis.size(), ks = qu.index.size(), kt = ru.index.size();
    auto get = [](const std::vector<std::size_t>& pos, std::size_t v, std::vector<std::size_t> w) {
        if (pos[v] == npos) fail(ErrorKind::SectionEscape, "bisection structure leaves the partial units", std::move(w));
        return pos[v];
    };
    BiactionTables t;
    t.s = semigroup_of(qu.pseudogroup);
    t.t = semigroup_of(ru.pseudogroup);
    t.x_size = m;
    t.lact.resize(ks * m);
    t.ract.resize(m * kt);
    t.inner_s.resize(m * m);
    t.inner_t.resize(m * m);
    for (std::size_t i = 0; i < ks; ++i)
        for (std::size_t j = 0; j < m; ++j) t.lact[i * m + j] = get(bpos, b.lact(qu.index[i], bis[j]), {qu.index[i], bis[j]});
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t i = 0; i < kt; ++i) t.ract[j * kt + i] = get(bpos, b.ract(bis[j], ru.index[i]), {bis[j], ru.index[i]});
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            t.inner_s[i * m + j] = get(qpos, b.ip_q(bis[i], bis[j]), {bis[i], bis[j]});
            t.inner_t[i * m + j] = get(rpos, b.ip_r(bis[i], bis[j]), {bis[i], bis[j]});
        }
    auto base = Biaction::verify(std::move(t));
    auto eq = EquivalenceBimodule::verify(qu.pseudogroup, ru.pseudogroup, std::move(base));
    return BisectionBimodule{std::move(qu), std::move(ru), bis, std::move(eq)};
}

}  // namespace morita
