#include "morita/bimodules.hpp"

#include <numeric>
#include <string>

#include "morita/errors.hpp"
#include "morita/kernels.hpp"

namespace morita {

std::vector<Elem> identity_map(std::size_t n) {
    std::vector<Elem> v(n);
    std::iota(v.begin(), v.end(), Elem{0});
    return v;
}

namespace {

void check_table(const std::vector<Elem>& t, std::size_t expected, std::size_t bound, const char* what) {
    if (t.size() != expected)
        fail(ErrorKind::BadTable, std::string(what) + " has " + std::to_string(t.size()) + " entries, expected " +
                                      std::to_string(expected));
    for (std::size_t i = 0; i < t.size(); ++i)
        if (t[i] >= bound) fail(ErrorKind::BadTable, std::string(what) + " entry out of range", {i});
}

template <class Pred>
void require_triple(ErrorKind kind, const char* what, std::size_t a, std::size_t b, std::size_t c, Pred&& bad) {
    if (auto w = first_triple(a, b, c, bad)) fail(kind, what, {(*w)[0], (*w)[1], (*w)[2]});
}

template <class Pred>
void require_pair(ErrorKind kind, const char* what, std::size_t a, std::size_t b, Pred&& bad) {
    if (auto w = first_pair(a, b, bad)) fail(kind, what, {(*w)[0], (*w)[1]});
}

}  // namespace

Biaction Biaction::verify(BiactionTables t) {
    if (!t.s || !t.t) fail(ErrorKind::BadInput, "biaction needs both semigroups");
    const std::size_t m = t.x_size, ns = t.s->size(), nt = t.t->size();
    if (m == 0) fail(ErrorKind::BadInput, "empty carrier");
    check_table(t.lact, ns * m, m, "lact");
    check_table(t.ract, m * nt, m, "ract");
    check_table(t.inner_s, m * m, ns, "inner_s");
    check_table(t.inner_t, m * m, nt, "inner_t");

    Biaction b(std::move(t));
    const auto& S = b.S();
    const auto& T = b.T();

    require_triple(ErrorKind::NotAction, "left action not associative", ns, ns, m,
                   [&](Elem a, Elem c, Elem x) { return b.lact(S.mul(a, c), x) != b.lact(a, b.lact(c, x)); });
    require_triple(ErrorKind::NotAction, "right action not associative", m, nt, nt,
                   [&](Elem x, Elem c, Elem d) { return b.ract(x, T.mul(c, d)) != b.ract(b.ract(x, c), d); });
    require_triple(ErrorKind::NotAction, "actions do not commute", ns, m, nt,
                   [&](Elem a, Elem x, Elem c) { return b.ract(b.lact(a, x), c) != b.lact(a, b.ract(x, c)); });

    require_triple(ErrorKind::BA1Failed, "<sx,y> != s<x,y>", ns, m, m,
                   [&](Elem a, Elem x, Elem y) { return b.ip_s(b.lact(a, x), y) != S.mul(a, b.ip_s(x, y)); });
    require_pair(ErrorKind::BA2Failed, "<y,x> != <x,y>^-1", m, m,
                 [&](Elem x, Elem y) { return b.ip_s(y, x) != S.inv(b.ip_s(x, y)); });
    for (Elem x = 0; x < m; ++x)
        if (b.lact(b.ip_s(x, x), x) != x) fail(ErrorKind::BA3Failed, "<x,x>x != x", {x});
    require_triple(ErrorKind::BA4Failed, "[x,yt] != [x,y]t", m, m, nt,
                   [&](Elem x, Elem y, Elem c) { return b.ip_t(x, b.ract(y, c)) != T.mul(b.ip_t(x, y), c); });
    require_pair(ErrorKind::BA5Failed, "[y,x] != [x,y]^-1", m, m,
                 [&](Elem x, Elem y) { return b.ip_t(y, x) != T.inv(b.ip_t(x, y)); });
    for (Elem x = 0; x < m; ++x)
        if (b.ract(x, b.ip_t(x, x)) != x) fail(ErrorKind::BA6Failed, "x[x,x] != x", {x});
    require_triple(ErrorKind::BA7Failed, "<x,y>z != x[y,z]", m, m, m,
                   [&](Elem x, Elem y, Elem z) { return b.lact(b.ip_s(x, y), z) != b.ract(x, b.ip_t(y, z)); });

    // Consequences of BA1-BA7; a failure here means the checks above are wrong.
    const auto law = ErrorKind::BiactionLawFailed;
    require_triple(law, "<x,sy> != <x,y>s^-1", m, ns, m,
                   [&](Elem x, Elem a, Elem y) { return b.ip_s(x, b.lact(a, y)) != S.mul(b.ip_s(x, y), S.inv(a)); });
    require_triple(law, "[xt,y] != t^-1[x,y]", m, nt, m,
                   [&](Elem x, Elem c, Elem y) { return b.ip_t(b.ract(x, c), y) != T.mul(T.inv(c), b.ip_t(x, y)); });
    require_triple(law, "<xt,y> != <x,yt^-1>", m, nt, m, [&](Elem x, Elem c, Elem y) {
        return b.ip_s(b.ract(x, c), y) != b.ip_s(x, b.ract(y, T.inv(c)));
    });
    require_triple(law, "[x,sy] != [s^-1x,y]", m, ns, m, [&](Elem x, Elem a, Elem y) {
        return b.ip_t(x, b.lact(a, y)) != b.ip_t(b.lact(S.inv(a), x), y);
    });
    for (Elem x = 0; x < m; ++x) {
        if (!S.is_idempotent(b.p(x))) fail(law, "<x,x> not idempotent", {x});
        if (!T.is_idempotent(b.q(x))) fail(law, "[x,x] not idempotent", {x});
    }
    require_pair(law, "p(sx) != s p(x) s^-1", ns, m,
                 [&](Elem a, Elem x) { return b.p(b.lact(a, x)) != S.mul(a, b.p(x), S.inv(a)); });
    require_pair(law, "q(xt) != t^-1 q(x) t", m, nt,
                 [&](Elem x, Elem c) { return b.q(b.ract(x, c)) != T.mul(T.inv(c), b.q(x), c); });
    require_pair(law, "idempotent inner products without compatibility", m, m, [&](Elem x, Elem y) {
        return S.is_idempotent(b.ip_s(x, y)) && T.is_idempotent(b.ip_t(x, y)) && !b.compatible(x, y);
    });
    require_pair(law, "q(x)[x,y] != [x,y]", m, m,
                 [&](Elem x, Elem y) { return T.mul(b.q(x), b.ip_t(x, y)) != b.ip_t(x, y); });
    require_pair(law, "p(x)<x,y> != <x,y>", m, m,
                 [&](Elem x, Elem y) { return S.mul(b.p(x), b.ip_s(x, y)) != b.ip_s(x, y); });
    require_pair(law, "left and right orders differ", m, m,
                 [&](Elem x, Elem y) { return (b.lact(b.p(x), y) == x) != (b.ract(y, b.q(x)) == x); });

    Bits im_s(ns), im_t(nt);
    for (Elem x = 0; x < m; ++x)
        for (Elem y = 0; y < m; ++y) {
            im_s.set(b.ip_s(x, y));
            im_t.set(b.ip_t(x, y));
        }
    im_s.for_each([&](Elem v) {
        for (Elem a = 0; a < ns; ++a)
            if (!im_s.test(S.mul(a, v)) || !im_s.test(S.mul(v, a))) fail(law, "image of <,> is not an ideal", {v, a});
    });
    im_t.for_each([&](Elem v) {
        for (Elem a = 0; a < nt; ++a)
            if (!im_t.test(T.mul(a, v)) || !im_t.test(T.mul(v, a))) fail(law, "image of [,] is not an ideal", {v, a});
    });
    return b;
}

EquivalenceBimodule EquivalenceBimodule::verify(PseudogroupPtr s, PseudogroupPtr t, Biaction b) {
    if (!s || !t) fail(ErrorKind::BadInput, "bimodule needs both pseudogroups");
    if (s->S().table() != b.S().table() || t->S().table() != b.T().table())
        fail(ErrorKind::BadInput, "biaction semigroups differ from the given pseudogroups");
    EquivalenceBimodule eb(std::move(s), std::move(t), std::move(b));
    const auto& B = eb.b_;
    const Pseudogroup& PS = *eb.s_;
    const Pseudogroup& PT = *eb.t_;
    const auto& S = PS.S();
    const auto& T = PT.S();
    const std::size_t m = B.size(), ns = S.size(), nt = T.size();

    eb.below_.assign(m, Bits(m));
    for (Elem x = 0; x < m; ++x)
        for (Elem y = 0; y < m; ++y)
            if (B.leq(x, y)) eb.below_[y].set(x);

    Elem zero = npos;
    for (Elem x = 0; x < m && zero == npos; ++x) {
        bool bottom = true;
        for (Elem y = 0; y < m && bottom; ++y) bottom = eb.below_[y].test(x);
        if (bottom) zero = x;
    }
    if (zero == npos) fail(ErrorKind::JoinMissing, "no bottom element (join of the empty set)");
    eb.zero_ = zero;

    eb.join_.assign(m * m, npos);
    for (Elem x = 0; x < m; ++x)
        for (Elem y = x; y < m; ++y) {
            if (!B.compatible(x, y)) continue;
            Elem lub = npos;
            for (Elem j = 0; j < m && lub == npos; ++j) {
                if (!eb.below_[j].test(x) || !eb.below_[j].test(y)) continue;
                bool least = true;
                for (Elem k = 0; k < m && least; ++k)
                    if (eb.below_[k].test(x) && eb.below_[k].test(y) && !eb.below_[k].test(j)) least = false;
                if (least) lub = j;
            }
            if (lub == npos) fail(ErrorKind::JoinMissing, "compatible pair without a join", {x, y});
            eb.join_[x * m + y] = eb.join_[y * m + x] = lub;
        }

    const auto dist = ErrorKind::DistributivityFails;
    auto jx = [&](Elem x, Elem y) { return eb.join_[x * m + y]; };
    require_triple(dist, "s(x v y) != sx v sy", ns, m, m, [&](Elem a, Elem x, Elem y) {
        return jx(x, y) != npos && B.lact(a, jx(x, y)) != jx(B.lact(a, x), B.lact(a, y));
    });
    require_triple(dist, "(x v y)t != xt v yt", nt, m, m, [&](Elem c, Elem x, Elem y) {
        return jx(x, y) != npos && B.ract(jx(x, y), c) != jx(B.ract(x, c), B.ract(y, c));
    });
    require_triple(dist, "(s v s')x != sx v s'x", m, ns, ns, [&](Elem x, Elem a, Elem a2) {
        Elem j = PS.join(a, a2);
        return j != npos && B.lact(j, x) != jx(B.lact(a, x), B.lact(a2, x));
    });
    require_triple(dist, "x(t v t') != xt v xt'", m, nt, nt, [&](Elem x, Elem c, Elem c2) {
        Elem j = PT.join(c, c2);
        return j != npos && B.ract(x, j) != jx(B.ract(x, c), B.ract(x, c2));
    });
    require_triple(dist, "<x v x',y> != <x,y> v <x',y>", m, m, m, [&](Elem x, Elem x2, Elem y) {
        Elem j = jx(x, x2);
        return j != npos && B.ip_s(j, y) != PS.join(B.ip_s(x, y), B.ip_s(x2, y));
    });
    require_triple(dist, "[y,x v x'] != [y,x] v [y,x']", m, m, m, [&](Elem y, Elem x, Elem x2) {
        Elem j = jx(x, x2);
        return j != npos && B.ip_t(y, j) != PT.join(B.ip_t(y, x), B.ip_t(y, x2));
    });
    for (Elem y = 0; y < m; ++y) {
        if (B.ip_s(zero, y) != PS.zero()) fail(dist, "<0,y> != 0", {y});
        if (B.ip_t(y, zero) != PT.zero()) fail(dist, "[y,0] != 0", {y});
    }

    Elem cover_s = PS.zero(), cover_t = PT.zero();
    for (Elem x = 0; x < m; ++x) {
        cover_s = PS.join(cover_s, B.p(x));
        cover_t = PT.join(cover_t, B.q(x));
    }
    Bits im_s(ns), im_t(nt);
    for (Elem x = 0; x < m; ++x)
        for (Elem y = 0; y < m; ++y) {
            im_s.set(B.ip_s(x, y));
            im_t.set(B.ip_t(x, y));
        }
    bool ideal_s = PS.join_closure(im_s) == Bits::full(ns);
    bool ideal_t = PT.join_closure(im_t) == Bits::full(nt);
    if (ideal_s != (cover_s == PS.top()))
        fail(ErrorKind::EquivalenceMismatch, "left covering and ideal image disagree", {cover_s});
    if (ideal_t != (cover_t == PT.top()))
        fail(ErrorKind::EquivalenceMismatch, "right covering and ideal image disagree", {cover_t});
    if (cover_s != PS.top())
        fail(ErrorKind::CoveringFailsLeft, "join of left supports is not e_S", {cover_s, PS.top()});
    if (cover_t != PT.top())
        fail(ErrorKind::CoveringFailsRight, "join of right supports is not e_T", {cover_t, PT.top()});
    return eb;
}

Elem EquivalenceBimodule::join_of(const Bits& xs) const {
    Elem acc = zero_;
    bool ok = true;
    xs.for_each([&](Elem x) {
        if (!ok) return;
        Elem j = join(acc, x);
        if (j == npos) ok = false;
        else acc = j;
    });
    if (!ok) fail(ErrorKind::NotCompatible, "join of an incompatible set in the bimodule");
    return acc;
}

Biaction dual(const Biaction& b) {
    const std::size_t m = b.size(), ns = b.S().size(), nt = b.T().size();
    BiactionTables t;
    t.s = b.T_ptr();
    t.t = b.S_ptr();
    t.x_size = m;
    t.lact.resize(nt * m);
    t.ract.resize(m * ns);
    t.inner_s.resize(m * m);
    t.inner_t.resize(m * m);
    for (Elem c = 0; c < nt; ++c)
        for (Elem x = 0; x < m; ++x) t.lact[c * m + x] = b.ract(x, b.T().inv(c));
    for (Elem x = 0; x < m; ++x)
        for (Elem a = 0; a < ns; ++a) t.ract[x * ns + a] = b.lact(b.S().inv(a), x);
    for (Elem x = 0; x < m; ++x)
        for (Elem y = 0; y < m; ++y) {
            t.inner_s[x * m + y] = b.ip_t(x, y);
            t.inner_t[x * m + y] = b.ip_s(x, y);
        }
    return Biaction::verify(std::move(t));
}

EquivalenceBimodule dual(const EquivalenceBimodule& b) {
    return EquivalenceBimodule::verify(b.T_ptr(), b.S_ptr(), dual(b.base()));
}

void check_biaction_iso(const Biaction& a, const Biaction& b, const std::vector<Elem>& phi_s,
                        const std::vector<Elem>& phi_t, const std::vector<Elem>& psi) {
    const std::size_t m = a.size();
    if (b.size() != m || psi.size() != m) fail(ErrorKind::NotIsomorphic, "carrier sizes differ");
    std::vector<bool> hit(m, false);
    for (Elem x = 0; x < m; ++x) {
        if (psi[x] >= m || hit[psi[x]]) fail(ErrorKind::NotIsomorphic, "map is not a bijection", {x});
        hit[psi[x]] = true;
    }
    for (Elem s = 0; s < a.S().size(); ++s)
        for (Elem x = 0; x < m; ++x)
            if (psi[a.lact(s, x)] != b.lact(phi_s[s], psi[x]))
                fail(ErrorKind::NotIsomorphic, "left action not preserved", {s, x});
    for (Elem x = 0; x < m; ++x)
        for (Elem t = 0; t < a.T().size(); ++t)
            if (psi[a.ract(x, t)] != b.ract(psi[x], phi_t[t]))
                fail(ErrorKind::NotIsomorphic, "right action not preserved", {x, t});
    for (Elem x = 0; x < m; ++x)
        for (Elem y = 0; y < m; ++y) {
            if (phi_s[a.ip_s(x, y)] != b.ip_s(psi[x], psi[y]))
                fail(ErrorKind::NotIsomorphic, "left inner product not preserved", {x, y});
            if (phi_t[a.ip_t(x, y)] != b.ip_t(psi[x], psi[y]))
                fail(ErrorKind::NotIsomorphic, "right inner product not preserved", {x, y});
        }
}

std::optional<std::vector<Elem>> find_biaction_iso(const Biaction& a, const Biaction& b,
                                                   const std::vector<Elem>& phi_s, const std::vector<Elem>& phi_t) {
    const std::size_t m = a.size();
    if (b.size() != m) return std::nullopt;
    std::vector<Elem> psi(m, npos);
    std::vector<bool> used(m, false);
    // Assigning x commits the inner products with every earlier element.
    auto consistent = [&](Elem x) {
        for (Elem y = 0; y <= x; ++y) {
            if (phi_s[a.ip_s(x, y)] != b.ip_s(psi[x], psi[y])) return false;
            if (phi_s[a.ip_s(y, x)] != b.ip_s(psi[y], psi[x])) return false;
            if (phi_t[a.ip_t(x, y)] != b.ip_t(psi[x], psi[y])) return false;
            if (phi_t[a.ip_t(y, x)] != b.ip_t(psi[y], psi[x])) return false;
        }
        return true;
    };
    auto search = [&](auto&& self, Elem x) -> bool {
        if (x == m) {
            try {
                check_biaction_iso(a, b, phi_s, phi_t, psi);
                return true;
            } catch (const Error&) {
                return false;
            }
        }
        for (Elem c = 0; c < m; ++c) {
            if (used[c]) continue;
            psi[x] = c;
            used[c] = true;
            if (consistent(x) && self(self, x + 1)) return true;
            used[c] = false;
        }
        psi[x] = npos;
        return false;
    };
    if (search(search, 0)) return psi;
    return std::nullopt;
}

}  // namespace morita
