#include "morita/enlargement.hpp"

#include <algorithm>
#include <array>
#include <string>

#include "morita/errors.hpp"
#include "morita/hash.hpp"
#include "morita/kernels.hpp"

namespace morita {

LocalPseudogroup local_pseudogroup(const PseudogroupPtr& u, Elem e) {
    const auto& U = u->S();
    const std::size_t n = U.size();
    if (e >= n || !U.is_idempotent(e)) fail(ErrorKind::BadInput, "corner needs an idempotent", {e});
    LocalPseudogroup l;
    l.local.assign(n, npos);
    Bits in(n);
    for (Elem a = 0; a < n; ++a) in.set(U.mul(e, a, e));
    in.for_each([&](Elem a) {
        l.local[a] = l.index.size();
        l.index.push_back(a);
    });
    const std::size_t k = l.index.size();
    RawTable raw;
    raw.n = k;
    raw.mult.resize(k * k);
    for (Elem i = 0; i < k; ++i)
        for (Elem j = 0; j < k; ++j) raw.mult[i * k + j] = l.local[U.mul(l.index[i], l.index[j])];
    raw.zero = l.local[u->zero()];
    raw.identity = l.local[e];
    for (Elem a : l.index) raw.names.push_back(U.name(a));
    l.p = Pseudogroup::make(InverseSemigroup::validate(std::move(raw)));
    return l;
}

EnlargementReport check_sup_enlargement(const PseudogroupPtr& u, Elem e) {
    const auto& U = u->S();
    const std::size_t n = U.size();
    EnlargementReport rep;
    rep.e = e;
    rep.s = local_pseudogroup(u, e);
    const auto& idx = rep.s.index;
    const auto& loc = rep.s.local;
    const std::size_t k = idx.size();

    // E1, SUS ⊆ S
    auto esc = first_triple(k, n, k, [&](std::size_t a, std::size_t t, std::size_t b) {
        return loc[U.mul(idx[a], t, idx[b])] == npos;
    });
    if (esc) fail(ErrorKind::E1Fails, "a·t·b leaves eUe", {idx[(*esc)[0]], (*esc)[1], idx[(*esc)[2]]});
    // E1, S ⊆ SUS: first factorization of each element in (a,t,b) order
    rep.e1.assign(k, Factorization{npos, npos, npos});
    std::size_t left = k;
    for (Elem a = 0; a < k && left; ++a)
        for (Elem t = 0; t < n && left; ++t)
            for (Elem b = 0; b < k && left; ++b) {
                Elem v = loc[U.mul(idx[a], t, idx[b])];
                if (rep.e1[v].a == npos) {
                    rep.e1[v] = {idx[a], t, idx[b]};
                    --left;
                }
            }
    for (Elem i = 0; i < k; ++i)
        if (rep.e1[i].a == npos) fail(ErrorKind::E1Fails, "element of eUe not in SUS", {idx[i]});

    // order-ideal, and d(t), r(t) ∈ S ⟹ t ∈ S
    for (Elem s : idx) {
        Elem out = npos;
        U.below(s).for_each([&](Elem t) {
            if (out == npos && loc[t] == npos) out = t;
        });
        if (out != npos) fail(ErrorKind::EnlargementLawFailed, "eUe is not an order-ideal", {1, s, out});
    }
    for (Elem t = 0; t < n; ++t)
        if (loc[U.d(t)] != npos && loc[U.r(t)] != npos && loc[t] == npos)
            fail(ErrorKind::EnlargementLawFailed, "d(t), r(t) in eUe but t is not", {2, t});

    // E2
    std::vector<std::array<Elem, 2>> lf(n, {npos, npos});
    for (Elem a = 0; a < n; ++a)
        for (Elem s : idx) {
            Elem v = U.mul(a, s);
            if (lf[v][0] == npos) lf[v] = {a, s};
        }
    std::vector<Factorization> fac(n, Factorization{npos, npos, npos});
    for (Elem v = 0; v < n; ++v) {
        if (lf[v][0] == npos) continue;
        for (Elem b = 0; b < n; ++b) {
            Elem w = U.mul(v, b);
            if (fac[w].a == npos) fac[w] = {lf[v][0], lf[v][1], b};
        }
    }
    Bits prod(n);
    for (Elem w = 0; w < n; ++w)
        if (fac[w].a != npos) prod.set(w);
    rep.e2.resize(n);
    for (Elem w = 0; w < n; ++w) {
        Bits under = U.below(w) & prod;
        if (under.none() || u->join_of(under) != w) fail(ErrorKind::E2Fails, "not a join of products from USU", {w});
        under.for_each([&](Elem p) {
            bool maximal = true;
            under.for_each([&](Elem q) {
                if (q != p && U.natural_leq(p, q)) maximal = false;
            });
            if (maximal) rep.e2[w].push_back(fac[p]);
        });
    }
    return rep;
}

EnlargementBimodule bimodule_from_enlargement(const PseudogroupPtr& u, Elem e, Elem f) {
    const auto& U = u->S();
    auto ls = local_pseudogroup(u, e);
    auto lt = local_pseudogroup(u, f);
    const std::size_t n = U.size();
    std::vector<Elem> xl(n, npos), xs;
    Bits in(n);
    for (Elem a = 0; a < n; ++a) in.set(U.mul(e, a, f));
    in.for_each([&](Elem a) {
        xl[a] = xs.size();
        xs.push_back(a);
    });
    const std::size_t k = xs.size(), ns = ls.index.size(), nt = lt.index.size();
    BiactionTables tb;
    tb.s = semigroup_of(ls.p);
    tb.t = semigroup_of(lt.p);
    tb.x_size = k;
    tb.lact.resize(ns * k);
    tb.ract.resize(k * nt);
    tb.inner_s.resize(k * k);
    tb.inner_t.resize(k * k);
    for (Elem a = 0; a < ns; ++a)
        for (Elem x = 0; x < k; ++x) tb.lact[a * k + x] = xl[U.mul(ls.index[a], xs[x])];
    for (Elem x = 0; x < k; ++x)
        for (Elem c = 0; c < nt; ++c) tb.ract[x * nt + c] = xl[U.mul(xs[x], lt.index[c])];
    for (Elem x = 0; x < k; ++x)
        for (Elem y = 0; y < k; ++y) {
            tb.inner_s[x * k + y] = ls.local[U.mul(xs[x], U.inv(xs[y]))];
            tb.inner_t[x * k + y] = lt.local[U.mul(U.inv(xs[x]), xs[y])];
        }
    auto bi = Biaction::verify(std::move(tb));
    auto eb = EquivalenceBimodule::verify(ls.p, lt.p, std::move(bi));
    return EnlargementBimodule{std::move(ls), std::move(lt), std::move(xs), std::move(eb)};
}

namespace {

// 0 on success, else 1 + index of the entry whose join is undefined.
int try_product(const EquivalenceBimodule& b, const RookMatrix& m, const RookMatrix& n, RookMatrix& out) {
    const auto& PS = b.S();
    const auto& PT = b.T();
    const auto& S = PS.S();
    const auto& T = PT.S();
    const auto& B = b.base();
    out.s = PS.join(S.mul(m.s, n.s), B.ip_s(m.x, n.y));
    if (out.s == npos) return 1;
    out.x = b.join(B.lact(m.s, n.x), B.ract(m.x, n.t));
    if (out.x == npos) return 2;
    out.y = b.join(B.lact(S.inv(n.s), m.y), B.ract(n.y, T.inv(m.t)));
    if (out.y == npos) return 3;
    out.t = PT.join(B.ip_t(m.y, n.x), T.mul(m.t, n.t));
    if (out.t == npos) return 4;
    return 0;
}

struct Quads {
    std::size_t ns, nx, nt;
    std::size_t key(const RookMatrix& m) const { return ((m.s * nx + m.x) * nx + m.y) * nt + m.t; }
};

}  // namespace

bool satisfies_rook(const EquivalenceBimodule& b, const RookMatrix& m) {
    const auto& B = b.base();
    const Elem z = b.zero();
    return B.lact(b.S().S().inv(m.s), m.x) == z && B.ract(m.y, m.t) == z && B.lact(m.s, m.y) == z &&
           B.ract(m.x, b.T().S().inv(m.t)) == z;
}

RookMatrix rook_product(const EquivalenceBimodule& b, const RookMatrix& m, const RookMatrix& n) {
    RookMatrix out;
    if (int bad = try_product(b, m, n, out))
        fail(ErrorKind::JoinUndefined, "matrix product entry join undefined", {static_cast<std::size_t>(bad)});
    return out;
}

Enlargement enlarge_from_bimodule(const EquivalenceBimodule& b, std::size_t max_quadruples) {
    const auto& PS = b.S();
    const auto& PT = b.T();
    const auto& S = PS.S();
    const auto& T = PT.S();
    const auto& B = b.base();
    const Quads q{S.size(), b.size(), T.size()};
    const std::size_t total = q.ns * q.nx * q.nx * q.nt;
    if (total > max_quadruples) fail(ErrorKind::TooLarge, "too many quadruples", {total, max_quadruples});

    // filter S×X×X×T per s
    std::vector<std::vector<RookMatrix>> parts(q.ns);
    for_each_index(q.ns, [&](std::size_t s) {
        for (Elem x = 0; x < q.nx; ++x)
            for (Elem y = 0; y < q.nx; ++y)
                for (Elem t = 0; t < q.nt; ++t) {
                    RookMatrix m{s, x, y, t};
                    if (satisfies_rook(b, m)) parts[s].push_back(m);
                }
    });
    Enlargement en;
    for (auto& p : parts) en.matrices.insert(en.matrices.end(), p.begin(), p.end());
    const auto& M = en.matrices;
    const std::size_t n = M.size();
    std::vector<Elem> index(total, npos);
    for (Elem i = 0; i < n; ++i) index[q.key(M[i])] = i;
    auto find = [&](const RookMatrix& m) { return index[q.key(m)]; };

    // product table; per row the first failure as {j, code}
    RawTable raw;
    raw.n = n;
    raw.mult.assign(n * n, npos);
    std::vector<std::array<std::size_t, 2>> row_fail(n, {npos, 0});
    for_each_index(n, [&](std::size_t i) {
        for (Elem j = 0; j < n; ++j) {
            RookMatrix out;
            if (int bad = try_product(b, M[i], M[j], out)) {
                row_fail[i] = {j, static_cast<std::size_t>(bad)};
                return;
            }
            Elem k = satisfies_rook(b, out) ? find(out) : npos;
            if (k == npos) {
                row_fail[i] = {j, 0};
                return;
            }
            raw.mult[i * n + j] = k;
        }
    });
    for (Elem i = 0; i < n; ++i) {
        auto [j, code] = row_fail[i];
        if (j == npos) continue;
        if (code) fail(ErrorKind::JoinUndefined, "matrix product entry join undefined", {i, j, code});
        fail(ErrorKind::EnlargementLawFailed, "product breaks the rook conditions", {0, i, j});
    }

    std::vector<Elem> inv(n);
    for (Elem i = 0; i < n; ++i) {
        const auto& m = M[i];
        RookMatrix v{S.inv(m.s), m.y, m.x, T.inv(m.t)};
        inv[i] = satisfies_rook(b, v) ? find(v) : npos;
        if (inv[i] == npos) fail(ErrorKind::EnlargementLawFailed, "involution breaks the rook conditions", {3, i});
    }

    const Elem xz = b.zero(), sz = PS.zero(), tz = PT.zero();
    auto diag_s = [&](Elem a) { return find({a, xz, xz, tz}); };
    auto diag_t = [&](Elem c) { return find({sz, xz, xz, c}); };
    auto row_x = [&](Elem x) { return find({sz, x, xz, tz}); };
    auto col_y = [&](Elem y) { return find({sz, xz, y, tz}); };

    raw.zero = find({sz, xz, xz, tz});
    raw.identity = find({PS.top(), xz, xz, PT.top()});
    for (const auto& m : M)
        raw.names.push_back("[" + S.name(m.s) + "|x" + std::to_string(m.x) + "|y" + std::to_string(m.y) + "~|" +
                            T.name(m.t) + "]");
    en.u = Pseudogroup::make(InverseSemigroup::validate(std::move(raw)));
    const auto& U = en.u->S();

    for (Elem i = 0; i < n; ++i) {
        if (U.inv(i) != inv[i]) fail(ErrorKind::EnlargementLawFailed, "inverse is not the matrix involution", {3, i});
        const auto& m = M[i];
        RookMatrix rr{PS.join(S.r(m.s), B.p(m.x)), xz, xz, PT.join(B.q(m.y), T.r(m.t))};
        if (rr.s == npos || rr.t == npos || U.r(i) != find(rr))
            fail(ErrorKind::EnlargementLawFailed, "m·m⁻¹ is not the diagonal formula", {4, i});
        bool diagonal = m.x == xz && m.y == xz && S.is_idempotent(m.s) && T.is_idempotent(m.t);
        if (U.is_idempotent(i) != diagonal)
            fail(ErrorKind::EnlargementLawFailed, "idempotents are not the diagonal pairs", {5, i});
    }
    for (Elem i = 0; i < n; ++i)
        for (Elem j = i + 1; j < n; ++j) {
            Elem k = en.u->join(i, j);
            if (k == npos) continue;
            RookMatrix c{PS.join(M[i].s, M[j].s), b.join(M[i].x, M[j].x), b.join(M[i].y, M[j].y),
                         PT.join(M[i].t, M[j].t)};
            if (c.s == npos || c.x == npos || c.y == npos || c.t == npos || find(c) != k)
                fail(ErrorKind::EnlargementLawFailed, "join is not componentwise", {6, i, j});
        }

    // the four schemas: each entry of a matrix comes from U·S'·U
    for (Elem y = 0; y < q.nx; ++y)
        if (U.mul(col_y(y), diag_s(B.p(y))) != col_y(y))
            fail(ErrorKind::EnlargementLawFailed, "ȳ ≠ ȳ·⟨y,y⟩", {7, 2, y});
    for (Elem x = 0; x < q.nx; ++x)
        if (U.mul(diag_s(B.p(x)), row_x(x)) != row_x(x))
            fail(ErrorKind::EnlargementLawFailed, "x ≠ ⟨x,x⟩·x", {7, 3, x});
    for (Elem a = 0; a < q.nx; ++a)
        for (Elem c = 0; c < q.nx; ++c)
            if (U.mul(col_y(a), diag_s(B.p(a)), row_x(c)) != diag_t(B.ip_t(a, c)))
                fail(ErrorKind::EnlargementLawFailed, "[u,v] ≠ ū·⟨u,u⟩·v", {7, 4, a, c});
    for (Elem i = 0; i < n; ++i) {
        const auto& m = M[i];
        Elem acc = en.u->join(diag_s(m.s), row_x(m.x));
        if (acc != npos) acc = en.u->join(acc, col_y(m.y));
        if (acc != npos) acc = en.u->join(acc, diag_t(m.t));
        if (acc != i) fail(ErrorKind::EnlargementLawFailed, "matrix is not the join of its entries", {7, 1, i});
    }

    en.e_s = diag_s(PS.top());
    en.e_t = diag_t(PT.top());
    en.embed_s.resize(q.ns);
    en.embed_t.resize(q.nt);
    for (Elem a = 0; a < q.ns; ++a) en.embed_s[a] = diag_s(a);
    for (Elem c = 0; c < q.nt; ++c) en.embed_t[c] = diag_t(c);
    auto check_corner = [&](const std::vector<Elem>& emb, const InverseSemigroup& A, Elem e, std::size_t side) {
        auto l = local_pseudogroup(en.u, e);
        auto sorted = emb;
        std::sort(sorted.begin(), sorted.end());
        if (sorted != l.index) fail(ErrorKind::NotIsomorphic, "corner differs from the embedded copy", {side});
        for (Elem a = 0; a < A.size(); ++a) {
            if (U.inv(emb[a]) != emb[A.inv(a)]) fail(ErrorKind::NotIsomorphic, "embedding breaks inverse", {side, a});
            for (Elem c = 0; c < A.size(); ++c)
                if (U.mul(emb[a], emb[c]) != emb[A.mul(a, c)])
                    fail(ErrorKind::NotIsomorphic, "embedding breaks products", {side, a, c});
        }
    };
    check_corner(en.embed_s, S, en.e_s, 0);
    check_corner(en.embed_t, T, en.e_t, 1);

    en.s_report = check_sup_enlargement(en.u, en.e_s);
    en.t_report = check_sup_enlargement(en.u, en.e_t);
    return en;
}

std::vector<Elem> round_trip_iso(const EquivalenceBimodule& b, const Enlargement& en, const EnlargementBimodule& back) {
    const auto& M = en.matrices;
    std::vector<Elem> phi_s(en.embed_s.size()), phi_t(en.embed_t.size()), psi(b.size(), npos);
    for (Elem a = 0; a < phi_s.size(); ++a) phi_s[a] = back.s.local[en.embed_s[a]];
    for (Elem c = 0; c < phi_t.size(); ++c) phi_t[c] = back.t.local[en.embed_t[c]];
    std::vector<Elem> xl(M.size(), npos);
    for (Elem i = 0; i < back.x_index.size(); ++i) xl[back.x_index[i]] = i;
    for (Elem x = 0; x < b.size(); ++x) {
        RookMatrix r{b.S().zero(), x, b.zero(), b.T().zero()};
        auto it = std::lower_bound(M.begin(), M.end(), r);
        if (it == M.end() || *it != r) fail(ErrorKind::NotIsomorphic, "x has no matrix", {x});
        psi[x] = xl[static_cast<Elem>(it - M.begin())];
        if (psi[x] == npos) fail(ErrorKind::NotIsomorphic, "matrix of x outside e_S·U·e_T", {x});
    }
    check_biaction_iso(b.base(), back.bimodule.base(), phi_s, phi_t, psi);
    return psi;
}

std::uint64_t bimodule_hash(const Biaction& b) {
    Fnv1a h;
    h.add_all(b.S().table());
    h.add_all(b.T().table());
    const auto& t = b.tables();
    h.add(static_cast<std::uint64_t>(t.x_size));
    h.add_all(t.lact);
    h.add_all(t.ract);
    h.add_all(t.inner_s);
    h.add_all(t.inner_t);
    return h.value();
}

Certificate joint_equivalence(PseudogroupPtr s, PseudogroupPtr t, const Biaction& b, std::size_t max_quadruples) {
    auto eb = EquivalenceBimodule::verify(std::move(s), std::move(t), b);
    Certificate c;
    c.s_size = eb.S().size();
    c.t_size = eb.T().size();
    c.x_size = eb.size();
    c.bimodule_hash = bimodule_hash(b);
    c.enlargement = enlarge_from_bimodule(eb, max_quadruples);
    c.u_size = c.enlargement.u->size();
    auto back = bimodule_from_enlargement(c.enlargement.u, c.enlargement.e_s, c.enlargement.e_t);
    c.round_trip = round_trip_iso(eb, c.enlargement, back);
    return c;
}

}  // namespace morita
