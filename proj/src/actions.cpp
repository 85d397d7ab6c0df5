#include "morita/actions.hpp"

#include <algorithm>
#include <array>
#include <unordered_map>
#include <unordered_set>

#include "morita/errors.hpp"
#include "morita/kernels.hpp"

namespace morita {

SupportedAction SupportedAction::validate(ActionData d) {
    if (!d.s) fail(ErrorKind::BadInput, "action has no semigroup");
    const InverseSemigroup& S = *d.s;
    const std::size_t m = S.size(), n = d.x_size;
    if (n == 0) fail(ErrorKind::BadInput, "action on the empty set");
    if (d.act.size() != m * n) fail(ErrorKind::BadTable, "action table has the wrong size", {d.act.size(), m * n});
    if (d.support.size() != n) fail(ErrorKind::BadTable, "support has the wrong length", {d.support.size(), n});
    for (std::size_t i = 0; i < d.act.size(); ++i)
        if (d.act[i] >= n) fail(ErrorKind::BadTable, "action value out of range", {i / n, i % n});
    for (std::size_t x = 0; x < n; ++x)
        if (d.support[x] >= m || !S.is_idempotent(d.support[x]))
            fail(ErrorKind::BadTable, "support value is not an idempotent", {x});
    if (!d.names.empty() && d.names.size() != n) fail(ErrorKind::BadTable, "names have the wrong length");

    SupportedAction a(std::move(d));
    if (auto t = first_triple(m, m, n, [&](Elem s, Elem u, Elem x) {
            return a.act(S.mul(s, u), x) != a.act(s, a.act(u, x));
        }))
        fail(ErrorKind::NotAction, "(st)x differs from s(tx)", {(*t)[0], (*t)[1], (*t)[2]});
    for (Elem x = 0; x < n; ++x)
        if (a.act(a.p(x), x) != x) fail(ErrorKind::SupportLaw1Failed, "p(x)x differs from x", {x});
    if (auto w = first_pair(m, n, [&](Elem s, Elem x) { return a.p(a.act(s, x)) != S.mul(s, a.p(x), S.inv(s)); }))
        fail(ErrorKind::SupportLaw2Failed, "p(sx) differs from s p(x) s^-1", {(*w)[0], (*w)[1]});

    a.below_.assign(n, Bits(n));
    for (Elem y = 0; y < n; ++y)
        for (Elem x = 0; x < n; ++x)
            if (a.act(a.p(x), y) == x) a.below_[y].set(x);
    for (Elem y = 0; y < n; ++y) {
        Bits by_e(n);
        for (Elem e : S.idempotents()) by_e.set(a.act(e, y));
        if (by_e != a.below_[y]) {
            Elem x = (by_e - a.below_[y]).any() ? (by_e - a.below_[y]).first() : (a.below_[y] - by_e).first();
            fail(ErrorKind::OrderMismatch, "x = p(x)y and x = ey disagree", {x, y});
        }
    }

    if (auto z0 = S.zero()) {
        Elem c = a.act(*z0, 0);
        bool ok = true;
        for (Elem x = 0; x < n && ok; ++x) ok = a.act(*z0, x) == c && a.below_[x].test(c);
        for (Elem s = 0; s < m && ok; ++s) ok = a.act(s, c) == c;
        if (ok) a.zero_ = c;
    }
    return a;
}

std::string SupportedAction::name(Elem x) const {
    if (!d_.names.empty()) return d_.names[x];
    return std::to_string(x);
}

Bits SupportedAction::act_set(Elem s, const Bits& xs) const {
    Bits out(size());
    xs.for_each([&](std::size_t x) { out.set(act(s, x)); });
    return out;
}

ActionData right_as_left(SemigroupPtr s, std::size_t x_size, const std::vector<Elem>& ract,
                         std::vector<Elem> support) {
    const std::size_t m = s->size();
    if (ract.size() != m * x_size) fail(ErrorKind::BadTable, "right action table has the wrong size");
    ActionData d;
    d.x_size = x_size;
    d.act.resize(m * x_size);
    for (Elem a = 0; a < m; ++a)
        for (Elem x = 0; x < x_size; ++x) d.act[a * x_size + x] = ract[x * m + s->inv(a)];
    d.support = std::move(support);
    d.s = std::move(s);
    return d;
}

namespace {

std::vector<Elem> positions(const Bits& ideal, std::vector<Elem>& elems) {
    elems = ideal.elements();
    std::vector<Elem> pos(ideal.size(), npos);
    for (std::size_t i = 0; i < elems.size(); ++i) pos[elems[i]] = i;
    return pos;
}

}  // namespace

ActionData left_ideal_action(SemigroupPtr s, const Bits& ideal) {
    const InverseSemigroup& S = *s;
    std::vector<Elem> el;
    auto pos = positions(ideal, el);
    ActionData d;
    d.x_size = el.size();
    d.act.resize(S.size() * el.size());
    for (Elem a = 0; a < S.size(); ++a)
        for (std::size_t i = 0; i < el.size(); ++i) {
            Elem v = pos[S.mul(a, el[i])];
            if (v == npos) fail(ErrorKind::BadInput, "subset is not a left ideal", {a, el[i]});
            d.act[a * el.size() + i] = v;
        }
    for (Elem x : el) {
        d.support.push_back(S.r(x));
        d.names.push_back(S.name(x));
    }
    d.s = std::move(s);
    return d;
}

ActionData right_ideal_action(SemigroupPtr s, const Bits& ideal) {
    const InverseSemigroup& S = *s;
    std::vector<Elem> el;
    auto pos = positions(ideal, el);
    std::vector<Elem> ract(el.size() * S.size());
    std::vector<Elem> support;
    for (std::size_t i = 0; i < el.size(); ++i) {
        for (Elem a = 0; a < S.size(); ++a) {
            Elem v = pos[S.mul(el[i], a)];
            if (v == npos) fail(ErrorKind::BadInput, "subset is not a right ideal", {el[i], a});
            ract[i * S.size() + a] = v;
        }
        support.push_back(S.d(el[i]));
    }
    auto d = right_as_left(s, el.size(), ract, std::move(support));
    for (Elem x : el) d.names.push_back(S.name(x));
    return d;
}

ActionData idempotent_action(SemigroupPtr s) {
    const InverseSemigroup& S = *s;
    const auto& idem = S.idempotents();
    std::vector<Elem> pos(S.size(), npos);
    for (std::size_t i = 0; i < idem.size(); ++i) pos[idem[i]] = i;
    ActionData d;
    d.x_size = idem.size();
    d.act.resize(S.size() * idem.size());
    for (Elem a = 0; a < S.size(); ++a)
        for (std::size_t i = 0; i < idem.size(); ++i) d.act[a * idem.size() + i] = pos[S.mul(a, idem[i], S.inv(a))];
    for (Elem e : idem) {
        d.support.push_back(e);
        d.names.push_back(S.name(e));
    }
    d.s = std::move(s);
    return d;
}

PseudoModule PseudoModule::from(PseudogroupPtr sp, SupportedAction a) {
    const Pseudogroup& P = *sp;
    const InverseSemigroup& S = P.S();
    if (a.S().size() != S.size() || a.S().table() != S.table())
        fail(ErrorKind::BadInput, "action is over a different semigroup");
    if (!a.zero()) fail(ErrorKind::NotPointed, "action has no fixed minimum element");
    const std::size_t n = a.size(), m = S.size();
    PseudoModule md(std::move(sp), std::move(a));
    const SupportedAction& A = md.a_;
    md.zero_ = *A.zero();

    std::vector<Bits> above(n, Bits(n));
    for (Elem y = 0; y < n; ++y) A.below(y).for_each([&](std::size_t x) { above[x].set(y); });
    md.join_.assign(n * n, npos);
    for (Elem x = 0; x < n; ++x)
        for (Elem y = x; y < n; ++y) {
            if (!A.left_compatible(x, y)) continue;
            Bits ub = above[x] & above[y];
            Elem j = npos;
            ub.for_each([&](std::size_t c) {
                if (j == npos && ub.subset_of(above[c])) j = c;
            });
            if (j == npos) fail(ErrorKind::JoinMissing, "left-compatible pair has no join", {x, y});
            md.join_[x * n + y] = md.join_[y * n + x] = j;
        }
    if (auto t = first_triple(n, n, n, [&](Elem x, Elem y, Elem z) {
            return A.left_compatible(x, y) && A.left_compatible(x, z) && A.left_compatible(y, z) &&
                   !A.left_compatible(x, md.join(y, z));
        }))
        fail(ErrorKind::ModuleLawFailed, "compatibility is not inherited by joins", {(*t)[0], (*t)[1], (*t)[2]});
    if (auto t = first_triple(m, n, n, [&](Elem s, Elem x, Elem y) {
            Elem j = md.join(x, y);
            return j != npos && A.act(s, j) != md.join(A.act(s, x), A.act(s, y));
        }))
        fail(ErrorKind::ModuleLawFailed, "action does not distribute over joins in X", {(*t)[0], (*t)[1], (*t)[2]});
    if (auto t = first_triple(m, m, n, [&](Elem s, Elem u, Elem x) {
            Elem j = P.join(s, u);
            return j != npos && A.act(j, x) != md.join(A.act(s, x), A.act(u, x));
        }))
        fail(ErrorKind::ModuleLawFailed, "action does not distribute over joins in S", {(*t)[0], (*t)[1], (*t)[2]});
    for (Elem s = 0; s < m; ++s)
        if (A.act(s, md.zero_) != md.zero_) fail(ErrorKind::ModuleLawFailed, "s0 differs from 0", {s});
    for (Elem x = 0; x < n; ++x)
        if (A.act(P.zero(), x) != md.zero_) fail(ErrorKind::ModuleLawFailed, "0x differs from 0", {x});

    md.meet_.assign(n * n, npos);
    for (Elem x = 0; x < n; ++x)
        for (Elem y = x; y < n; ++y) {
            Elem acc = md.zero_;
            bool ok = true;
            (A.below(x) & A.below(y)).for_each([&](std::size_t z) {
                if (!ok) return;
                acc = md.join(acc, z);
                ok = acc != npos;
            });
            if (!ok) fail(ErrorKind::ModuleLawFailed, "common lower bounds have no join", {x, y});
            md.meet_[x * n + y] = md.meet_[y * n + x] = acc;
        }
    return md;
}

Elem PseudoModule::join_of(const Bits& xs) const {
    auto el = xs.elements();
    for (std::size_t i = 0; i < el.size(); ++i)
        for (std::size_t j = i + 1; j < el.size(); ++j)
            if (!left_compatible(el[i], el[j]))
                fail(ErrorKind::NotCompatible, "join of a non-compatible set", {el[i], el[j]});
    Elem acc = zero_;
    for (Elem x : el) acc = join(acc, x);
    return acc;
}

Witness day_failure(const SupportedAction& a) {
    const auto& S = a.S();
    const std::size_t m = S.size(), n = a.size();
    if (auto t = first_triple(m, n, n, [&](Elem s, Elem x, Elem y) {
            return a.left_compatible(x, y) && !a.left_compatible(a.act(s, x), a.act(s, y));
        }))
        return std::vector<std::size_t>{1, (*t)[0], (*t)[1], (*t)[2]};
    if (auto t = first_triple(m, m, n, [&](Elem s, Elem u, Elem x) {
            return S.left_compatible(s, u) && !a.left_compatible(a.act(s, x), a.act(u, x));
        }))
        return std::vector<std::size_t>{2, (*t)[0], (*t)[1], (*t)[2]};
    return std::nullopt;
}

Witness groucho_failure(const PseudoModule& m) {
    const std::size_t n = m.size();
    if (m.p(m.zero()) != m.S().zero()) return std::vector<std::size_t>{m.zero()};
    if (auto w = first_pair(n, n, [&](Elem x, Elem y) {
            Elem j = m.join(x, y);
            return j != npos && m.p(j) != m.S().join(m.p(x), m.p(y));
        }))
        return std::vector<std::size_t>{(*w)[0], (*w)[1]};
    return std::nullopt;
}

Witness harpo_failure(const PseudoModule& m) {
    const std::size_t n = m.size();
    if (auto w = first_pair(n, n, [&](Elem x, Elem y) {
            Elem g = m.meet(x, y);
            if (!m.leq(g, x) || !m.leq(g, y)) return true;
            for (Elem z = 0; z < n; ++z)
                if (m.leq(z, x) && m.leq(z, y) && !m.leq(z, g)) return true;
            return false;
        }))
        return std::vector<std::size_t>{(*w)[0], (*w)[1]};
    return std::nullopt;
}

Witness zeppo_failure(const PseudoModule& m) {
    const std::size_t n = m.size();
    for (Elem x = 0; x < n; ++x)
        if (m.meet(x, m.zero()) != m.zero()) return std::vector<std::size_t>{x, m.zero()};
    if (auto t = first_triple(n, n, n, [&](Elem x, Elem y, Elem z) {
            Elem j = m.join(y, z);
            return j != npos && m.meet(x, j) != m.join(m.meet(x, y), m.meet(x, z));
        }))
        return std::vector<std::size_t>{(*t)[0], (*t)[1], (*t)[2]};
    return std::nullopt;
}

Witness unital_failure(const PseudoModule& m) {
    for (Elem x = 0; x < m.size(); ++x)
        if (m.act(m.S().top(), x) != x || m.act(m.S().zero(), x) != m.zero()) return std::vector<std::size_t>{x};
    for (Elem s = 0; s < m.S().size(); ++s)
        if (m.act(s, m.zero()) != m.zero()) return std::vector<std::size_t>{s};
    return std::nullopt;
}

void check_module_laws(const PseudoModule& m) {
    if (auto w = day_failure(m.action())) fail(ErrorKind::ModuleLawFailed, "action does not preserve compatibility", *w);
    if (auto w = groucho_failure(m)) fail(ErrorKind::ModuleLawFailed, "support does not preserve joins", *w);
    if (auto w = harpo_failure(m)) fail(ErrorKind::ModuleLawFailed, "meet is not a greatest lower bound", *w);
    if (auto w = zeppo_failure(m)) fail(ErrorKind::ModuleLawFailed, "meets do not distribute over joins", *w);
    if (auto w = unital_failure(m)) fail(ErrorKind::ModuleLawFailed, "action is not unital and pointed", *w);
}

void check_action_hom(const SupportedAction& a, const SupportedAction& b, const std::vector<Elem>& theta) {
    if (a.S().size() != b.S().size()) fail(ErrorKind::BadInput, "actions over different semigroups");
    if (theta.size() != a.size()) fail(ErrorKind::BadInput, "map has the wrong length", {theta.size(), a.size()});
    for (Elem x = 0; x < a.size(); ++x) {
        if (theta[x] >= b.size()) fail(ErrorKind::OutOfRange, "map leaves the target", {x});
        if (b.p(theta[x]) != a.p(x)) fail(ErrorKind::NotHomomorphism, "map does not preserve support", {x});
    }
    if (auto w = first_pair(a.S().size(), a.size(),
                            [&](Elem s, Elem x) { return theta[a.act(s, x)] != b.act(s, theta[x]); }))
        fail(ErrorKind::NotHomomorphism, "map is not equivariant", {(*w)[0], (*w)[1]});
}

void check_module_hom(const PseudoModule& a, const PseudoModule& b, const std::vector<Elem>& theta) {
    check_action_hom(a.action(), b.action(), theta);
    if (theta[a.zero()] != b.zero()) fail(ErrorKind::NotHomomorphism, "map moves the bottom");
    if (auto w = first_pair(a.size(), a.size(), [&](Elem x, Elem y) {
            Elem j = a.join(x, y);
            return j != npos && theta[j] != b.join(theta[x], theta[y]);
        }))
        fail(ErrorKind::NotHomomorphism, "map does not preserve a join", {(*w)[0], (*w)[1]});
}

std::vector<std::vector<Elem>> module_homs(const PseudoModule& a, const PseudoModule& b, double max_maps) {
    const std::size_t n = a.size();
    std::vector<std::vector<Elem>> cand(n);
    double total = 1;
    for (Elem x = 0; x < n; ++x) {
        for (Elem y = 0; y < b.size(); ++y)
            if (b.p(y) == a.p(x)) cand[x].push_back(y);
        total *= static_cast<double>(cand[x].size());
    }
    if (total > max_maps) fail(ErrorKind::TooLarge, "too many candidate maps");
    std::vector<std::vector<Elem>> out;
    if (total == 0) return out;
    std::vector<std::size_t> pick(n, 0);
    std::vector<Elem> theta(n);
    while (true) {
        for (Elem x = 0; x < n; ++x) theta[x] = cand[x][pick[x]];
        try {
            check_module_hom(a, b, theta);
            out.push_back(theta);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::NotHomomorphism) throw;
        }
        std::size_t i = 0;
        while (i < n && ++pick[i] == cand[i].size()) pick[i++] = 0;
        if (i == n) break;
    }
    return out;
}

std::size_t Completion::index_of(const Bits& a) const {
    auto it = std::lower_bound(members.begin(), members.end(), a,
                               [](const Bits& u, const Bits& v) { return canonical_less(u, v); });
    return it != members.end() && *it == a ? static_cast<std::size_t>(it - members.begin()) : npos;
}

Completion schein_complete(PseudogroupPtr sp, const SupportedAction& a, std::size_t max_carrier) {
    const Pseudogroup& P = *sp;
    const InverseSemigroup& S = P.S();
    if (!a.zero()) fail(ErrorKind::NotPointed, "action has no fixed minimum element");
    const std::size_t n = a.size();
    std::vector<Bits> compat(n, Bits(n));
    for (Elem x = 0; x < n; ++x)
        for (Elem y = 0; y < n; ++y)
            if (a.left_compatible(x, y)) compat[x].set(y);

    // (s ∨ t)·y must lie in A whenever s·y and t·y do
    std::vector<std::array<Elem, 3>> rules;
    for (Elem y = 0; y < n; ++y)
        for (Elem s = 0; s < S.size(); ++s)
            for (Elem t = s + 1; t < S.size(); ++t) {
                Elem j = P.join(s, t);
                if (j == npos) continue;
                Elem u = a.act(s, y), v = a.act(t, y), w = a.act(j, y);
                if (w != u && w != v) rules.push_back({u, v, w});
            }
    std::sort(rules.begin(), rules.end());
    rules.erase(std::unique(rules.begin(), rules.end()), rules.end());
    auto close = [&](Bits b) {
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto& r : rules)
                if (b.test(r[0]) && b.test(r[1]) && !b.test(r[2])) {
                    b |= a.below(r[2]);
                    changed = true;
                }
        }
        return b;
    };
    auto is_compatible = [&](const Bits& b) {
        bool ok = true;
        b.for_each([&](std::size_t y) { ok = ok && b.subset_of(compat[y]); });
        return ok;
    };
    for (Elem x = 0; x < n; ++x)
        if (close(a.below(x)) != a.below(x))
            fail(ErrorKind::ModuleLawFailed, "principal ideal is not closed under the join rules", {x});

    // every member is the closure of a union of principal ideals
    std::vector<Bits> members{a.below(*a.zero())};
    std::unordered_set<Bits, BitsHash> seen{members[0]};
    for (std::size_t i = 0; i < members.size(); ++i)
        for (Elem x = 0; x < n; ++x) {
            if (members[i].test(x)) continue;
            Bits b = members[i] | a.below(x);
            if (!is_compatible(b)) continue;
            b = close(std::move(b));
            if (!is_compatible(b) || !seen.insert(b).second) continue;
            members.push_back(std::move(b));
            if (members.size() > max_carrier) fail(ErrorKind::TooLarge, "completion exceeds the bound", {max_carrier});
        }
    std::sort(members.begin(), members.end(), [](const Bits& u, const Bits& v) { return canonical_less(u, v); });

    const std::size_t k = members.size();
    std::unordered_map<Bits, std::size_t, BitsHash> idx;
    for (std::size_t i = 0; i < k; ++i) idx.emplace(members[i], i);
    ActionData d;
    d.s = semigroup_of(sp);
    d.x_size = k;
    d.act.resize(S.size() * k);
    for (Elem s = 0; s < S.size(); ++s)
        for (std::size_t i = 0; i < k; ++i) {
            auto it = idx.find(a.act_set(s, members[i]));
            if (it == idx.end()) fail(ErrorKind::ModuleLawFailed, "sA is not a left-compatible order-ideal", {s, i});
            d.act[s * k + i] = it->second;
        }
    for (std::size_t i = 0; i < k; ++i) {
        std::vector<Elem> ps;
        members[i].for_each([&](std::size_t x) { ps.push_back(a.p(x)); });
        d.support.push_back(P.join_of(ps));
        d.names.push_back(members[i].to_string());
    }
    auto action = SupportedAction::validate(std::move(d));
    Completion c{PseudoModule::from(sp, std::move(action)), std::move(members), {}};
    for (Elem x = 0; x < n; ++x) c.iota.push_back(idx.at(a.below(x)));
    check_action_hom(a, c.module.action(), c.iota);
    // order is inclusion and joins are closed unions
    if (auto w = first_pair(k, k, [&](std::size_t u, std::size_t v) {
            if (c.module.leq(u, v) != c.members[u].subset_of(c.members[v])) return true;
            Elem j = c.module.join(u, v);
            return j != npos && c.members[j] != close(c.members[u] | c.members[v]);
        }))
        fail(ErrorKind::ModuleLawFailed, "completion order is not inclusion", {(*w)[0], (*w)[1]});
    return c;
}

std::vector<Elem> universal_extend(const Completion& l, const SupportedAction& x, const PseudoModule& m,
                                   const std::vector<Elem>& alpha) {
    check_action_hom(x, m.action(), alpha);
    const std::size_t k = l.members.size();
    std::vector<Elem> beta(k);
    for (std::size_t i = 0; i < k; ++i) {
        Elem acc = m.zero();
        l.members[i].for_each([&](std::size_t a) {
            if (acc != npos) acc = m.join(acc, alpha[a]);
        });
        if (acc == npos) fail(ErrorKind::NotHomomorphism, "images of a compatible ideal are not compatible", {i});
        beta[i] = acc;
    }
    for (Elem y = 0; y < x.size(); ++y)
        if (beta[l.iota[y]] != alpha[y]) fail(ErrorKind::NotHomomorphism, "extension disagrees with the map", {y});
    check_module_hom(l.module, m, beta);
    return beta;
}

void check_module_iso(const PseudoModule& a, const PseudoModule& b, const std::vector<Elem>& phi,
                      const std::vector<Elem>& psi) {
    const std::size_t n = a.size();
    if (b.size() != n || psi.size() != n || phi.size() != a.S().size())
        fail(ErrorKind::NotIsomorphic, "sizes differ", {n, b.size()});
    std::vector<bool> hit(n, false);
    for (Elem x = 0; x < n; ++x) {
        if (psi[x] >= n || hit[psi[x]]) fail(ErrorKind::NotIsomorphic, "map is not a bijection", {x});
        hit[psi[x]] = true;
        if (b.p(psi[x]) != phi[a.p(x)]) fail(ErrorKind::NotIsomorphic, "support not carried over", {x});
    }
    if (auto w = first_pair(a.S().size(), n, [&](Elem s, Elem x) { return psi[a.act(s, x)] != b.act(phi[s], psi[x]); }))
        fail(ErrorKind::NotIsomorphic, "action not carried over", {(*w)[0], (*w)[1]});
    if (auto w = first_pair(n, n, [&](Elem x, Elem y) {
            Elem j = a.join(x, y), k = b.join(psi[x], psi[y]);
            return j == npos ? k != npos : k != psi[j];
        }))
        fail(ErrorKind::NotIsomorphic, "joins not carried over", {(*w)[0], (*w)[1]});
}

}  // namespace morita
