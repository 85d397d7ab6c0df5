#include "morita/invariants.hpp"

#include <algorithm>
#include <unordered_set>

#include "morita/errors.hpp"
#include "morita/kernels.hpp"

namespace morita {

namespace {

bool is_two_sided(const InverseSemigroup& s, const Bits& x) {
    const std::size_t n = s.size();
    bool ok = true;
    x.for_each([&](Elem a) {
        for (Elem b = 0; b < n && ok; ++b)
            ok = x.test(s.mul(a, b)) && x.test(s.mul(b, a));
    });
    return ok;
}

Elem join_d(const Pseudogroup& p, const std::vector<Elem>& xs, bool range) {
    std::vector<Elem> ids;
    for (Elem x : xs) ids.push_back(range ? p.S().r(x) : p.S().d(x));
    return p.join_of(ids);
}

void require_idempotent(const InverseSemigroup& s, Elem e) {
    if (e >= s.size() || !s.is_idempotent(e)) fail(ErrorKind::BadInput, "not an idempotent", {e});
}

std::vector<Elem> nonzero_idempotents(const Pseudogroup& p) {
    std::vector<Elem> out;
    for (Elem e : p.S().idempotents())
        if (e != p.zero()) out.push_back(e);
    return out;
}

}  // namespace

Bits principal_sup_ideal(const Pseudogroup& s, Elem a) {
    const auto& S = s.S();
    const std::size_t n = S.size();
    Bits b(n);
    for (Elem x = 0; x < n; ++x)
        for (Elem y = 0; y < n; ++y) b.set(S.mul(x, a, y));
    return s.join_closure(b);
}

std::vector<Bits> sup_ideals_from_principal(const Pseudogroup& s) {
    const std::size_t n = s.size();
    std::vector<Bits> principal(n), out;
    for_each_index(n, [&](std::size_t a) { principal[a] = principal_sup_ideal(s, a); });
    std::unordered_set<Bits, BitsHash> seen;
    std::vector<Bits> todo{principal[s.zero()]};
    seen.insert(todo.front());
    while (!todo.empty()) {
        Bits cur = std::move(todo.back());
        todo.pop_back();
        out.push_back(cur);
        for (Elem a = 0; a < n; ++a) {
            if (cur.test(a)) continue;
            Bits next = s.join_closure(cur | principal[a]);
            if (seen.insert(next).second) todo.push_back(std::move(next));
        }
    }
    std::sort(out.begin(), out.end(), [](const Bits& a, const Bits& b) { return canonical_less(a, b); });
    return out;
}

std::vector<Bits> sup_ideals(const Pseudogroup& s) {
    const auto& S = s.S();
    const std::size_t n = S.size();
    if (n > 16) return sup_ideals_from_principal(s);
    std::vector<Bits> out;
    for (auto m : filter_masks(static_cast<unsigned>(n), [&](std::uint64_t m) {
             Bits b = Bits::from_mask(n, m);
             return s.is_closed_ideal(b) && is_two_sided(S, b);
         }))
        out.push_back(Bits::from_mask(n, m));
    std::sort(out.begin(), out.end(), [](const Bits& a, const Bits& b) { return canonical_less(a, b); });
    return out;
}

std::optional<std::vector<Elem>> ideal_closure_failure(const Pseudogroup& s) {
    const auto& S = s.S();
    const std::size_t n = S.size();
    for (Elem a = 0; a < n; ++a) {
        Bits c = principal_sup_ideal(s, a);
        for (Elem b = 0; b < n; ++b)
            for (Elem x = c.first(); x < n; x = c.next(x + 1))
                if (!c.test(S.mul(b, x)) || !c.test(S.mul(x, b))) return std::vector<Elem>{a, b, x};
    }
    return std::nullopt;
}

std::optional<Pencil> pencil_preorder(const Pseudogroup& s, Elem e, Elem f) {
    const auto& S = s.S();
    require_idempotent(S, e);
    require_idempotent(S, f);
    std::vector<Elem> cand;
    for (Elem x = 0; x < S.size(); ++x)
        if (S.natural_leq(S.d(x), e) && S.natural_leq(S.r(x), f)) cand.push_back(x);
    std::stable_sort(cand.begin(), cand.end(),
                     [&](Elem a, Elem b) { return S.below(S.d(a)).count() > S.below(S.d(b)).count(); });
    std::vector<Elem> pick;
    Elem acc = s.zero();
    for (Elem x : cand) {
        if (acc == e) break;
        if (S.natural_leq(S.d(x), acc)) continue;
        acc = s.join(acc, S.d(x));
        pick.push_back(x);
    }
    if (acc != e) return std::nullopt;
    for (std::size_t i = pick.size(); i-- > 0;) {
        auto rest = pick;
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
        if (join_d(s, rest, false) == e) pick = std::move(rest);
    }
    return Pencil{e, f, std::move(pick)};
}

bool is_pencil(const Pseudogroup& s, const Pencil& p) {
    return join_d(s, p.elements, false) == p.from_e && s.S().natural_leq(join_d(s, p.elements, true), p.to_f);
}

std::vector<Elem> transport_pencil(const Pseudogroup& s, const std::vector<Elem>& x, Elem a, Elem b) {
    const auto& S = s.S();
    std::vector<Elem> out;
    for (Elem v : x) out.push_back(S.mul(S.inv(b), v, a));
    return out;
}

SimplifyingReport is_zero_simplifying(const Pseudogroup& s) {
    const auto& S = s.S();
    SimplifyingReport rep;

    Bits zero = Bits::single(S.size(), s.zero()), all = Bits::full(S.size());
    for (const auto& i : sup_ideals(s))
        if (i != zero && i != all) {
            rep.proper_ideal = i;
            break;
        }
    rep.by_ideals = !rep.proper_ideal;

    auto ids = nonzero_idempotents(s);
    for (Elem e : ids) {
        for (Elem f : ids) {
            if (!rep.missing_pencil && !pencil_preorder(s, e, f)) rep.missing_pencil = {e, f};
            if (rep.missing_pair) continue;
            // the largest admissible Z gives the largest joins
            std::vector<Elem> z;
            for (Elem x = 0; x < S.size(); ++x)
                if (S.natural_leq(S.d(x), e) && S.natural_leq(S.r(x), f)) z.push_back(x);
            if (join_d(s, z, false) != e || join_d(s, z, true) != f) rep.missing_pair = {e, f};
        }
    }
    rep.by_pencils = !rep.missing_pencil;
    rep.by_pairs = !rep.missing_pair;
    if (rep.by_ideals != rep.by_pencils || rep.by_pencils != rep.by_pairs)
        fail(ErrorKind::EquivalenceMismatch, "0-simplifying routes disagree",
             {rep.by_ideals ? 1u : 0u, rep.by_pencils ? 1u : 0u, rep.by_pairs ? 1u : 0u});
    rep.value = rep.by_ideals;
    return rep;
}

std::optional<Elem> fundamental_witness(const InverseSemigroup& s) {
    const auto& ids = s.idempotents();
    auto hit = first_index(s.size(), [&](std::size_t a) {
        if (s.is_idempotent(a)) return false;
        for (Elem e : ids)
            if (s.mul(a, e) != s.mul(e, a)) return false;
        return true;
    });
    if (!hit) return std::nullopt;
    return *hit;
}

std::vector<DWitness> d_relation_witnesses(const Pseudogroup& u, const EnlargementReport& rep) {
    const auto& U = u.S();
    std::vector<DWitness> out;
    for (Elem e : U.idempotents()) {
        const auto& parts = rep.e2[e];
        if (parts.size() != 1 || U.mul(parts[0].a, parts[0].s, parts[0].b) != e) continue;  // not in USU
        const auto& f = parts[0];
        Elem x = U.mul(e, f.a, f.s);
        if (U.r(x) != e || rep.s.local[U.d(x)] == npos)
            fail(ErrorKind::EnlargementLawFailed, "idempotent of USU not D-related into the corner", {e});
        out.push_back({e, x, U.d(x)});
    }
    return out;
}

InvarianceReport invariance_report(const Pseudogroup& s, const Pseudogroup& t, const Enlargement& en) {
    InvarianceReport r;
    r.s_simplifying = is_zero_simplifying(s);
    r.t_simplifying = is_zero_simplifying(t);
    r.u_simplifying = is_zero_simplifying(*en.u);
    r.s_fundamental = is_fundamental(s.S());
    r.t_fundamental = is_fundamental(t.S());
    r.u_fundamental = is_fundamental(en.u->S());
    r.s_idempotents = s.S().idempotents().size();
    r.t_idempotents = t.S().idempotents().size();
    r.s_d_classes = s.S().d_class_count();
    r.t_d_classes = t.S().d_class_count();
    r.s_witnesses = d_relation_witnesses(*en.u, en.s_report);
    r.t_witnesses = d_relation_witnesses(*en.u, en.t_report);
    if (r.s_simplifying.value != r.t_simplifying.value || r.s_simplifying.value != r.u_simplifying.value)
        fail(ErrorKind::InvarianceViolated, "0-simplifying differs across the enlargement", {0});
    if (r.s_fundamental != r.t_fundamental || r.s_fundamental != r.u_fundamental)
        fail(ErrorKind::InvarianceViolated, "fundamental differs across the enlargement", {1});
    return r;
}

}  // namespace morita
