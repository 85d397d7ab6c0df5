#include "morita/pseudogroup.hpp"

#include "morita/errors.hpp"
#include "morita/kernels.hpp"

namespace morita {

Pseudogroup Pseudogroup::from(InverseSemigroup src) {
    if (!src.zero()) fail(ErrorKind::NoZero, "pseudogroups need a zero (the empty join)");
    Pseudogroup p(std::move(src));
    const InverseSemigroup& s = p.s_;
    const std::size_t n = s.size();
    p.zero_ = *s.zero();
    p.join_.assign(n * n, npos);
    for (Elem a = 0; a < n; ++a)
        for (Elem b = a; b < n; ++b) {
            if (!s.both_compatible(a, b)) continue;
            Bits ub = s.above(a) & s.above(b);
            Elem lub = npos;
            ub.for_each([&](Elem j) {
                if (lub == npos && ub.subset_of(s.above(j))) lub = j;
            });
            if (lub == npos) fail(ErrorKind::MissingJoin, "compatible pair without a join", {a, b});
            p.join_[a * n + b] = p.join_[b * n + a] = lub;
        }

    auto bad = first_triple(n, n, n, [&](std::size_t x, std::size_t a, std::size_t b) {
        Elem j = p.join_[a * n + b];
        if (j == npos) return false;
        Elem l = p.join_[s.mul(x, a) * n + s.mul(x, b)];
        Elem r = p.join_[s.mul(a, x) * n + s.mul(b, x)];
        return l != s.mul(x, j) || r != s.mul(j, x);
    });
    if (bad) fail(ErrorKind::NotDistributive, "multiplication does not distribute over a join",
                  {(*bad)[0], (*bad)[1], (*bad)[2]});

    const auto& idem = s.idempotents();
    Elem top = p.zero_;
    for (Elem e : idem) top = p.join_[top * n + e];
    p.top_ = top;
    for (Elem e : idem)
        if (!s.natural_leq(e, top)) fail(ErrorKind::IdempotentsNotFrame, "join of idempotents is not a top", {e});
    // Meets of idempotents are products; check the lattice is distributive.
    for (Elem e : idem)
        for (Elem f : idem)
            for (Elem g : idem) {
                Elem lhs = s.mul(e, p.join_[f * n + g]);
                Elem rhs = p.join_[s.mul(e, f) * n + s.mul(e, g)];
                if (lhs != rhs) fail(ErrorKind::IdempotentsNotFrame, "idempotent lattice not distributive", {e, f, g});
            }

    p.meet_.assign(n * n, npos);
    for (Elem a = 0; a < n; ++a)
        for (Elem b = a; b < n; ++b) {
            Bits lower = s.below(a) & s.below(b);
            Elem m = p.zero_;
            lower.for_each([&](Elem c) { m = p.join_[m * n + c]; });
            p.meet_[a * n + b] = p.meet_[b * n + a] = m;
        }
    return p;
}

Elem Pseudogroup::join_of(const std::vector<Elem>& xs) const {
    const std::size_t n = s_.size();
    for (std::size_t i = 0; i < xs.size(); ++i)
        for (std::size_t j = i + 1; j < xs.size(); ++j)
            if (!s_.both_compatible(xs[i], xs[j]))
                fail(ErrorKind::NotCompatible, "join of an incompatible set", {xs[i], xs[j]});
    Elem acc = zero_;
    for (Elem x : xs) acc = join_[acc * n + x];
    return acc;
}

Bits Pseudogroup::join_closure(const Bits& x) const {
    const std::size_t n = s_.size();
    Bits c = x;
    c.set(zero_);
    bool changed = true;
    while (changed) {
        changed = false;
        for (Elem a = c.first(); a < n; a = c.next(a + 1)) {
            Bits cand = s_.compatible_row(a) & c;
            for (Elem b = cand.next(a + 1); b < n; b = cand.next(b + 1)) {
                Elem j = join_[a * n + b];
                if (!c.test(j)) {
                    c.set(j);
                    changed = true;
                }
            }
        }
    }
    return c;
}

Bits Pseudogroup::ideal_closure(const Bits& x) const {
    Bits c = s_.down_closure(x);
    c.set(zero_);
    while (true) {
        Bits next = s_.down_closure(join_closure(c));
        if (next == c) return c;
        c = std::move(next);
    }
}

bool Pseudogroup::is_closed_ideal(const Bits& x) const {
    const std::size_t n = s_.size();
    if (!x.test(zero_)) return false;
    for (Elem a = x.first(); a < n; a = x.next(a + 1)) {
        if (!s_.below(a).subset_of(x)) return false;
        Bits cand = s_.compatible_row(a) & x;
        for (Elem b = cand.next(a + 1); b < n; b = cand.next(b + 1))
            if (!x.test(join_[a * n + b])) return false;
    }
    return true;
}

}  // namespace morita
