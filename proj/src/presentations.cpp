#include "morita/presentations.hpp"

#include <algorithm>
#include <random>

#include "morita/errors.hpp"
#include "morita/kernels.hpp"

namespace morita {

namespace {

Bits random_bits(std::size_t n, std::mt19937_64& rng) {
    Bits b(n);
    for (std::size_t i = 0; i < n; ++i)
        if (rng() & 1u) b.set(i);
    return b;
}

// All subsets of an n-set when n is small, else `samples` fixed pseudo-random
// ones (plus the empty and full sets).
std::vector<Bits> subsets_or_sample(std::size_t n, std::size_t exhaustive_bound, std::size_t samples,
                                    std::uint64_t seed, bool& exhaustive) {
    std::vector<Bits> out;
    exhaustive = n <= exhaustive_bound;
    if (exhaustive) {
        for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) out.push_back(Bits::from_mask(n, m));
        return out;
    }
    std::mt19937_64 rng(seed);
    out.push_back(Bits(n));
    out.push_back(Bits::full(n));
    for (std::size_t i = 0; i < samples; ++i) out.push_back(random_bits(n, rng));
    return out;
}

Bits star_of(const InverseSemigroup& m, const Bits& a) {
    Bits out(a.size());
    a.for_each([&](std::size_t x) { out.set(m.inv(x)); });
    return out;
}

Bits left_image(const InverseSemigroup& m, Elem a, const Bits& y) {
    Bits out(y.size());
    y.for_each([&](std::size_t x) { out.set(m.mul(a, x)); });
    return out;
}

Bits action_image(const ActionTable& act, Elem a, const Bits& y) {
    Bits out(act.x);
    y.for_each([&](std::size_t x) { out.set(act(a, x)); });
    return out;
}

Bits action_orbit(const ActionTable& act, const Bits& as, Elem x) {
    Bits out(act.x);
    as.for_each([&](std::size_t a) { out.set(act(a, x)); });
    return out;
}

std::vector<std::size_t> mask_witness(const Bits& a) {
    std::vector<std::size_t> w;
    for (std::size_t k = 0; k < a.words(); ++k) w.push_back(static_cast<std::size_t>(a.word(k)));
    return w;
}

}  // namespace

void Presentation::add(Bits lhs, Bits rhs) {
    if (lhs.size() != n_ || rhs.size() != n_) fail(ErrorKind::BadInput, "relation side has the wrong width");
    if (lhs == rhs) return;
    if (canonical_less(rhs, lhs)) std::swap(lhs, rhs);
    if (!seen_.emplace(lhs, rhs).second) return;
    rel_.push_back({std::move(lhs), std::move(rhs)});
}

void Presentation::add(const std::vector<std::size_t>& lhs, const std::vector<std::size_t>& rhs) {
    for (auto x : lhs)
        if (x >= n_) fail(ErrorKind::BadInput, "relation mentions an unknown generator", {x});
    for (auto x : rhs)
        if (x >= n_) fail(ErrorKind::BadInput, "relation mentions an unknown generator", {x});
    add(Bits::of(n_, lhs), Bits::of(n_, rhs));
}

bool Presentation::contains(const Bits& lhs, const Bits& rhs) const {
    if (lhs == rhs) return true;
    if (canonical_less(rhs, lhs)) return seen_.count({rhs, lhs}) != 0;
    return seen_.count({lhs, rhs}) != 0;
}

bool Presentation::is_closed(const Bits& y) const {
    for (const auto& r : rel_)
        if (r.lhs.subset_of(y) != r.rhs.subset_of(y)) return false;
    return true;
}

Bits Presentation::closure(const Bits& y0) const {
    Bits y = y0;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& r : rel_) {
            bool l = r.lhs.subset_of(y), rr = r.rhs.subset_of(y);
            if (l == rr) continue;
            y |= l ? r.rhs : r.lhs;
            changed = true;
        }
    }
    return y;
}

PresentedSupLattice PresentedSupLattice::present(Presentation p, PresentOptions opt) {
    const std::size_t n = p.generators();
    if (n > opt.max_generators)
        fail(ErrorKind::GeneratorSetTooLarge, "too many generators", {n, opt.max_generators});
    PresentedSupLattice out;
    std::vector<Bits> members;
    if (n <= opt.enumerate_bound && n < 64) {
        // small sides first, so most subsets are rejected early
        std::vector<std::pair<std::uint64_t, std::uint64_t>> rs;
        for (const auto& r : p.relations()) rs.emplace_back(n ? r.lhs.word(0) : 0, n ? r.rhs.word(0) : 0);
        std::stable_sort(rs.begin(), rs.end(), [](auto a, auto b) {
            return std::popcount(a.first | a.second) < std::popcount(b.first | b.second);
        });
        auto masks = filter_masks(static_cast<unsigned>(n), [&](std::uint64_t m) {
            for (auto [l, r] : rs)
                if (((l & m) == l) != ((r & m) == r)) return false;
            return true;
        });
        if (masks.size() > opt.max_carrier) fail(ErrorKind::TooLarge, "carrier exceeds the bound", {masks.size()});
        for (auto m : masks) members.push_back(Bits::from_mask(n, m));
    } else {
        out.generated_ = true;
        std::unordered_set<Bits, BitsHash> seen;
        Bits start = p.closure(Bits(n));
        members.push_back(start);
        seen.insert(start);
        for (std::size_t i = 0; i < members.size(); ++i) {
            for (std::size_t x = 0; x < n; ++x) {
                if (members[i].test(x)) continue;
                Bits y = members[i];
                y.set(x);
                y = p.closure(y);
                if (seen.insert(y).second) {
                    members.push_back(y);
                    if (members.size() > opt.max_carrier)
                        fail(ErrorKind::TooLarge, "carrier exceeds the bound", {members.size()});
                }
            }
        }
    }
    out.carrier_ = ClosureFamily(n, std::move(members));
    out.lattice_ = out.carrier_.lattice();
    out.eta_.resize(n);
    for (std::size_t x = 0; x < n; ++x) out.eta_[x] = out.carrier_.index_of(p.closure(Bits::single(n, x)));
    out.p_ = std::move(p);
    return out;
}

std::size_t PresentedSupLattice::close(const Bits& y) const { return carrier_.index_of(p_.closure(y)); }

std::vector<std::size_t> extend(const PresentedSupLattice& p, const std::vector<std::size_t>& f,
                                const FiniteLattice& target) {
    const auto& pres = p.presentation();
    if (f.size() != pres.generators()) fail(ErrorKind::BadInput, "map must cover every generator");
    for (auto v : f)
        if (v >= target.size()) fail(ErrorKind::OutOfRange, "map leaves the target lattice", {v});
    auto join_over = [&](const Bits& b) {
        std::size_t acc = target.bottom();
        b.for_each([&](std::size_t x) { acc = target.join(acc, f[x]); });
        return acc;
    };
    const auto& rel = pres.relations();
    for (std::size_t i = 0; i < rel.size(); ++i)
        if (join_over(rel[i].lhs) != join_over(rel[i].rhs))
            fail(ErrorKind::RelationsNotRespected, "map does not respect relation", {i});
    const std::size_t k = p.size();
    std::vector<std::size_t> sharp(k);
    for (std::size_t u = 0; u < k; ++u) sharp[u] = join_over(p.carrier()[u]);
    for (std::size_t x = 0; x < f.size(); ++x)
        if (sharp[p.eta(x)] != f[x]) fail(ErrorKind::NotHomomorphism, "extension disagrees on a generator", {x});
    const auto& l = p.lattice();
    if (sharp[l.bottom()] != target.bottom()) fail(ErrorKind::NotHomomorphism, "extension moves the bottom");
    auto bad = first_pair(k, k, [&](std::size_t a, std::size_t b) {
        return sharp[l.join(a, b)] != target.join(sharp[a], sharp[b]);
    });
    if (bad) fail(ErrorKind::NotHomomorphism, "extension does not preserve a join", {(*bad)[0], (*bad)[1]});
    return sharp;
}

Bits ActionTable::apply(const Bits& a, const Bits& y) const {
    Bits out(x);
    a.for_each([&](std::size_t s) { y.for_each([&](std::size_t t) { out.set((*this)(s, t)); }); });
    return out;
}

ActionTable left_multiplication(const InverseSemigroup& s) {
    ActionTable t;
    t.m = t.x = s.size();
    t.act = s.table();
    return t;
}

Bits left_residual(const ActionTable& act, const Bits& a, const Bits& z) {
    Bits out(act.x);
    for (std::size_t y = 0; y < act.x; ++y) {
        bool ok = true;
        a.for_each([&](std::size_t s) { ok = ok && z.test(act(s, y)); });
        if (ok) out.set(y);
    }
    return out;
}

Bits right_residual(const ActionTable& act, const Bits& z, const Bits& y) {
    Bits out(act.m);
    for (std::size_t s = 0; s < act.m; ++s) {
        bool ok = true;
        y.for_each([&](std::size_t t) { ok = ok && z.test(act(s, t)); });
        if (ok) out.set(s);
    }
    return out;
}

void check_residuation_adjunctions(const ActionTable& act, const Bits& a, const Bits& y, const Bits& z) {
    bool ex = false;
    Bits l = left_residual(act, a, z);
    for (const auto& w : subsets_or_sample(act.x, 12, 2048, 0x5eed, ex))
        if (act.apply(a, w).subset_of(z) != w.subset_of(l))
            fail(ErrorKind::AdjunctionFailed, "A·W ⊆ Z and W ⊆ A\\Z disagree", mask_witness(w));
    Bits r = right_residual(act, z, y);
    for (const auto& b : subsets_or_sample(act.m, 12, 2048, 0x5eee, ex))
        if (act.apply(b, y).subset_of(z) != b.subset_of(r))
            fail(ErrorKind::AdjunctionFailed, "B·Y ⊆ Z and B ⊆ Z/Y disagree", mask_witness(b));
}

void check_stable(const InverseSemigroup& m, const Presentation& rm) {
    if (rm.generators() != m.size()) fail(ErrorKind::BadInput, "relations are over the wrong generator set");
    const auto& rel = rm.relations();
    for (std::size_t i = 0; i < rel.size(); ++i) {
        for (Elem a = 0; a < m.size(); ++a)
            if (!rm.contains(left_image(m, a, rel[i].lhs), left_image(m, a, rel[i].rhs)))
                fail(ErrorKind::NotStable, "monoid relations not stable under left multiplication", {a, i});
        if (!rm.contains(star_of(m, rel[i].lhs), star_of(m, rel[i].rhs)))
            fail(ErrorKind::NotStable, "monoid relations not stable under the involution", {i});
    }
}

void check_jointly_stable(const InverseSemigroup& m, const Presentation& rm, const ActionTable& act,
                          const Presentation& rx) {
    check_stable(m, rm);
    if (act.m != m.size() || rx.generators() != act.x)
        fail(ErrorKind::BadInput, "action and relations do not fit together");
    const auto& xr = rx.relations();
    for (std::size_t i = 0; i < xr.size(); ++i)
        for (Elem a = 0; a < m.size(); ++a)
            if (!rx.contains(action_image(act, a, xr[i].lhs), action_image(act, a, xr[i].rhs)))
                fail(ErrorKind::NotStable, "action relations not stable under the action", {a, i});
    const auto& mr = rm.relations();
    for (std::size_t i = 0; i < mr.size(); ++i)
        for (Elem x = 0; x < act.x; ++x)
            if (!rx.contains(action_orbit(act, mr[i].lhs, x), action_orbit(act, mr[i].rhs, x)))
                fail(ErrorKind::NotStable, "monoid relations applied to a point leave the action relations",
                     {i, x});
}

namespace {

// closure table over the sample, keyed by the subset itself
struct ClosureCache {
    const Presentation& p;
    std::unordered_map<Bits, Bits, BitsHash> memo;
    const Bits& operator()(const Bits& y) {
        auto it = memo.find(y);
        if (it != memo.end()) return it->second;
        return memo.emplace(y, p.closure(y)).first->second;
    }
};

}  // namespace

NucleusReport verify_nucleus(const InverseSemigroup& m, const Presentation& rm) {
    check_stable(m, rm);
    NucleusReport rep;
    auto subs = subsets_or_sample(m.size(), 8, 256, 0x17, rep.exhaustive);
    ClosureCache j{rm, {}};
    for (const auto& a : subs) {
        const Bits ja = j(a);
        if (star_of(m, ja) != j(star_of(m, a)))
            fail(ErrorKind::NucleusLawFailed, "j(A)* differs from j(A*)", mask_witness(a));
        for (const auto& b : subs) {
            ++rep.pairs_checked;
            Bits lhs = m.product(ja, j(b));
            if (!lhs.subset_of(j(m.product(a, b)))) {
                auto w = mask_witness(a);
                auto wb = mask_witness(b);
                w.insert(w.end(), wb.begin(), wb.end());
                fail(ErrorKind::NucleusLawFailed, "j(A)·j(B) not below j(AB)", w);
            }
        }
    }
    return rep;
}

NucleusReport verify_nucleus(const InverseSemigroup& m, const Presentation& rm, const ActionTable& act,
                             const Presentation& rx) {
    check_jointly_stable(m, rm, act, rx);
    NucleusReport rep = verify_nucleus(m, rm);
    bool ex = false;
    auto as = subsets_or_sample(m.size(), 8, 128, 0x23, ex);
    auto ys = subsets_or_sample(act.x, 8, 128, 0x29, ex);
    rep.exhaustive = rep.exhaustive && ex;
    ClosureCache j{rm, {}}, k{rx, {}};
    for (const auto& a : as)
        for (const auto& y : ys) {
            ++rep.pairs_checked;
            if (!act.apply(j(a), k(y)).subset_of(k(act.apply(a, y)))) {
                auto w = mask_witness(a);
                auto wy = mask_witness(y);
                w.insert(w.end(), wy.begin(), wy.end());
                fail(ErrorKind::NucleusLawFailed, "j(A)·k(Y) not below k(A·Y)", w);
            }
        }
    return rep;
}

Presentation join_relations(std::size_t n, const std::function<bool(Elem, Elem)>& compat,
                            const std::function<Elem(const std::vector<Elem>&)>& join, std::size_t max_relations) {
    Presentation p(n);
    // cliques level by level, each extended only by larger elements
    std::vector<std::vector<Elem>> level{{}};
    std::size_t total = 0;
    while (!level.empty()) {
        std::vector<std::vector<Elem>> next;
        for (const auto& c : level) {
            if (++total > max_relations) fail(ErrorKind::TooLarge, "too many compatible subsets", {max_relations});
            p.add(Bits::of(n, c), Bits::single(n, join(c)));
            for (Elem x = c.empty() ? 0 : c.back() + 1; x < n; ++x) {
                bool ok = true;
                for (Elem y : c) ok = ok && compat(x, y);
                if (!ok) continue;
                auto d = c;
                d.push_back(x);
                next.push_back(std::move(d));
            }
        }
        level = std::move(next);
    }
    return p;
}

Presentation compatible_join_relations(const Pseudogroup& s, std::size_t max_relations) {
    const auto& S = s.S();
    return join_relations(
        s.size(), [&](Elem a, Elem b) { return S.compatible(a, b) == Compat::both; },
        [&](const std::vector<Elem>& c) { return s.join_of(c); }, max_relations);
}

PresentedQuantale presented_quantale(const InverseSemigroup& m, Presentation rm, PresentOptions opt) {
    if (!m.identity()) fail(ErrorKind::BadIdentity, "presented quantale needs a monoid");
    check_stable(m, rm);
    PresentedQuantale q{PresentedSupLattice::present(std::move(rm), opt), {}, {}, 0};
    const auto& car = q.lattice.carrier();
    const std::size_t k = car.size();
    q.mult.assign(k * k, npos);
    q.star.assign(k, npos);
    for_each_index(k, [&](std::size_t u) {
        for (std::size_t v = 0; v < k; ++v) q.mult[u * k + v] = q.lattice.close(m.product(car[u], car[v]));
    });
    for (std::size_t u = 0; u < k; ++u) {
        q.star[u] = car.index_of(star_of(m, car[u]));
        if (q.star[u] == npos) fail(ErrorKind::NotStable, "closed set not closed under the involution", {u});
    }
    q.unit = q.lattice.eta(*m.identity());
    auto bad = first_triple(k, k, k, [&](std::size_t a, std::size_t b, std::size_t c) {
        return q.mult[q.mult[a * k + b] * k + c] != q.mult[a * k + q.mult[b * k + c]];
    });
    if (bad) fail(ErrorKind::NucleusLawFailed, "induced product is not associative", {(*bad)[0], (*bad)[1], (*bad)[2]});
    for (std::size_t u = 0; u < k; ++u)
        if (q.mult[q.unit * k + u] != u || q.mult[u * k + q.unit] != u)
            fail(ErrorKind::NucleusLawFailed, "induced unit law fails", {u});
    return q;
}

PresentedModule presented_module(const InverseSemigroup& m, const PresentedQuantale& q, const ActionTable& act,
                                 Presentation rx, PresentOptions opt) {
    check_jointly_stable(m, q.lattice.presentation(), act, rx);
    PresentedModule mod{PresentedSupLattice::present(std::move(rx), opt), {}};
    const auto& qc = q.lattice.carrier();
    const auto& xc = mod.lattice.carrier();
    const std::size_t kq = qc.size(), kx = xc.size();
    mod.act.assign(kq * kx, npos);
    for_each_index(kq, [&](std::size_t u) {
        for (std::size_t y = 0; y < kx; ++y) mod.act[u * kx + y] = mod.lattice.close(act.apply(qc[u], xc[y]));
    });
    auto bad = first_triple(kq, kq, kx, [&](std::size_t a, std::size_t b, std::size_t y) {
        return mod.act[q.mult[a * kq + b] * kx + y] != mod.act[a * kx + mod.act[b * kx + y]];
    });
    if (bad)
        fail(ErrorKind::NucleusLawFailed, "induced action is not associative", {(*bad)[0], (*bad)[1], (*bad)[2]});
    for (std::size_t y = 0; y < kx; ++y)
        if (mod.act[q.unit * kx + y] != y) fail(ErrorKind::NucleusLawFailed, "unit does not act trivially", {y});
    return mod;
}

}  // namespace morita
