#include "morita/semigroup.hpp"

#include <numeric>
#include <string>

#include "morita/errors.hpp"
#include "morita/kernels.hpp"

namespace morita {

std::string_view compat_name(Compat c) {
    switch (c) {
        case Compat::neither: return "neither";
        case Compat::left: return "left";
        case Compat::right: return "right";
        case Compat::both: return "both";
    }
    return "neither";
}

std::optional<std::array<Elem, 3>> find_nonassociative_serial(std::size_t n, const std::vector<Elem>& m) {
    for (Elem a = 0; a < n; ++a)
        for (Elem b = 0; b < n; ++b) {
            Elem ab = m[a * n + b];
            for (Elem c = 0; c < n; ++c)
                if (m[ab * n + c] != m[a * n + m[b * n + c]]) return std::array<Elem, 3>{a, b, c};
        }
    return std::nullopt;
}

std::optional<std::array<Elem, 3>> find_nonassociative(std::size_t n, const std::vector<Elem>& m) {
    return first_triple(n, n, n, [&](std::size_t a, std::size_t b, std::size_t c) {
        return m[m[a * n + b] * n + c] != m[a * n + m[b * n + c]];
    });
}

std::string InverseSemigroup::name(Elem a) const {
    if (a < names_.size() && !names_[a].empty()) return names_[a];
    return std::to_string(a);
}

InverseSemigroup InverseSemigroup::validate(RawTable raw) {
    const std::size_t n = raw.n;
    if (n == 0) fail(ErrorKind::BadTable, "empty table");
    if (raw.mult.size() != n * n)
        fail(ErrorKind::BadTable, "table has " + std::to_string(raw.mult.size()) + " entries, expected " +
                                      std::to_string(n * n));
    for (std::size_t i = 0; i < raw.mult.size(); ++i)
        if (raw.mult[i] >= n) fail(ErrorKind::BadTable, "entry out of range", {i / n, i % n});
    if (!raw.names.empty() && raw.names.size() != n) fail(ErrorKind::BadTable, "names length differs from n");
    if (raw.zero && *raw.zero >= n) fail(ErrorKind::BadTable, "zero out of range");
    if (raw.identity && *raw.identity >= n) fail(ErrorKind::BadTable, "identity out of range");

    if (auto w = find_nonassociative(n, raw.mult)) fail(ErrorKind::NotAssociative, "(ab)c differs from a(bc)", {(*w)[0], (*w)[1], (*w)[2]});

    InverseSemigroup s;
    s.n_ = n;
    s.mult_ = std::move(raw.mult);
    s.names_ = std::move(raw.names);
    const auto& m = s.mult_;
    auto mul = [&](Elem a, Elem b) { return m[a * n + b]; };

    s.inv_.assign(n, npos);
    for (Elem a = 0; a < n; ++a) {
        std::size_t found = 0;
        for (Elem b = 0; b < n; ++b) {
            if (mul(mul(a, b), a) == a && mul(mul(b, a), b) == b) {
                ++found;
                s.inv_[a] = b;
            }
        }
        if (found != 1)
            fail(ErrorKind::NotInverse, found == 0 ? "element has no inverse" : "element has several inverses",
                 {a});
    }

    s.idem_ = Bits(n);
    for (Elem a = 0; a < n; ++a)
        if (mul(a, a) == a) {
            s.idem_.set(a);
            s.idem_list_.push_back(a);
        }
    // Unique inverses force commuting idempotents; a failure here is a bug.
    for (Elem e : s.idem_list_)
        for (Elem f : s.idem_list_)
            if (mul(e, f) != mul(f, e)) fail(ErrorKind::NotInverse, "idempotents do not commute", {e, f});

    auto is_zero = [&](Elem z) {
        for (Elem a = 0; a < n; ++a)
            if (mul(z, a) != z || mul(a, z) != z) return false;
        return true;
    };
    auto is_identity = [&](Elem u) {
        for (Elem a = 0; a < n; ++a)
            if (mul(u, a) != a || mul(a, u) != a) return false;
        return true;
    };
    if (raw.zero) {
        if (!is_zero(*raw.zero)) fail(ErrorKind::BadZero, "declared zero does not absorb", {*raw.zero});
        s.zero_ = raw.zero;
    } else {
        for (Elem a = 0; a < n; ++a)
            if (is_zero(a)) {
                s.zero_ = a;
                break;
            }
    }
    if (raw.identity) {
        if (!is_identity(*raw.identity))
            fail(ErrorKind::BadIdentity, "declared identity is not neutral", {*raw.identity});
        s.identity_ = raw.identity;
    } else {
        for (Elem a = 0; a < n; ++a)
            if (is_identity(a)) {
                s.identity_ = a;
                break;
            }
    }

    s.below_.assign(n, Bits(n));
    s.above_.assign(n, Bits(n));
    for (Elem a = 0; a < n; ++a) {
        const Elem da = s.d(a);
        for (Elem b = 0; b < n; ++b) {
            bool leq = mul(b, da) == a;
            bool via_idem = false;
            for (Elem e : s.idem_list_)
                if (mul(e, b) == a) {
                    via_idem = true;
                    break;
                }
            if (leq != via_idem) fail(ErrorKind::OrderMismatch, "natural order characterisations disagree", {a, b});
            if (leq) {
                s.below_[b].set(a);
                s.above_[a].set(b);
            }
        }
    }

    s.compat_.assign(n, Bits(n));
    s.lcompat_.assign(n, Bits(n));
    s.rcompat_.assign(n, Bits(n));
    for (Elem a = 0; a < n; ++a)
        for (Elem b = 0; b < n; ++b) {
            bool l = s.idem_.test(mul(s.inv_[a], b));
            bool r = s.idem_.test(mul(a, s.inv_[b]));
            if (l != (mul(s.r(a), b) == mul(s.r(b), a)))
                fail(ErrorKind::OrderMismatch, "left compatibility characterisations disagree", {a, b});
            if (r != (mul(b, s.d(a)) == mul(a, s.d(b))))
                fail(ErrorKind::OrderMismatch, "right compatibility characterisations disagree", {a, b});
            if (l) s.lcompat_[a].set(b);
            if (r) s.rcompat_[a].set(b);
            if (l && r) s.compat_[a].set(b);
        }
    return s;
}

Compat InverseSemigroup::compatible(Elem a, Elem b) const noexcept {
    bool l = left_compatible(a, b), r = right_compatible(a, b);
    if (l && r) return Compat::both;
    if (l) return Compat::left;
    if (r) return Compat::right;
    return Compat::neither;
}

Bits InverseSemigroup::down_closure(const Bits& a) const {
    Bits out(n_);
    a.for_each([&](Elem x) { out |= below_[x]; });
    return out;
}

Bits InverseSemigroup::product(const Bits& a, const Bits& b) const {
    Bits out(n_);
    a.for_each([&](Elem x) { b.for_each([&](Elem y) { out.set(mul(x, y)); }); });
    return out;
}

std::vector<std::vector<Elem>> InverseSemigroup::d_classes() const {
    std::vector<Elem> parent(n_);
    std::iota(parent.begin(), parent.end(), Elem{0});
    auto find = [&](Elem x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (Elem a = 0; a < n_; ++a) {
        Elem x = find(d(a)), y = find(r(a));
        if (x != y) parent[std::max(x, y)] = std::min(x, y);
    }
    std::vector<std::vector<Elem>> classes;
    std::vector<std::size_t> slot(n_, npos);
    for (Elem a = 0; a < n_; ++a) {
        Elem root = find(d(a));
        if (slot[root] == npos) {
            slot[root] = classes.size();
            classes.emplace_back();
        }
        classes[slot[root]].push_back(a);
    }
    return classes;
}

}  // namespace morita
