#include "morita/lattice.hpp"

#include <algorithm>

#include "morita/errors.hpp"
#include "morita/kernels.hpp"

namespace morita {

FiniteLattice FiniteLattice::from_order(std::vector<Bits> below) {
    FiniteLattice l;
    const std::size_t k = below.size();
    if (k == 0) fail(ErrorKind::NotDistributiveLattice, "empty lattice");
    l.below_ = std::move(below);
    std::vector<Bits> above(k, Bits(k));
    for (std::size_t a = 0; a < k; ++a) l.below_[a].for_each([&](std::size_t b) { above[b].set(a); });
    l.join_.assign(k * k, npos);
    l.meet_.assign(k * k, npos);
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = a; b < k; ++b) {
            Bits ub = above[a] & above[b];
            Bits lb = l.below_[a] & l.below_[b];
            std::size_t j = npos, m = npos;
            ub.for_each([&](std::size_t c) {
                if (j == npos && ub.subset_of(above[c])) j = c;
            });
            lb.for_each([&](std::size_t c) {
                if (m == npos && lb.subset_of(l.below_[c])) m = c;
            });
            if (j == npos || m == npos) fail(ErrorKind::NotDistributiveLattice, "order is not a lattice", {a, b});
            l.join_[a * k + b] = l.join_[b * k + a] = j;
            l.meet_[a * k + b] = l.meet_[b * k + a] = m;
        }
    l.bottom_ = l.top_ = 0;
    for (std::size_t a = 1; a < k; ++a) {
        l.bottom_ = l.meet_[l.bottom_ * k + a];
        l.top_ = l.join_[l.top_ * k + a];
    }
    return l;
}

std::size_t FiniteLattice::join_of(const std::vector<std::size_t>& xs) const {
    std::size_t acc = bottom_;
    for (std::size_t x : xs) acc = join(acc, x);
    return acc;
}

std::optional<std::array<std::size_t, 3>> FiniteLattice::distributivity_failure() const {
    const std::size_t k = size();
    return first_triple(k, k, k, [&](std::size_t a, std::size_t b, std::size_t c) {
        return meet(a, join(b, c)) != join(meet(a, b), meet(a, c));
    });
}

ClosureFamily::ClosureFamily(std::size_t ground, std::vector<Bits> members) : ground_(ground) {
    std::sort(members.begin(), members.end(), [](const Bits& a, const Bits& b) { return canonical_less(a, b); });
    members.erase(std::unique(members.begin(), members.end()), members.end());
    members_ = std::move(members);
    index_.reserve(members_.size() * 2);
    for (std::size_t i = 0; i < members_.size(); ++i) {
        if (members_[i].size() != ground_) fail(ErrorKind::BadInput, "member has the wrong ground size", {i});
        index_.emplace(members_[i], i);
    }
}

std::size_t ClosureFamily::index_of(const Bits& b) const {
    auto it = index_.find(b);
    return it == index_.end() ? npos : it->second;
}

std::size_t ClosureFamily::closure_index(const Bits& x) const {
    Bits acc = Bits::full(ground_);
    bool any = false;
    for (const auto& m : members_)
        if (x.subset_of(m)) {
            acc &= m;
            any = true;
        }
    if (!any) return npos;
    return index_of(acc);
}

FiniteLattice ClosureFamily::lattice() const {
    const std::size_t k = members_.size();
    if (k == 0) fail(ErrorKind::NotDistributiveLattice, "empty family");
    FiniteLattice l;
    l.below_.assign(k, Bits(k));
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b)
            if (members_[b].subset_of(members_[a])) l.below_[a].set(b);
    l.join_.assign(k * k, npos);
    l.meet_.assign(k * k, npos);
    for_each_index(k, [&](std::size_t a) {
        for (std::size_t b = 0; b < k; ++b) {
            l.meet_[a * k + b] = index_of(members_[a] & members_[b]);
            l.join_[a * k + b] = closure_index(members_[a] | members_[b]);
        }
    });
    for (std::size_t i = 0; i < k * k; ++i)
        if (l.meet_[i] == npos || l.join_[i] == npos)
            fail(ErrorKind::NotDistributiveLattice, "family is not closed under intersection", {i / k, i % k});
    l.bottom_ = 0;
    l.top_ = k - 1;
    for (std::size_t a = 0; a < k; ++a) {
        l.bottom_ = l.meet_[l.bottom_ * k + a];
        l.top_ = l.join_[l.top_ * k + a];
    }
    return l;
}

}  // namespace morita
