#include "morita/catalog.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <string>

#include "morita/errors.hpp"

namespace morita {

std::uint64_t PartialMap::domain_mask() const {
    std::uint64_t m = 0;
    for (std::size_t i = 0; i < img.size(); ++i)
        if (img[i] >= 0) m |= std::uint64_t{1} << i;
    return m;
}

std::uint64_t PartialMap::image_mask() const {
    std::uint64_t m = 0;
    for (int v : img)
        if (v >= 0) m |= std::uint64_t{1} << v;
    return m;
}

PartialMap PartialMap::inverse() const {
    PartialMap r{std::vector<int>(tgt, -1), img.size()};
    for (std::size_t i = 0; i < img.size(); ++i)
        if (img[i] >= 0) r.img[static_cast<std::size_t>(img[i])] = static_cast<int>(i);
    return r;
}

std::string PartialMap::label() const {
    std::string s;
    for (std::size_t i = 0; i < img.size(); ++i) {
        if (img[i] < 0) continue;
        if (!s.empty()) s += ',';
        s += std::to_string(i + 1) + ">" + std::to_string(img[i] + 1);
    }
    return s.empty() ? "0" : s;
}

PartialMap compose(const PartialMap& s, const PartialMap& t) {
    PartialMap r{std::vector<int>(t.img.size(), -1), s.tgt};
    for (std::size_t i = 0; i < t.img.size(); ++i) {
        int mid = t.img[i];
        if (mid >= 0 && static_cast<std::size_t>(mid) < s.img.size()) r.img[i] = s.img[static_cast<std::size_t>(mid)];
    }
    return r;
}

std::vector<PartialMap> partial_injections(std::size_t src, std::size_t tgt) {
    std::vector<PartialMap> out;
    for (std::uint64_t dom = 0; dom < (std::uint64_t{1} << src); ++dom) {
        std::vector<std::size_t> pts;
        for (std::size_t i = 0; i < src; ++i)
            if (dom >> i & 1) pts.push_back(i);
        // Injective image tuples in lexicographic order.
        std::vector<int> tuple(pts.size(), -1);
        std::vector<bool> used(tgt, false);
        auto rec = [&](auto&& self, std::size_t k) -> void {
            if (k == pts.size()) {
                PartialMap m{std::vector<int>(src, -1), tgt};
                for (std::size_t j = 0; j < pts.size(); ++j) m.img[pts[j]] = tuple[j];
                out.push_back(std::move(m));
                return;
            }
            for (std::size_t v = 0; v < tgt; ++v) {
                if (used[v]) continue;
                used[v] = true;
                tuple[k] = static_cast<int>(v);
                self(self, k + 1);
                used[v] = false;
            }
        };
        rec(rec, 0);
    }
    return out;
}

InverseSemigroup from_partial_maps(const std::vector<PartialMap>& maps) {
    std::map<std::vector<int>, Elem> index;
    for (Elem i = 0; i < maps.size(); ++i) index.emplace(maps[i].img, i);
    RawTable raw;
    raw.n = maps.size();
    raw.mult.resize(raw.n * raw.n);
    for (Elem a = 0; a < raw.n; ++a)
        for (Elem b = 0; b < raw.n; ++b) {
            auto it = index.find(compose(maps[a], maps[b]).img);
            if (it == index.end()) fail(ErrorKind::BadInput, "partial maps not closed under composition", {a, b});
            raw.mult[a * raw.n + b] = it->second;
        }
    for (const auto& m : maps) raw.names.push_back(m.label());
    return InverseSemigroup::validate(std::move(raw));
}

InverseSemigroup symmetric_inverse_monoid_table(std::size_t n) {
    if (n < 1 || n > 4) fail(ErrorKind::OutOfRange, "symmetric inverse monoid supported for 1 <= n <= 4", {n});
    return from_partial_maps(partial_injections(n, n));
}

PseudogroupPtr symmetric_inverse_monoid(std::size_t n) { return Pseudogroup::make(symmetric_inverse_monoid_table(n)); }

std::size_t symmetric_inverse_monoid_index(std::size_t n, const PartialMap& m) {
    auto all = partial_injections(n, n);
    auto it = std::find(all.begin(), all.end(), m);
    if (it == all.end()) fail(ErrorKind::BadInput, "not a partial injection of the right size");
    return static_cast<std::size_t>(it - all.begin());
}

InverseSemigroup chain(std::size_t k) {
    if (k < 1) fail(ErrorKind::OutOfRange, "chain needs at least one element");
    RawTable raw;
    raw.n = k;
    raw.mult.resize(k * k);
    for (Elem a = 0; a < k; ++a)
        for (Elem b = 0; b < k; ++b) raw.mult[a * k + b] = std::min(a, b);
    return InverseSemigroup::validate(std::move(raw));
}

InverseSemigroup boolean(std::size_t k) {
    if (k > 6) fail(ErrorKind::OutOfRange, "boolean lattice supported for k <= 6", {k});
    const std::size_t n = std::size_t{1} << k;
    RawTable raw;
    raw.n = n;
    raw.mult.resize(n * n);
    for (Elem a = 0; a < n; ++a)
        for (Elem b = 0; b < n; ++b) raw.mult[a * n + b] = a & b;
    return InverseSemigroup::validate(std::move(raw));
}

InverseSemigroup group_with_zero(std::size_t m) {
    if (m < 1) fail(ErrorKind::OutOfRange, "group order must be positive");
    const std::size_t n = m + 1;
    RawTable raw;
    raw.n = n;
    raw.mult.assign(n * n, 0);
    for (Elem a = 1; a < n; ++a)
        for (Elem b = 1; b < n; ++b) raw.mult[a * n + b] = 1 + ((a - 1) + (b - 1)) % m;
    raw.names.push_back("0");
    for (Elem a = 1; a < n; ++a) raw.names.push_back("g" + std::to_string(a - 1));
    return InverseSemigroup::validate(std::move(raw));
}

InverseSemigroup brandt_b2() {
    // I₂ without the two units: 0, e=1>1, f=2>2, a=1>2, a^-1=2>1.
    auto mk = [](int x, int y) { return PartialMap{{x, y}, 2}; };
    std::vector<PartialMap> maps{mk(-1, -1), mk(0, -1), mk(-1, 1), mk(1, -1), mk(-1, 0)};
    auto s = from_partial_maps(maps);
    RawTable raw{s.size(), s.table(), {}, {}, {"0", "e", "f", "a", "a^-1"}};
    return InverseSemigroup::validate(std::move(raw));
}

namespace {

Biaction atlas_from(const std::vector<PartialMap>& xs, SemigroupPtr S, SemigroupPtr T,
                    const std::vector<PartialMap>& smaps, const std::vector<PartialMap>& tmaps) {
    std::map<std::vector<int>, Elem> xi, si, ti;
    for (Elem i = 0; i < xs.size(); ++i) xi.emplace(xs[i].img, i);
    for (Elem i = 0; i < smaps.size(); ++i) si.emplace(smaps[i].img, i);
    for (Elem i = 0; i < tmaps.size(); ++i) ti.emplace(tmaps[i].img, i);
    auto look = [](const std::map<std::vector<int>, Elem>& idx, const PartialMap& p, const char* what) {
        auto it = idx.find(p.img);
        if (it == idx.end()) fail(ErrorKind::BadInput, std::string("atlas not closed: ") + what + " " + p.label());
        return it->second;
    };
    BiactionTables t;
    t.s = std::move(S);
    t.t = std::move(T);
    const std::size_t k = xs.size(), ns = smaps.size(), nt = tmaps.size();
    t.x_size = k;
    t.lact.resize(ns * k);
    t.ract.resize(k * nt);
    t.inner_s.resize(k * k);
    t.inner_t.resize(k * k);
    for (Elem a = 0; a < ns; ++a)
        for (Elem x = 0; x < k; ++x) t.lact[a * k + x] = look(xi, compose(smaps[a], xs[x]), "left action");
    for (Elem x = 0; x < k; ++x)
        for (Elem c = 0; c < nt; ++c) t.ract[x * nt + c] = look(xi, compose(xs[x], tmaps[c]), "right action");
    for (Elem x = 0; x < k; ++x)
        for (Elem y = 0; y < k; ++y) {
            t.inner_s[x * k + y] = look(si, compose(xs[x], xs[y].inverse()), "<x,y>");
            t.inner_t[x * k + y] = look(ti, compose(xs[x].inverse(), xs[y]), "[x,y]");
        }
    return Biaction::verify(std::move(t));
}

}  // namespace

Biaction atlas_bimodule(std::size_t m, std::size_t n) {
    auto S = share(symmetric_inverse_monoid_table(m));
    auto T = share(symmetric_inverse_monoid_table(n));
    return atlas_from(partial_injections(n, m), S, T, partial_injections(m, m), partial_injections(n, n));
}

Biaction atlas_bimodule_restricted(std::size_t m, std::size_t n, std::uint64_t domain) {
    std::vector<PartialMap> xs;
    for (auto& p : partial_injections(n, m))
        if ((p.domain_mask() & ~domain) == 0) xs.push_back(p);
    std::vector<PartialMap> tmaps;
    for (auto& p : partial_injections(n, n)) {
        bool ident = true;
        for (std::size_t i = 0; i < n; ++i)
            if (p.img[i] >= 0 && p.img[i] != static_cast<int>(i)) ident = false;
        if (ident) tmaps.push_back(p);
    }
    auto S = share(symmetric_inverse_monoid_table(m));
    auto T = share(from_partial_maps(tmaps));
    return atlas_from(xs, S, T, partial_injections(m, m), tmaps);
}

std::vector<CatalogEntry> catalog_entries() {
    return {
        {"I1", "symmetric inverse monoid on 1 point"},
        {"I2", "symmetric inverse monoid on 2 points"},
        {"I3", "symmetric inverse monoid on 3 points"},
        {"I4", "symmetric inverse monoid on 4 points"},
        {"chain<k>", "k-element chain under min"},
        {"boolean<k>", "subsets of a k-set under intersection"},
        {"zgroup<m>", "cyclic group of order m with zero"},
        {"B2", "five-element Brandt semigroup (not a pseudogroup)"},
        {"atlas<m>x<n>", "partial injections n -> m as an (I_m, I_n) bimodule"},
    };
}

std::vector<std::string> catalog_pseudogroups(std::size_t max_size) {
    std::vector<std::pair<std::size_t, std::string>> out;
    const std::size_t rook[] = {0, 2, 7, 34, 209};
    for (std::size_t n = 1; n <= 4; ++n) out.emplace_back(rook[n], "I" + std::to_string(n));
    for (std::size_t k = 1; k <= 8; ++k) out.emplace_back(k, "chain" + std::to_string(k));
    for (std::size_t k = 1; k <= 6; ++k) out.emplace_back(std::size_t{1} << k, "boolean" + std::to_string(k));
    for (std::size_t m = 1; m <= 8; ++m) out.emplace_back(m + 1, "zgroup" + std::to_string(m));
    std::vector<std::string> names;
    for (auto& [n, name] : out)
        if (n <= max_size) names.push_back(name);
    return names;
}

namespace {

std::size_t parse_param(const std::string& name, const std::string& prefix) {
    std::string digits = name.substr(prefix.size());
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; }) ||
        digits.size() > 3)
        fail(ErrorKind::BadInput, "bad catalog parameter in '" + name + "'");
    return std::stoul(digits);
}

}  // namespace

InverseSemigroup catalog_semigroup(const std::string& name) {
    if (name == "B2") return brandt_b2();
    if (name.rfind("I", 0) == 0) return symmetric_inverse_monoid_table(parse_param(name, "I"));
    if (name.rfind("chain", 0) == 0) return chain(parse_param(name, "chain"));
    if (name.rfind("boolean", 0) == 0) return boolean(parse_param(name, "boolean"));
    if (name.rfind("zgroup", 0) == 0) return group_with_zero(parse_param(name, "zgroup"));
    fail(ErrorKind::BadInput, "unknown catalog entry '" + name + "'");
}

}  // namespace morita
