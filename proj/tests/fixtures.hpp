#pragma once

// Biactions shared by several test files, built straight from tables.

#include <algorithm>

#include "catch_amalgamated.hpp"

#include "morita/bimodules.hpp"
#include "morita/catalog.hpp"
#include "oracles.hpp"

namespace fixture {

using namespace morita;

// X = {0, e1, b} ⊂ I2 with S = e1·I2·e1 = {0, e1}, products taken in I2
inline Biaction running_from_i2() {
    auto t = oracle::symmetric_inverse_table(2);
    auto inv = oracle::inverses(t, 7);
    const std::vector<std::size_t> xs{0, 1, 3}, ss{0, 1};
    auto pos = [](const std::vector<std::size_t>& v, std::size_t a) {
        auto it = std::find(v.begin(), v.end(), a);
        REQUIRE(it != v.end());
        return static_cast<Elem>(it - v.begin());
    };
    RawTable rs;
    rs.n = 2;
    for (auto a : ss)
        for (auto b : ss) rs.mult.push_back(pos(ss, oracle::at(t, 7, a, b)));
    BiactionTables b;
    b.s = share(InverseSemigroup::validate(rs));
    b.t = share(symmetric_inverse_monoid_table(2));
    b.x_size = 3;
    for (auto a : ss)
        for (auto x : xs) b.lact.push_back(pos(xs, oracle::at(t, 7, a, x)));
    for (auto x : xs)
        for (std::size_t c = 0; c < 7; ++c) b.ract.push_back(pos(xs, oracle::at(t, 7, x, c)));
    for (auto x : xs)
        for (auto y : xs) {
            b.inner_s.push_back(pos(ss, oracle::at(t, 7, x, inv[y])));
            b.inner_t.push_back(oracle::at(t, 7, inv[x], y));
        }
    return Biaction::verify(std::move(b));
}

// S over (S,S): both actions by multiplication, <x,y> = xy⁻¹, [x,y] = x⁻¹y
inline Biaction self_biaction(const PseudogroupPtr& p) {
    const auto& S = p->S();
    const std::size_t n = S.size();
    BiactionTables b;
    b.s = b.t = semigroup_of(p);
    b.x_size = n;
    for (Elem a = 0; a < n; ++a)
        for (Elem x = 0; x < n; ++x) b.lact.push_back(S.mul(a, x));
    for (Elem x = 0; x < n; ++x)
        for (Elem a = 0; a < n; ++a) b.ract.push_back(S.mul(x, a));
    for (Elem x = 0; x < n; ++x)
        for (Elem y = 0; y < n; ++y) {
            b.inner_s.push_back(S.mul(x, S.inv(y)));
            b.inner_t.push_back(S.mul(S.inv(x), y));
        }
    return Biaction::verify(std::move(b));
}

inline bool same_tables(const Biaction& a, const Biaction& b) {
    const auto &x = a.tables(), &y = b.tables();
    return x.x_size == y.x_size && x.lact == y.lact && x.ract == y.ract && x.inner_s == y.inner_s &&
           x.inner_t == y.inner_t;
}

}  // namespace fixture
