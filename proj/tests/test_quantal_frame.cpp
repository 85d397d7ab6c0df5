#include <set>

#include "morita/catalog.hpp"
#include "morita/quantal_frame.hpp"
#include "oracles.hpp"

using namespace morita;

namespace {

std::vector<std::uint64_t> masks_of(const QuantalFrame& q) {
    std::vector<std::uint64_t> v;
    for (const auto& b : q.carrier().members()) v.push_back(b.word(0));
    std::sort(v.begin(), v.end());
    return v;
}

// least oracle closed ideal containing m
std::uint64_t oracle_close(const std::vector<std::uint64_t>& ideals, std::uint64_t m) {
    std::uint64_t acc = ~std::uint64_t{0};
    for (auto c : ideals)
        if ((m & c) == m) acc &= c;
    return acc;
}

// graph of a partial injection as a bit set over n×n pairs (i,j) meaning i ↦ j
unsigned graph(const std::vector<int>& img, int n) {
    unsigned g = 0;
    for (int i = 0; i < n; ++i)
        if (img[i] >= 0) g |= 1u << (i * n + img[i]);
    return g;
}

}  // namespace

TEST_CASE("lcc of I1 has two elements") {
    auto q = QuantalFrame::lcc(symmetric_inverse_monoid(1));
    CHECK(masks_of(q) == std::vector<std::uint64_t>{0b01, 0b11});
    CHECK(q.partial_units().size() == 2);
    CHECK(iso_check(q.S(), q).size() == 2);
}

TEST_CASE("lcc of I2 against brute force") {
    auto s = symmetric_inverse_monoid(2);
    auto q = QuantalFrame::lcc(s);
    auto t = oracle::symmetric_inverse_table(2);
    auto ideals = oracle::closed_ideals(t, 7);
    REQUIRE(ideals.size() == 16);
    CHECK(masks_of(q) == ideals);
    // products: closure of the pointwise product, from the raw table
    for (std::size_t u = 0; u < 16; ++u)
        for (std::size_t v = 0; v < 16; ++v) {
            std::uint64_t a = q[u].word(0), b = q[v].word(0), p = 0;
            for (std::size_t x = 0; x < 7; ++x)
                for (std::size_t y = 0; y < 7; ++y)
                    if ((a >> x & 1) && (b >> y & 1)) p |= std::uint64_t{1} << oracle::at(t, 7, x, y);
            CHECK(q[q.mul(u, v)].word(0) == oracle_close(ideals, p));
        }
    // each carrier element is a free choice over e1, e2, a, b, with id and swap forced
    std::set<std::uint64_t> choices;
    for (auto m : ideals) choices.insert(m & 0b11110);
    CHECK(choices.size() == 16);
    // unit is E(S), top is S
    CHECK(q[q.unit()] == Bits::of(7, {0, 1, 4, 5}));
    CHECK(q[q.top()] == Bits::full(7));
}

TEST_CASE("partial units of lcc(I2) are the principal ideals") {
    auto s = symmetric_inverse_monoid(2);
    auto q = QuantalFrame::lcc(s);
    const auto& S = s->S();
    std::set<std::size_t> principal;
    for (Elem a = 0; a < 7; ++a) principal.insert(q.carrier().index_of(S.below(a)));
    auto units = q.partial_units();
    CHECK(std::set<std::size_t>(units.begin(), units.end()) == principal);
    // partial units by the defining inequalities, checked with set inclusions
    const Bits e = q[q.unit()];
    std::size_t count = 0;
    for (std::size_t u = 0; u < q.size(); ++u) {
        bool pu = q[q.mul(u, q.star(u))].subset_of(e) && q[q.mul(q.star(u), u)].subset_of(e);
        CHECK(pu == q.is_partial_unit(u));
        count += pu;
    }
    CHECK(count == 7);
    auto pu = partial_units(q);
    CHECK(pu.pseudogroup->size() == 7);
    auto phi = iso_check(*s, q);
    // φ transports the multiplication of S onto that of Q_I
    for (Elem a = 0; a < 7; ++a)
        for (Elem b = 0; b < 7; ++b) CHECK(phi[S.mul(a, b)] == pu.pseudogroup->S().mul(phi[a], phi[b]));
    idempotent_frame_check(*s, q);
}

TEST_CASE("frames: chain and Boolean pseudogroups") {
    auto c = Pseudogroup::make(chain(2));
    auto q = QuantalFrame::lcc(c);
    CHECK(q.size() == 2);
    for (std::size_t u = 0; u < 2; ++u)
        for (std::size_t v = 0; v < 2; ++v) CHECK(q.mul(u, v) == q.meet(u, v));
    for (std::size_t k = 1; k <= 3; ++k) {
        auto b = Pseudogroup::make(boolean(k));
        auto qb = QuantalFrame::lcc(b);
        CHECK(qb.unit() == qb.top());
        CHECK(qb.partial_units().size() == qb.size());
        iso_check(*b, qb);
    }
}

TEST_CASE("quantale axioms hold across the small catalog") {
    for (const auto& name : catalog_pseudogroups(16)) {
        INFO(name);
        auto s = Pseudogroup::make(catalog_semigroup(name));
        auto q = QuantalFrame::lcc(s);
        q.verify();
        const std::size_t k = q.size();
        for (std::size_t u = 0; u < k; ++u) {
            CHECK(q.mul(q.unit(), u) == u);
            CHECK(q.star(q.star(u)) == u);
            std::size_t g = q.mul(q.mul(u, q.star(u)), u);
            if (q.leq(g, u)) CHECK(g == u);
            for (std::size_t v = 0; v < k; ++v) {
                CHECK(q.star(q.mul(u, v)) == q.mul(q.star(v), q.star(u)));
                CHECK(q[q.meet(u, v)] == (q[u] & q[v]));
            }
        }
        CHECK(iso_check(*s, q).size() == s->size());
        idempotent_frame_check(*s, q);
    }
}

TEST_CASE("generated carrier equals the filtered one") {
    for (std::size_t n = 1; n <= 2; ++n) {
        auto s = symmetric_inverse_monoid(n);
        LccOptions gen;
        gen.filter_bound = 0;
        auto g = QuantalFrame::lcc(s, gen);
        auto f = QuantalFrame::lcc(s);
        CHECK(g.generated());
        CHECK(!f.generated());
        CHECK(g.carrier().members() == f.carrier().members());
        CHECK(g.mult_digest() == f.mult_digest());
    }
}

TEST_CASE("lcc of I3 through the generated carrier") {
    auto s = symmetric_inverse_monoid(3);
    auto q = QuantalFrame::lcc(s);
    CHECK(q.generated());
    // closed ideals of I_n are the sets of partial injections whose graph lies
    // inside a fixed relation on n points
    auto maps = oracle::partial_injections(3, 3);
    std::set<std::vector<bool>> expect;
    for (unsigned r = 0; r < 512; ++r) {
        std::vector<bool> in(maps.size());
        for (std::size_t i = 0; i < maps.size(); ++i) in[i] = (graph(maps[i], 3) & ~r) == 0;
        expect.insert(in);
    }
    CHECK(expect.size() == 512);
    REQUIRE(q.size() == 512);
    std::set<std::vector<bool>> mine;
    for (const auto& b : q.carrier().members()) {
        std::vector<bool> in(34);
        for (std::size_t i = 0; i < 34; ++i) in[i] = b.test(i);
        mine.insert(in);
    }
    CHECK(mine == expect);
    CHECK(iso_check(*s, q).size() == 34);
    idempotent_frame_check(*s, q);
}

TEST_CASE("carrier bound") {
    LccOptions small;
    small.max_carrier = 100;
    CHECK(throws_kind(ErrorKind::TooLarge, [&] { QuantalFrame::lcc(symmetric_inverse_monoid(3), small); }));
    CHECK(throws_kind(ErrorKind::TooLarge, [&] { QuantalFrame::lcc(symmetric_inverse_monoid(4)); }));
}
