#include "morita/catalog.hpp"
#include "oracles.hpp"

using namespace morita;

TEST_CASE("symmetric inverse monoid sizes follow the rook count") {
    for (std::size_t n = 1; n <= 4; ++n) {
        auto p = symmetric_inverse_monoid(n);
        CHECK(p->size() == oracle::rook_count(n));
        CHECK(p->S().idempotents().size() == (std::size_t{1} << n));
    }
    CHECK(oracle::rook_count(2) == 7);
    CHECK(oracle::rook_count(3) == 34);
    CHECK(oracle::rook_count(4) == 209);
    CHECK(throws_kind(ErrorKind::OutOfRange, [] { symmetric_inverse_monoid(0); }));
    CHECK(throws_kind(ErrorKind::OutOfRange, [] { symmetric_inverse_monoid(5); }));
}

TEST_CASE("canonical element order matches an independent enumeration") {
    for (int n = 1; n <= 3; ++n) {
        auto mine = partial_injections(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
        auto ref = oracle::partial_injections(n, n);
        REQUIRE(mine.size() == ref.size());
        for (std::size_t i = 0; i < mine.size(); ++i) CHECK(mine[i].img == ref[i]);
        CHECK(symmetric_inverse_monoid_table(static_cast<std::size_t>(n)).table() ==
              oracle::symmetric_inverse_table(n));
    }
}

TEST_CASE("E(I_n) is a Boolean lattice") {
    auto p = symmetric_inverse_monoid(3);
    const auto& s = p->S();
    const auto& idem = s.idempotents();
    REQUIRE(idem.size() == 8);
    // each idempotent is the identity on its domain; order = inclusion of domains
    auto maps = partial_injections(3, 3);
    for (Elem e : idem)
        for (Elem f : idem) {
            bool incl = (maps[e].domain_mask() & ~maps[f].domain_mask()) == 0;
            CHECK(s.natural_leq(e, f) == incl);
        }
}

TEST_CASE("other catalog entries") {
    CHECK(Pseudogroup::make(chain(3))->size() == 3);
    CHECK(Pseudogroup::make(boolean(2))->top() == 3);
    CHECK(Pseudogroup::make(group_with_zero(2))->size() == 3);
    CHECK(throws_kind(ErrorKind::MissingJoin, [] { Pseudogroup::from(brandt_b2()); }));
    CHECK(throws_kind(ErrorKind::BadInput, [] { catalog_semigroup("nope"); }));
    CHECK(catalog_semigroup("I2").size() == 7);
    CHECK(!catalog_entries().empty());
}

TEST_CASE("atlas bimodule between one and two points") {
    auto b = atlas_bimodule(1, 2);
    CHECK(b.size() == 3);
    CHECK(b.S().size() == 2);
    CHECK(b.T().size() == 7);
    // ⟨x,y⟩ = x∘y⁻¹ and [x,y] = x⁻¹∘y by construction
    auto xs = partial_injections(2, 1);
    auto smaps = partial_injections(1, 1);
    auto tmaps = partial_injections(2, 2);
    for (Elem x = 0; x < 3; ++x)
        for (Elem y = 0; y < 3; ++y) {
            CHECK(smaps[b.ip_s(x, y)] == compose(xs[x], xs[y].inverse()));
            CHECK(tmaps[b.ip_t(x, y)] == compose(xs[x].inverse(), xs[y]));
        }
}
