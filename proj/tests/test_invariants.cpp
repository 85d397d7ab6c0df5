#include "fixtures.hpp"
#include "morita/catalog.hpp"
#include "morita/invariants.hpp"
#include "oracles.hpp"

using namespace morita;
using namespace fixture;

namespace {

std::vector<std::pair<std::string, PseudogroupPtr>> catalog_up_to(std::size_t n) {
    std::vector<std::pair<std::string, PseudogroupPtr>> out;
    for (const auto& name : catalog_pseudogroups(n)) out.emplace_back(name, Pseudogroup::make(catalog_semigroup(name)));
    return out;
}

// closed ideals from the raw table that are also two-sided
std::vector<std::uint64_t> sup_ideals_by_hand(const oracle::Table& t, std::size_t n) {
    std::vector<std::uint64_t> out;
    for (auto m : oracle::closed_ideals(t, n)) {
        bool ok = true;
        for (std::size_t a = 0; a < n && ok; ++a)
            if (m >> a & 1)
                for (std::size_t b = 0; b < n && ok; ++b)
                    ok = (m >> oracle::at(t, n, a, b) & 1) && (m >> oracle::at(t, n, b, a) & 1);
        if (ok) out.push_back(m);
    }
    return out;
}

bool fundamental_by_hand(const oracle::Table& t, std::size_t n) {
    for (std::size_t a = 0; a < n; ++a) {
        if (oracle::idempotent(t, n, a)) continue;
        bool central = true;
        for (std::size_t e = 0; e < n; ++e)
            if (oracle::idempotent(t, n, e) && oracle::at(t, n, a, e) != oracle::at(t, n, e, a)) central = false;
        if (central) return false;
    }
    return true;
}

std::vector<std::uint64_t> masks(const std::vector<Bits>& v) {
    std::vector<std::uint64_t> out;
    for (const auto& b : v) out.push_back(b.word(0));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_CASE("sup-ideals of small pseudogroups") {
    auto i2 = symmetric_inverse_monoid(2);
    auto si = sup_ideals(*i2);
    REQUIRE(si.size() == 2);
    CHECK(si[0] == Bits::single(7, 0));
    CHECK(si[1] == Bits::full(7));
    CHECK(sup_ideals(*Pseudogroup::make(chain(3))).size() == 3);
    CHECK(sup_ideals(*symmetric_inverse_monoid(1)).size() == 2);
    // ranks are not join-closed: I3 and I4 have only the trivial ones
    CHECK(sup_ideals(*symmetric_inverse_monoid(3)).size() == 2);
    CHECK(sup_ideals(*symmetric_inverse_monoid(4)).size() == 2);
}

TEST_CASE("sup-ideals agree with brute force and with the generator route") {
    for (const auto& [name, p] : catalog_up_to(16)) {
        INFO(name);
        auto by_hand = sup_ideals_by_hand(p->S().table(), p->size());
        std::sort(by_hand.begin(), by_hand.end());
        CHECK(masks(sup_ideals(*p)) == by_hand);
        CHECK(sup_ideals_from_principal(*p) == sup_ideals(*p));
        CHECK_FALSE(ideal_closure_failure(*p).has_value());
    }
}

TEST_CASE("principal sup-ideals are the least containing their generator") {
    for (const auto& [name, p] : catalog_up_to(16)) {
        INFO(name);
        auto all = sup_ideals(*p);
        for (Elem a = 0; a < p->size(); ++a) {
            Bits pa = principal_sup_ideal(*p, a);
            for (const auto& i : all)
                if (i.test(a)) CHECK(pa.subset_of(i));
            CHECK(std::find(all.begin(), all.end(), pa) != all.end());
        }
    }
}

TEST_CASE("0-simplifying by three routes") {
    auto i2 = is_zero_simplifying(*symmetric_inverse_monoid(2));
    CHECK(i2.value);
    CHECK(i2.by_ideals);
    CHECK(i2.by_pencils);
    CHECK(i2.by_pairs);
    auto c3 = is_zero_simplifying(*Pseudogroup::make(chain(3)));
    CHECK_FALSE(c3.value);
    REQUIRE(c3.proper_ideal.has_value());
    CHECK(*c3.proper_ideal == Bits::from_mask(3, 0b011));
    CHECK(is_zero_simplifying(*symmetric_inverse_monoid(1)).value);
    CHECK(is_zero_simplifying(*Pseudogroup::make(chain(1))).value);
}

TEST_CASE("the three routes agree on every catalog pseudogroup") {
    for (const auto& [name, p] : catalog_up_to(209)) {
        INFO(name);
        SimplifyingReport r;
        REQUIRE_NOTHROW(r = is_zero_simplifying(*p));
        if (p->size() <= 16) {
            auto by_hand = sup_ideals_by_hand(p->S().table(), p->size());
            CHECK(r.value == (by_hand.size() <= 2));
        }
    }
}

TEST_CASE("pencils") {
    auto i2 = symmetric_inverse_monoid(2);
    auto p = pencil_preorder(*i2, 5, 1);
    REQUIRE(p.has_value());
    CHECK(p->elements == std::vector<Elem>{1, 3});
    CHECK(is_pencil(*i2, *p));
    for (Elem e : i2->S().idempotents()) {
        auto q = pencil_preorder(*i2, e, e);
        REQUIRE(q.has_value());
        if (e != 0) CHECK(q->elements == std::vector<Elem>{e});
    }
    auto c3 = Pseudogroup::make(chain(3));
    CHECK_FALSE(pencil_preorder(*c3, 2, 1).has_value());
    CHECK(pencil_preorder(*c3, 1, 2).has_value());
    CHECK(throws_kind(ErrorKind::BadInput, [&] { pencil_preorder(*i2, 2, 1); }));
}

TEST_CASE("pencil preorder is reflexive and transitive") {
    for (const char* name : {"I2", "I3", "boolean2", "chain3", "zgroup2"}) {
        INFO(name);
        auto p = Pseudogroup::make(catalog_semigroup(name));
        const auto& S = p->S();
        const auto& ids = S.idempotents();
        for (Elem e : ids) CHECK(pencil_preorder(*p, e, e).has_value());
        for (Elem e : ids)
            for (Elem f : ids)
                for (Elem g : ids) {
                    auto x = pencil_preorder(*p, e, f), y = pencil_preorder(*p, f, g);
                    if (!x || !y) continue;
                    // Y·X is a pencil from e to g
                    Pencil z{e, g, {}};
                    for (Elem a : x->elements)
                        for (Elem b : y->elements) z.elements.push_back(S.mul(b, a));
                    CHECK(is_pencil(*p, z));
                    CHECK(pencil_preorder(*p, e, g).has_value());
                }
    }
}

TEST_CASE("pencils transport along D") {
    auto i3 = symmetric_inverse_monoid(3);
    const auto& S = i3->S();
    // e –a→ e′ means d(a) = e, r(a) = e′
    for (Elem e : S.idempotents())
        for (Elem f : S.idempotents())
            for (Elem a = 0; a < S.size(); ++a) {
                if (S.d(a) != e) continue;
                for (Elem b = 0; b < S.size(); ++b) {
                    if (S.d(b) != f) continue;
                    auto x = pencil_preorder(*i3, S.r(a), S.r(b));
                    if (!x) continue;
                    Pencil moved{e, f, transport_pencil(*i3, x->elements, a, b)};
                    REQUIRE(is_pencil(*i3, moved));
                }
            }
}

TEST_CASE("fundamental") {
    CHECK(is_fundamental(symmetric_inverse_monoid(2)->S()));
    auto z2 = group_with_zero(2);
    CHECK_FALSE(is_fundamental(z2));
    CHECK(fundamental_witness(z2) == Elem{2});
    CHECK(is_fundamental(chain(4)));
    CHECK(is_fundamental(boolean(3)));
    for (const auto& [name, p] : catalog_up_to(209)) {
        INFO(name);
        CHECK(is_fundamental(p->S()) == fundamental_by_hand(p->S().table(), p->size()));
    }
    CHECK(is_fundamental(brandt_b2()));
}

TEST_CASE("D-class counts of the symmetric inverse monoids") {
    for (std::size_t n = 1; n <= 4; ++n) CHECK(symmetric_inverse_monoid(n)->S().d_class_count() == n + 1);
}

TEST_CASE("invariance across certified enlargements") {
    auto i1 = symmetric_inverse_monoid(1), i2 = symmetric_inverse_monoid(2), i3 = symmetric_inverse_monoid(3);
    {
        auto en = enlarge_from_bimodule(EquivalenceBimodule::verify(i1, i2, running_from_i2()));
        auto r = invariance_report(*i1, *i2, en);
        CHECK(r.s_simplifying.value);
        CHECK(r.t_simplifying.value);
        CHECK(r.s_fundamental);
        CHECK(r.t_fundamental);
        CHECK(r.s_d_classes == 2);
        CHECK(r.t_d_classes == 3);
        const auto& U = en.u->S();
        for (const auto* ws : {&r.s_witnesses, &r.t_witnesses}) {
            CHECK_FALSE(ws->empty());
            for (auto w : *ws) {
                CHECK(U.r(w.u) == w.idempotent);
                CHECK(U.d(w.u) == w.target);
            }
        }
        for (auto w : r.s_witnesses) CHECK(en.s_report.s.local[w.target] != npos);
        for (auto w : r.t_witnesses) CHECK(en.t_report.s.local[w.target] != npos);
    }
    {
        auto en = enlarge_from_bimodule(EquivalenceBimodule::verify(i1, i3, atlas_bimodule(1, 3)));
        auto r = invariance_report(*i1, *i3, en);
        CHECK(r.s_d_classes == 2);
        CHECK(r.t_d_classes == 4);
        CHECK(r.t_simplifying.value);
        CHECK(r.u_fundamental);
    }
    for (const char* name : {"I2", "chain3", "boolean2", "zgroup2", "zgroup3"}) {
        INFO(name);
        auto p = Pseudogroup::make(catalog_semigroup(name));
        auto en = enlarge_from_bimodule(EquivalenceBimodule::verify(p, p, self_biaction(p)));
        auto r = invariance_report(*p, *p, en);
        CHECK(r.s_simplifying.value == r.t_simplifying.value);
        CHECK(r.s_d_classes == r.t_d_classes);
    }
}

TEST_CASE("D-class counts separate Im and In exactly when m differs from n") {
    for (std::size_t m = 1; m <= 4; ++m)
        for (std::size_t n = 1; n <= 4; ++n)
            CHECK((symmetric_inverse_monoid(m)->S().d_class_count() != symmetric_inverse_monoid(n)->S().d_class_count()) ==
                  (m != n));
}
