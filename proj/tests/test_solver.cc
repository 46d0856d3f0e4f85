#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hh"

#include <dred/dbuild.hh>
#include <dred/errors.hh>
#include <dred/operations.hh>
#include <dred/random.hh>
#include <dred/solver.hh>

using namespace dred;

TEST_CASE("solver agrees with brute force")
{
    Rng rng(7);
    int yes = 0;
    for (int trial = 0 ; trial < 300 ; ++trial) {
        auto a = random_template(rng, 5, 3, 5, false);
        auto x = random_instance(rng, a, 5, 4);
        long expected = oracle::count_homs(x, a);
        CHECK(count_homs(x, a) == expected);
        auto h = find_hom(x, a);
        CHECK(h.has_value() == (expected > 0));
        if (h)
            CHECK(is_hom(x, a, *h));
        auto plain = find_hom(x, a, { }, SolveOptions{ false });
        CHECK(plain.has_value() == (expected > 0));
        yes += expected > 0;
    }
    CHECK(yes > 30);
    CHECK(yes < 270);
}

TEST_CASE("digraph examples")
{
    CHECK(! find_hom(directed_cycle(3), directed_cycle(2)));
    CHECK(find_hom(directed_cycle(4), directed_cycle(2)));
    CHECK(count_homs(directed_cycle(2), directed_cycle(2)) == 2);
    CHECK(count_homs(single_edge(), zigzag()) == 3);
    CHECK(count_homs(zigzag(), zigzag()) == oracle::count_homs(zigzag(), zigzag()));

    auto q = build_path(make_spec(2, { }));
    CHECK(count_homs(q, q) == 1);
}

TEST_CASE("restrictions")
{
    auto e = single_edge();
    CHECK(count_homs(e, e, Restriction{ { 0, { 1 } } }) == 0);
    long pinned = 0;
    enumerate_homs(zigzag(), zigzag(), { }, [&] (const Hom & h) { pinned += h[1] == 1 ; return true; });
    CHECK(count_homs(zigzag(), zigzag(), Restriction{ { 1, { 1 } } }) == pinned);
    CHECK(pinned > 0);

    long visited = enumerate_homs(zigzag(), zigzag(), { }, [] (const Hom &) { return false; });
    CHECK(visited == 1);
}

TEST_CASE("cores and endomorphisms")
{
    Relation everything{ "E", 2, { } };
    for (int i = 0 ; i < 3 ; ++i)
        for (int j = 0 ; j < 3 ; ++j)
            everything.tuples.push_back({ i, j });
    auto full = make_structure("full", numbered_domain(3), { everything });
    auto c = core_of(full);
    CHECK(c.core.size() == 1);
    CHECK(! is_core(full));
    CHECK(is_hom(full, full, c.retraction));

    auto two = as_structure(directed_cycle(2), Role::Template);
    CHECK(endomorphisms(two).size() == 2);
    CHECK(is_core(two));
    CHECK(is_core(directed_cycle(3)));
    CHECK(! is_core(zigzag()));

    Rng rng(3);
    for (int trial = 0 ; trial < 60 ; ++trial) {
        auto a = random_template(rng, 4, 2, 4, false);
        auto r = core_of(a);
        CHECK(is_core(r.core));
        CHECK(is_hom(a, a, r.retraction));
        for (auto e : r.elements)
            CHECK(r.retraction[e] == e);
        CHECK(long(endomorphisms(a).size()) == oracle::count_homs(a, a));
    }
}

TEST_CASE("operations found by search")
{
    auto z = as_structure(zigzag(), Role::Template);
    auto maj = find_operations(z, majority_identities());
    REQUIRE(maj);
    CHECK(is_polymorphism(maj->at("m"), z));
    CHECK(satisfies(*maj, majority_identities(), 4));

    CHECK(! find_operations(z, maltsev_identities()));

    auto e = as_structure(single_edge(), Role::Template);
    auto p = find_operations(e, maltsev_identities());
    REQUIRE(p);
    CHECK(satisfies(*p, maltsev_identities(), 2));

    auto c3 = as_structure(directed_cycle(3), Role::Template);
    auto q = find_operations(c3, maltsev_identities());
    REQUIRE(q);
    CHECK(is_polymorphism(q->at("p"), c3));
}

TEST_CASE("interpretability at levels")
{
    for (int mi = 0 ; mi < 8 ; ++mi)
        for (int mj = 0 ; mj < 8 ; ++mj) {
            std::vector<int> i, j;
            for (int l = 1 ; l <= 3 ; ++l) {
                if (mi & (1 << (l - 1)))
                    i.push_back(l);
                if (mj & (1 << (l - 1)))
                    j.push_back(l);
            }
            CHECK(interpretable_at_levels(build_path(make_spec(3, i)), make_spec(3, j)) == ((mi & mj) == mi));
        }

    // a zigzag on levels 1..2 folds onto any edge, unless anchors pull it apart
    auto piece = zigzag();
    for (auto & l : piece.levels)
        ++l;
    CHECK(interpretable_at_levels(piece, make_spec(2, { 1 })));
    CHECK(interpretable_at_levels(piece, make_spec(2, { }), { { 0, { 1 } }, { 2, { 3 } } }));
    CHECK(! interpretable_at_levels(piece, make_spec(2, { }), { { 0, { 1 } }, { 1, { 4 } } }));
    CHECK(! interpretable_at_levels(piece, make_spec(2, { }), { { 0, { 0 } } }));
}
