#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hh"

#include <dred/dbuild.hh>
#include <dred/errors.hh>
#include <dred/operations.hh>
#include <dred/polylift.hh>
#include <dred/random.hh>
#include <dred/solver.hh>
#include <dred/verify.hh>

using namespace dred;

namespace
{
    auto kind_of(auto && f) -> std::optional<ErrorKind>
    {
        try {
            f();
        }
        catch (const Error & e) {
            return e.kind();
        }
        return std::nullopt;
    }

    auto boolean_majority() -> OpTable
    {
        return make_op("m", 3, 2, [] (const std::vector<int> & a) { return a[0] + a[1] + a[2] >= 2 ? 1 : 0; });
    }

    auto as_function(const LiftedOp & f)
    {
        return [&f] (const std::vector<int> & c) { return f(c); };
    }
}

TEST_CASE("zigzag operations")
{
    auto z = zigzag_structure();
    CHECK(zz_median()({ z00, z01, z10 }) == z01);
    CHECK(zz_meet()({ z10, z01 }) == z01);
    CHECK(zz_join()({ z10, z01 }) == z10);
    CHECK(zz_p1()({ z01, z00, z11 }) == z01);
    CHECK(zz_allmin(3)({ z10, z11, z01 }) == z01);

    for (auto & f : { zz_meet(), zz_join(), zz_median(), zz_allmin(2), zz_allmin(3), zz_allmin(4), zz_p1(), zz_p2() }) {
        CHECK(is_polymorphism(f, z));
        CHECK(zz_preserves_sides(f));
    }
    auto flip = make_op("f", 1, 4, [] (const std::vector<int> & a) { return a[0] ^ 1; });
    CHECK(! zz_preserves_sides(flip));

    CHECK(satisfies(OpMap{ { "m", zz_median() } }, majority_identities(), 4));
    CHECK(satisfies(OpMap{ { "w", zz_allmin(3) } }, wnu_identities(3), 4));
    CHECK(satisfies(OpMap{ { "w", zz_allmin(4) } }, wnu_identities(4), 4));
    CHECK(satisfies(OpMap{ { "p1", zz_p1() }, { "p2", zz_p2() } }, three_permutability_identities(), 4));
}

TEST_CASE("orders on D(A)")
{
    auto meta = build_d(*named_fixture("two-cycle"));
    int n = meta.graph.size();
    for (auto order : { Order::Plain, Order::Star })
        for (int x = 0 ; x < n ; ++x) {
            CHECK(! order_less(meta, x, x, order));
            for (int y = 0 ; y < n ; ++y)
                if (x != y)
                    CHECK(order_less(meta, x, y, order) != order_less(meta, y, x, order));
        }

    for (int v = 0 ; v < n ; ++v)
        CHECK(level_of(meta, v) == meta.graph.levels[v]);

    // first interiors of the paths (0, (1,0)) and (1, (0,1)) sit on level 1
    int x = meta.path(0, 1).vertices[1], y = meta.path(1, 0).vertices[1];
    CHECK(order_less(meta, x, y, Order::Plain));
    CHECK(order_less(meta, y, x, Order::Star));
    CHECK(order_min(meta, { y, x }) == x);
    CHECK(order_max(meta, { y, x }, Order::Star) == x);
    CHECK(order_less(meta, 0, x));
    CHECK(order_less(meta, x, meta.tuple_vertex(0)));
}

TEST_CASE("diagonal component")
{
    for (auto name : { "two-cycle", "single-edge" }) {
        auto meta = build_d(*named_fixture(name));
        int n = meta.graph.size();
        auto pairs = delta_pairs_by_search(meta);
        for (int x = 0 ; x < n ; ++x)
            for (int y = 0 ; y < n ; ++y) {
                CHECK(in_delta(meta, { x, y }) == pairs[x * n + y]);
                CHECK(pairs[x * n + y] == oracle::reaches_diagonal(meta.graph, { x, y }));
            }
    }

    auto meta = build_d(*named_fixture("single-edge"));
    int n = meta.graph.size();
    for (int x = 0 ; x < n ; ++x)
        for (int y = 0 ; y < n ; ++y)
            for (int z = 0 ; z < n ; z += 2)
                CHECK(in_delta(meta, { x, y, z }) == oracle::reaches_diagonal(meta.graph, { x, y, z }));
}

TEST_CASE("case analysis")
{
    auto meta = build_d(*named_fixture("two-cycle"));
    int n = meta.graph.size();
    std::map<LiftCase, int> seen;
    for (int x = 0 ; x < n ; ++x)
        for (int y = 0 ; y < n ; ++y) {
            auto d = classify(meta, { x, y });
            ++seen[d.tag];
            auto kx = meta.info[x].kind, ky = meta.info[y].kind;
            int lx = level_of(meta, x), ly = level_of(meta, y);
            if (kx == VertexKind::Element && ky == VertexKind::Element)
                CHECK(d.tag == LiftCase::ElementTuple);
            else if (kx == VertexKind::Tuple && ky == VertexKind::Tuple)
                CHECK(d.tag == LiftCase::TupleTuple);
            else if (oracle::reaches_diagonal(meta.graph, { x, y }))
                CHECK((d.tag == LiftCase::AllZigzag || d.tag == LiftCase::SomeZigzag));
            else if (lx == ly)
                CHECK(d.tag == (meta.info[x].index == meta.info[y].index ? LiftCase::OnePath : LiftCase::TwoPaths));
            else
                CHECK(d.tag == LiftCase::TwoLevels);
        }
    CHECK(seen[LiftCase::TwoPaths] > 0);
    CHECK(seen[LiftCase::SomeZigzag] > 0);
    CHECK(seen[LiftCase::AllZigzag] > 0);

    auto three = classify(meta, { 0, meta.path(0, 0).vertices[1], meta.tuple_vertex(0) });
    CHECK(three.tag == LiftCase::Minimum);
    CHECK(case_name(LiftCase::ForcedEdge) == "2a");

    auto fa = boolean_majority();
    int v = meta.path(0, 1).vertices[2];
    auto forced = classify(meta, { v, v, v }, &fa);
    CHECK(forced.e == meta.path(0, 1).element * meta.tuple_count() + meta.path(0, 1).tuple);
}

TEST_CASE("majority lifts to a majority")
{
    auto meta = build_d(*named_fixture("single-edge"));
    auto f = lift_op(meta, boolean_majority(), zz_median());
    CHECK(oracle::preserves_edges(meta.graph, 3, as_function(f)));
    CHECK(! polymorphism_failure(meta, f));
    int n = meta.graph.size();
    for (int x = 0 ; x < n ; ++x)
        for (int y = 0 ; y < n ; ++y) {
            CHECK(f({ x, x, y }) == x);
            CHECK(f({ x, y, x }) == x);
            CHECK(f({ y, x, x }) == x);
        }

    auto report = lift_all(meta, majority_identities());
    REQUIRE(report);
    CHECK(report->ok);
}

TEST_CASE("minority on the two-cycle lifts to a weak near-unanimity")
{
    auto meta = build_d(*named_fixture("two-cycle"));
    auto minority = make_op("w", 3, 2, [] (const std::vector<int> & a) { return a[0] ^ a[1] ^ a[2]; });
    auto f = lift_op(meta, minority, zz_allmin(3));
    CHECK(oracle::preserves_edges(meta.graph, 3, as_function(f)));
    int n = meta.graph.size();
    for (int x = 0 ; x < n ; ++x) {
        CHECK(f({ x, x, x }) == x);
        for (int y = 0 ; y < n ; ++y) {
            CHECK(f({ y, x, x }) == f({ x, y, x }));
            CHECK(f({ x, y, x }) == f({ x, x, y }));
        }
    }

    auto first = make_op("w", 3, 2, [] (const std::vector<int> &) { return 0; });
    CHECK(kind_of([&] { lift_op(meta, first, zz_allmin(3)); }) == ErrorKind::NotAPolymorphism);
    CHECK(kind_of([&] { lift_op(meta, minority, zz_meet()); }) == ErrorKind::ArityMismatch);
}

TEST_CASE("no witnesses on A means no lift")
{
    // even parity is affine and has no majority
    auto a = make_structure("A", numbered_domain(2), { Relation{ "R", 3, { { 0, 0, 0 }, { 0, 1, 1 }, { 1, 0, 1 }, { 1, 1, 0 } } } });
    auto meta = build_d(a);
    CHECK(! lift_all(meta, majority_identities()));
}

TEST_CASE("random templates with a majority or a weak near-unanimity")
{
    Rng rng(4);
    int lifted = 0;
    for (int trial = 0 ; trial < 40 ; ++trial) {
        auto a = random_template(rng, 3, 2, 3, false);
        auto meta = build_d(a);
        for (auto & sigma : { majority_identities(), wnu_identities(3) }) {
            auto report = lift_all(meta, sigma);
            if (! report)
                continue;
            CHECK(report->ok);
            auto & f = report->lifted.begin()->second;
            CHECK(oracle::preserves_edges(meta.graph, 3, as_function(f)));
            ++lifted;
        }
    }
    CHECK(lifted > 10);
}

TEST_CASE("entries on one path at one level")
{
    // element 1 is on no position of (0,0), so its path is Q_emptyset
    auto a = make_structure("A", numbered_domain(2), { Relation{ "R", 2, { { 0, 0 } } } });
    auto meta = build_d(a);
    auto x = *meta.graph.vertex_index("p:1|0,0|6");
    auto y = *meta.graph.vertex_index("p:1|0,0|2");
    REQUIRE(level_of(meta, x) == level_of(meta, y));
    CHECK(! in_delta(meta, { x, x, y }));
    CHECK(classify(meta, { x, x, y }).tag == LiftCase::OnePath);

    auto f = lift_op(meta, boolean_majority(), zz_median());
    CHECK(f({ x, x, y }) == x);
    CHECK(f({ y, x, y }) == y);
    CHECK(oracle::preserves_edges(meta.graph, 3, as_function(f)));
}

TEST_CASE("shape of identity systems")
{
    CHECK_NOTHROW(check_shape(majority_identities()));
    CHECK_NOTHROW(check_shape(wnu_identities(4)));
    CHECK_NOTHROW(check_shape(three_permutability_identities()));
    CHECK(kind_of([] { check_shape(parse_identities("symbol f 3\nidentity f(x,x,x) = x\nidentity f(x,y,z) = x\n")); })
            == ErrorKind::ShapeViolation);
    CHECK(kind_of([] { check_shape(parse_identities("symbol f 2\nidentity f(x,y) = f(y,x)\n")); })
            == ErrorKind::ShapeViolation);
}

TEST_CASE("endomorphisms lift and restrict")
{
    auto meta = build_d(*named_fixture("two-cycle"));
    Hom swap{ 1, 0 };
    auto big = lift_endomorphism(meta, swap);
    CHECK(is_hom(meta.graph, meta.graph, big));
    CHECK(restrict_endomorphism(meta, big) == swap);
    CHECK(big[meta.tuple_vertex(0)] == meta.tuple_vertex(1));

    CHECK(kind_of([&] { lift_endomorphism(meta, Hom{ 0, 0 }); }) == ErrorKind::NotEndomorphism);
    Hom broken(meta.graph.size(), 0);
    CHECK(kind_of([&] { restrict_endomorphism(meta, broken); }) == ErrorKind::NotEndomorphism);

    auto e = build_d(*named_fixture("single-edge"));
    auto ends = endomorphisms(e.base);
    CHECK(long(ends.size()) == count_homs(e.graph, e.graph));
    for (auto & phi : ends)
        CHECK(restrict_endomorphism(e, lift_endomorphism(e, phi)) == phi);
}
