#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hh"

#include <dred/dbuild.hh>
#include <dred/forward.hh>
#include <dred/random.hh>
#include <dred/singleton.hh>
#include <dred/solver.hh>
#include <dred/verify.hh>

using namespace dred;

namespace
{
    auto instance(std::vector<std::string> domain, int arity, std::vector<Tuple> tuples) -> RelStructure
    {
        return make_structure("x", std::move(domain), { Relation{ "R", arity, std::move(tuples) } }, Role::Instance);
    }
}

TEST_CASE("one binary tuple")
{
    auto g = forward_instance(instance({ "x", "y" }, 2, { { 0, 1 } }), 2);
    CHECK(g.size() == 13);
    CHECK(g.edges.size() == 12);
    CHECK(g.vertices[0] == "x:x");
    CHECK(g.vertex_index("y:0"));
    CHECK_NOTHROW(validate(g));
    CHECK(g.size() == forward_vertex_count(2, 1, 2));
    CHECK(long(g.edges.size()) == forward_edge_count(1, 2));
}

TEST_CASE("unused elements stay isolated")
{
    auto g = forward_instance(instance({ "x", "y", "z" }, 2, { { 0, 1 } }), 2);
    auto z = *g.vertex_index("x:z");
    for (auto & [u, v] : g.edges) {
        CHECK(u != z);
        CHECK(v != z);
    }
    CHECK(find_hom(g, build_d(*named_fixture("single-edge")).graph));
}

TEST_CASE("a constant tuple against parity")
{
    auto parity = build_d(*named_fixture("parity"));
    auto g = forward_instance(instance({ "x" }, 4, { { 0, 0, 0, 0 } }), 4);
    CHECK(! find_hom(g, parity.graph));
    auto h = forward_instance(instance({ "x", "y" }, 4, { { 1, 1, 0, 1 } }), 4);
    CHECK(find_hom(h, parity.graph));
}

TEST_CASE("gadgets are the paths Q_{i}")
{
    auto g = forward_instance(instance({ "x", "y", "z" }, 3, { { 0, 1, 2 } }), 3);
    // apex-to-entry walk along position i has a single edge exactly at i
    for (int i = 1 ; i <= 3 ; ++i) {
        auto q = build_path(make_spec(3, { i }));
        std::vector<int> keep;
        for (int v = 0 ; v < g.size() ; ++v)
            if (g.vertices[v].rfind("q:0:" + std::to_string(i) + ":", 0) == 0)
                keep.push_back(v);
        CHECK(int(keep.size()) == q.size() - 2);
    }
    CHECK(! g.levels.empty());
    CHECK_NOTHROW(validate(g));
}

TEST_CASE("empty and edge cases")
{
    auto g = forward_instance(instance({ "x" }, 2, { }), 2);
    CHECK(g.size() == 1);
    CHECK(g.edges.empty());
    CHECK(fixed_yes_digraph().size() == 1);
    CHECK(single_edge_probe().edges.size() == 1);
    CHECK(find_hom(single_edge_probe(), build_d(*named_fixture("two-cycle")).graph));
}

TEST_CASE("forward reduction preserves the answer")
{
    Rng rng(21);
    int yes = 0, total = 0;
    for (int trial = 0 ; trial < 200 ; ++trial) {
        auto a = random_multi_template(rng, 3, 3, 4);
        auto x = random_instance(rng, a, 4, 3);
        auto [m, blocks] = merge_template(a);
        auto mx = merge_instance(x, blocks);
        auto meta = build_d(m);
        auto g = forward_instance(mx, meta.k);
        CHECK(g.size() == forward_vertex_count(mx.size(), long(mx.relations[0].tuples.size()), meta.k));
        bool expected = oracle::hom_exists(x, a);
        CHECK(find_hom(g, meta.graph).has_value() == expected);
        yes += expected;
        ++total;
    }
    CHECK(yes > 20);
    CHECK(yes < total - 20);
}
