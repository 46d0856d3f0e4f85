#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hh"

#include <dred/dbuild.hh>
#include <dred/errors.hh>
#include <dred/random.hh>
#include <dred/solver.hh>
#include <dred/verify.hh>

#include <set>

using namespace dred;

namespace
{
    auto steps_of(const Digraph & path) -> std::vector<bool>
    {
        // vertices are q0, q1, ... in order along the path
        std::vector<bool> steps;
        std::set<std::pair<int, int>> edges(path.edges.begin(), path.edges.end());
        for (int i = 0 ; i + 1 < path.size() ; ++i)
            steps.push_back(edges.count({ i, i + 1 }) == 1);
        return steps;
    }
}

TEST_CASE("paths match the definition")
{
    for (int k = 1 ; k <= 4 ; ++k)
        for (int mask = 0 ; mask < (1 << k) ; ++mask) {
            std::vector<int> members;
            std::set<int> oracle_members;
            for (int i = 1 ; i <= k ; ++i)
                if (mask & (1 << (i - 1))) {
                    members.push_back(i);
                    oracle_members.insert(i);
                }
            auto q = build_path(make_spec(k, members));
            CHECK(steps_of(q) == oracle::path_steps(k, oracle_members));
            CHECK(q.size() == int(q.edges.size()) + 1);
            CHECK(*std::max_element(q.levels.begin(), q.levels.end()) == k + 2);
            CHECK_NOTHROW(validate(q));
        }
}

TEST_CASE("small paths")
{
    auto direct = build_path(make_spec(2, { 1, 2 }));
    CHECK(direct.size() == 5);
    CHECK(steps_of(direct) == std::vector<bool>{ true, true, true, true });

    auto q = build_path(make_spec(1, { }));
    CHECK(q.size() == 6);
    CHECK(steps_of(q) == std::vector<bool>{ true, true, false, true, true });

    // single edge at position 3 only: →, zigzag, zigzag, →, →
    auto f = build_path(make_spec(3, { 3 }));
    CHECK(steps_of(f) == std::vector<bool>{ true, true, false, true, true, false, true, true, true });
}

TEST_CASE("index sets")
{
    CHECK(index_set(0, { 0, 1 }).members == std::vector<int>{ 1 });
    CHECK(index_set(1, { 0, 0, 0, 1 }).members == std::vector<int>{ 4 });
    CHECK(index_set(2, { 0, 1 }).members.empty());
}

TEST_CASE("fixture counts")
{
    auto two = build_d(*named_fixture("two-cycle"));
    auto s = stats(two);
    CHECK(s.vertices == 24);
    CHECK(s.edges == 24);
    CHECK(s.height == 4);
    CHECK(s.matches());

    auto parity = stats(build_d(*named_fixture("parity")));
    CHECK(parity.vertices == 78);
    CHECK(parity.edges == 80);
    CHECK(parity.height == 6);
    CHECK(parity.matches());

    auto one = make_structure("one", numbered_domain(1), { Relation{ "R", 1, { { 0 } } } });
    auto os = stats(build_d(one));
    CHECK(os.vertices == 4);
    CHECK(os.edges == 3);
    CHECK(os.height == 3);
    CHECK(os.matches());

    CHECK(stats(build_d(*named_fixture("single-edge"))).vertices == 13);
}

TEST_CASE("counts agree with path lengths and formulas")
{
    Rng rng(12);
    for (int trial = 0 ; trial < 100 ; ++trial) {
        auto a = random_template(rng, 4, 4, 6, false);
        auto meta = build_d(a);
        auto [v, e] = oracle::d_counts(a);
        CHECK(meta.graph.size() == v);
        CHECK(long(meta.graph.edges.size()) == e);
        CHECK(stats(meta).matches());
    }
}

TEST_CASE("layout of D(A)")
{
    auto a = *named_fixture("two-cycle");
    auto meta = build_d(a);
    auto & g = meta.graph;
    CHECK(g.vertices[0] == "a:0");
    CHECK(g.vertices[1] == "a:1");
    CHECK(g.vertices[2] == "r:0,1");
    CHECK(g.vertices[3] == "r:1,0");
    CHECK(g.vertices[4] == "p:0|0,1|1");
    CHECK_NOTHROW(validate(g));

    for (int v = 0 ; v < g.size() ; ++v) {
        if (meta.info[v].kind == VertexKind::Element)
            CHECK(g.levels[v] == 0);
        if (meta.info[v].kind == VertexKind::Tuple)
            CHECK(g.levels[v] == meta.k + 2);
    }

    // every path, cut out of D(A), is Q of its index set
    for (auto & p : meta.paths) {
        auto sub = induced_subgraph(g, p.vertices);
        auto q = build_path(p.spec);
        CHECK(sub.size() == q.size());
        std::set<std::pair<int, int>> edges(sub.edges.begin(), sub.edges.end());
        // p.vertices is not sorted, so compare by walking it
        for (std::size_t j = 0 ; j + 1 < p.vertices.size() ; ++j) {
            bool forward = meta.adjacency->has_edge(p.vertices[j], p.vertices[j + 1]);
            bool backward = meta.adjacency->has_edge(p.vertices[j + 1], p.vertices[j]);
            CHECK(forward != backward);
            CHECK(forward == (q.levels[j + 1] > q.levels[j]));
        }
    }
}

TEST_CASE("segment indices")
{
    auto meta = build_d(*named_fixture("two-cycle"));
    // path (0, (1,0)) has I = {2}: →, zigzag, single, →
    auto & p = meta.path(0, 1);
    CHECK(p.spec.members == std::vector<int>{ 2 });
    CHECK(segment_indices(meta, p.vertices[1]) == std::vector<int>{ 1 });
    CHECK(segment_indices(meta, p.vertices[2]) == std::vector<int>{ 1 });
    CHECK(segment_indices(meta, p.vertices[4]) == std::vector<int>{ 1, 2 });
    CHECK(segment_indices(meta, p.vertices[5]) == std::vector<int>{ 2 });
    CHECK(path_of(meta, p.vertices[3]) == std::pair<int, int>{ 0, 1 });
    CHECK_THROWS_AS(segment_indices(meta, 0), Error);
    CHECK_THROWS_AS(path_of(meta, meta.tuple_vertex(0)), Error);

    for (int v = 0 ; v < meta.graph.size() ; ++v)
        if (meta.info[v].kind == VertexKind::Interior) {
            auto s = segment_indices(meta, v);
            CHECK(s.size() >= 1);
            CHECK(s.size() <= 2);
        }
}

TEST_CASE("observation on paths")
{
    for (int k = 1 ; k <= 3 ; ++k)
        for (int mi = 0 ; mi < (1 << k) ; ++mi)
            for (int mj = 0 ; mj < (1 << k) ; ++mj) {
                std::vector<int> i, j;
                for (int l = 1 ; l <= k ; ++l) {
                    if (mi & (1 << (l - 1)))
                        i.push_back(l);
                    if (mj & (1 << (l - 1)))
                        j.push_back(l);
                }
                bool subset = (mi & mj) == mi;
                auto qi = build_path(make_spec(k, i)), qj = build_path(make_spec(k, j));
                long count = oracle::count_homs(qi, qj);
                CHECK(count == (subset ? 1 : 0));
                auto map = path_hom(make_spec(k, i), make_spec(k, j));
                CHECK(map.has_value() == subset);
                if (map) {
                    CHECK(is_hom(qi, qj, *map));
                    CHECK(std::set<int>(map->begin(), map->end()).size() == std::size_t(qj.size()));
                }
            }
}

TEST_CASE("build_d preconditions")
{
    auto two = make_structure("two", numbered_domain(2), { Relation{ "R", 1, { { 0 } } }, Relation{ "S", 1, { { 1 } } } });
    CHECK_THROWS_AS(build_d(two), Error);
}
