#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hh"

#include <dred/dbuild.hh>
#include <dred/errors.hh>
#include <dred/random.hh>
#include <dred/reverse.hh>
#include <dred/solver.hh>
#include <dred/verify.hh>

#include <set>

using namespace dred;

namespace
{
    auto levels_of(const Digraph & g) -> LevelAssignment
    {
        auto r = assign_levels(g);
        REQUIRE(std::holds_alternative<LevelAssignment>(r));
        return std::get<LevelAssignment>(r);
    }

    auto members(int k, int mask) -> std::vector<int>
    {
        std::vector<int> result;
        for (int l = 1 ; l <= k ; ++l)
            if (mask & (1 << (l - 1)))
                result.push_back(l);
        return result;
    }

    auto class_names(const ReverseObjects & o, const SimPartition & p) -> std::set<std::set<std::string>>
    {
        std::set<std::set<std::string>> result;
        for (auto & c : p.classes())
            if (c.size() > 1) {
                std::set<std::string> names;
                for (auto x : c)
                    names.insert(o.x[x].name);
                result.insert(names);
            }
        return result;
    }

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
}

TEST_CASE("levels")
{
    auto cycle = assign_levels(directed_cycle(2));
    REQUIRE(std::holds_alternative<Unbalanced>(cycle));
    auto & w = std::get<Unbalanced>(cycle);
    CHECK(w.net != 0);
    CHECK(w.cycle.size() >= 2);

    CHECK(levels_of(zigzag()).height == 1);
    CHECK(levels_of(build_path(make_spec(3, { 3 }))).height == 5);

    // a walk that cancels out is fine
    Digraph square;
    for (auto v : { "a", "b", "c", "d" })
        square.add_vertex(v);
    square.add_edge(0, 1);
    square.add_edge(1, 2);
    square.add_edge(0, 3);
    square.add_edge(3, 2);
    auto l = levels_of(square);
    CHECK(l.level == std::vector<int>{ 0, 1, 2, 1 });

    square.add_edge(0, 2);
    CHECK(std::holds_alternative<Unbalanced>(assign_levels(square)));
}

TEST_CASE("internal components and gamma of paths")
{
    for (int k = 1 ; k <= 4 ; ++k)
        for (int mask = 0 ; mask < (1 << k) ; ++mask) {
            auto q = build_path(make_spec(k, members(k, mask)));
            auto levels = levels_of(q);
            auto internals = internal_components(q, levels, k + 2);
            REQUIRE(internals.size() == 1);
            CHECK(internals[0].base == std::vector<int>{ 0 });
            CHECK(internals[0].top == std::vector<int>{ q.size() - 1 });
            CHECK(gamma(q, levels, internals[0], k) == members(k, mask));
            CHECK(gamma_fast(q, levels, internals[0], k) == members(k, mask));
        }

    auto meta = build_d(*named_fixture("two-cycle"));
    auto levels = levels_of(meta.graph);
    auto internals = internal_components(meta.graph, levels, 4);
    CHECK(internals.size() == 4);
    for (auto & c : internals) {
        CHECK(c.base.size() == 1);
        CHECK(c.top.size() == 1);
        auto [a, t] = path_of(meta, c.vertices[0]);
        CHECK(gamma(meta.graph, levels, c, 2) == meta.path(a, t).spec.members);
    }
}

TEST_CASE("a lone path gives one hyperedge")
{
    int k = 3;
    for (int mask = 0 ; mask < (1 << k) ; ++mask) {
        auto q = build_path(make_spec(k, members(k, mask)));
        auto levels = levels_of(q);
        auto internals = internal_components(q, levels, k + 2);
        internals[0].gamma = gamma(q, levels, internals[0], k);
        auto objects = build_objects(q, levels, internals, k);
        auto p = sim_closure(objects);
        auto b = assemble_b(objects, p, "B", "R");
        CHECK(b.size() == 1 + k - int(members(k, mask).size()));
        REQUIRE(b.relations[0].tuples.size() == 1);
        auto & t = b.relations[0].tuples[0];
        for (int i = 1 ; i <= k ; ++i)
            CHECK((b.domain[t[i - 1]] == "q0") == bool(mask & (1 << (i - 1))));
    }
}

TEST_CASE("a component with no top")
{
    Digraph g;
    for (auto v : { "b", "u1", "u2", "u3" })
        g.add_vertex(v);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(2, 3);
    auto levels = levels_of(g);
    auto internals = internal_components(g, levels, 4);
    REQUIRE(internals.size() == 1);
    CHECK(internals[0].top.empty());
    internals[0].gamma = gamma(g, levels, internals[0], 2);
    CHECK(internals[0].gamma == std::vector<int>{ 1 });
    auto objects = build_objects(g, levels, internals, 2);
    REQUIRE(objects.type2.size() == 1);
    CHECK(objects.type1.empty());
    auto b = assemble_b(objects, sim_closure(objects), "B", "R");
    REQUIRE(b.relations[0].tuples.size() == 1);
    CHECK(b.domain[b.relations[0].tuples[0][0]] == "b");
    CHECK(b.domain[b.relations[0].tuples[0][1]] == "xa:0:b:2");
}

TEST_CASE("worked example with ten base and top vertices")
{
    // b1..b6 on level 0 and e1..e4 on level 4; components given by hand
    Digraph g;
    LevelAssignment levels;
    levels.height = 4;
    for (int i = 1 ; i <= 6 ; ++i) {
        g.add_vertex("b" + std::to_string(i));
        levels.level.push_back(0);
    }
    for (int i = 1 ; i <= 4 ; ++i) {
        g.add_vertex("e" + std::to_string(i));
        levels.level.push_back(4);
    }
    auto b = [] (int i) { return i - 1; };
    auto e = [] (int i) { return 5 + i; };
    std::vector<InternalComponent> internals = {
        { 0, { }, { }, { e(1), e(2) }, { } },
        { 1, { }, { b(2) }, { e(2) }, { 1 } },
        { 2, { }, { b(3) }, { e(2) }, { 2 } },
        { 3, { }, { b(2) }, { e(3) }, { 1 } },
        { 4, { }, { b(4) }, { e(3) }, { 1 } },
        { 5, { }, { b(4) }, { e(4) }, { 1 } },
        { 6, { }, { }, { e(4) }, { 1 } },
        { 7, { }, { b(1) }, { }, { 2 } },
        { 8, { }, { b(4), b(5) }, { }, { } },
        { 9, { }, { b(5), b(6) }, { }, { 1 } },
    };
    auto objects = build_objects(g, levels, internals, 2);

    int alpha = 0, beta = 0, gamma_count = 0;
    for (auto & x : objects.x) {
        alpha += x.kind == XKind::Alpha;
        beta += x.kind == XKind::Beta;
        gamma_count += x.kind == XKind::Gamma;
    }
    CHECK(alpha == 7);
    CHECK(beta == 1);
    CHECK(gamma_count == 4);
    CHECK(objects.type1.size() == 4);
    CHECK(objects.type2.size() == 5);
    CHECK(objects.type3 == std::vector<std::pair<int, int>>{ { e(1), e(2) } });
    CHECK(objects.type4 == std::vector<std::pair<int, int>>{ { b(4), b(5) }, { b(5), b(6) } });

    auto p = sim_closure(objects);
    CHECK(class_names(objects, p) == std::set<std::set<std::string>>{
            { "b2", "b4", "b5", "b6", "xg:e1:1", "xb:6:e4" },
            { "b3", "xg:e1:2" } });

    auto out = assemble_b(objects, p, "B", "E");
    std::multiset<std::pair<std::string, std::string>> edges;
    for (auto & t : out.relations[0].tuples)
        edges.insert({ out.domain[t[0]], out.domain[t[1]] });
    CHECK(edges == std::multiset<std::pair<std::string, std::string>>{
            { "b2", "b3" }, { "b2", "xg:e3:2" }, { "b2", "xg:e4:2" },
            { "xa:7:b1:1", "b1" }, { "xa:8:b4:1", "xa:8:b4:2" }, { "xa:8:b5:1", "xa:8:b5:2" },
            { "b2", "xa:9:b5:2" }, { "b2", "xa:9:b6:2" } });
}

TEST_CASE("a component with no base fills its positions with one element")
{
    // Q_emptyset plus a directed path from level 1 to the same top
    auto a = make_structure("A", numbered_domain(2), { Relation{ "R", 3, { { 0, 0, 1 }, { 1, 1, 0 } } } });
    auto meta = build_d(a);
    auto g = build_path(make_spec(3, { }));
    g.levels.clear();
    int top = g.size() - 1;
    int previous = -1;
    for (int i = 1 ; i <= 4 ; ++i) {
        int v = g.add_vertex("g" + std::to_string(i));
        if (previous != -1)
            g.add_edge(previous, v);
        previous = v;
    }
    g.add_edge(previous, top);

    CHECK(! find_hom(g, meta.graph));
    auto result = reverse_instance(g, meta);
    CHECK(result.outcome == ReverseOutcome::Assembled);
    CHECK(! find_hom(result.b, a));
}

TEST_CASE("fixed outcomes")
{
    auto a = *named_fixture("parity");
    CHECK(! find_hom(fixed_no(a), a));
    CHECK(find_hom(fixed_yes(a), a));

    auto meta = build_d(a);
    auto unbalanced = reverse_instance(directed_cycle(3), meta);
    CHECK(unbalanced.outcome == ReverseOutcome::FixedNo);
    CHECK(unbalanced.components[0].status == "unbalanced");
    CHECK(unbalanced.components[0].witness);

    auto tall = build_path(make_spec(5, { }));
    tall.levels.clear();
    auto too_tall = reverse_instance(tall, meta);
    CHECK(too_tall.outcome == ReverseOutcome::FixedNo);
    CHECK(too_tall.components[0].status == "too-tall");

    Digraph point;
    point.add_vertex("v");
    auto short_yes = reverse_instance(point, meta);
    CHECK(short_yes.outcome == ReverseOutcome::FixedYes);
    CHECK(short_yes.components[0].status == "short-yes");

    auto trivial = make_structure("T", numbered_domain(2), { Relation{ "R", 2, { { 0, 0 }, { 0, 1 } } } });
    CHECK(kind_of([&] { reverse_instance(point, trivial); }) == ErrorKind::TrivialTemplate);
    CHECK(outcome_name(ReverseOutcome::FixedNo) == "fixed-no");
}

TEST_CASE("reverse reduction preserves the answer")
{
    Rng rng(33);
    int yes = 0, assembled = 0;
    for (int trial = 0 ; trial < 300 ; ++trial) {
        auto a = random_template(rng, 3, 3, 4, true);
        auto meta = build_d(a);
        auto [g, how] = random_reverse_graph(rng, meta, 14);
        INFO("trial ", trial, " ", how);
        bool direct = find_hom(g, meta.graph).has_value();
        auto result = reverse_instance(g, meta);
        CHECK(find_hom(result.b, a).has_value() == direct);
        yes += direct;
        assembled += result.outcome == ReverseOutcome::Assembled;

        for (auto & c : result.components) {
            if (c.status == "short-yes" || c.status == "short-no")
                CHECK(stage2_decide_fans(c.graph, meta) == (c.status == "short-yes"));
            if (c.status != "full")
                continue;

            auto levels = levels_of(c.graph);
            for (auto & ic : c.internals)
                CHECK(gamma_fast(c.graph, levels, ic, meta.k) == ic.gamma);

            // base vertices in one class land on one element under every homomorphism
            std::vector<std::pair<int, int>> same;
            for (auto & cls : c.partition->classes())
                for (auto x : cls)
                    if (c.objects->x[x].kind == XKind::Base && c.objects->x[cls.front()].kind == XKind::Base)
                        same.emplace_back(c.objects->x[cls.front()].vertex, c.objects->x[x].vertex);
            enumerate_homs(c.graph, meta.graph, { }, [&] (const Hom & h) {
                    for (auto & [u, v] : same)
                        CHECK(h[u] == h[v]);
                    return true;
                });

            // and the component itself maps into D(B) for its own B
            auto part = assemble_b(*c.objects, *c.partition, "B", "R");
            CHECK(find_hom(c.graph, build_d(part).graph));
        }
    }
    CHECK(yes > 30);
    CHECK(yes < 270);
    CHECK(assembled > 50);
}
