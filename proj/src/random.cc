/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <dred/random.hh>
#include <dred/errors.hh>

#include <algorithm>
#include <map>
#include <set>

using std::map;
using std::pair;
using std::set;
using std::string;
using std::to_string;
using std::vector;

namespace dred
{
    namespace
    {
        auto random_tuple(Rng & rng, int size, int arity, bool nonconstant) -> Tuple
        {
            while (true) {
                Tuple t;
                for (int i = 0 ; i < arity ; ++i)
                    t.push_back(rng.below(size));
                if (! nonconstant || std::adjacent_find(t.begin(), t.end(), std::not_equal_to<>()) != t.end())
                    return t;
            }
        }

        auto random_relation(Rng & rng, string name, int size, int arity, int max_tuples, bool nonconstant) -> Relation
        {
            Relation r{ std::move(name), arity, { } };
            int count = rng.between(1, max_tuples);
            for (int i = 0 ; i < count ; ++i)
                r.tuples.push_back(random_tuple(rng, size, arity, nonconstant));
            return r;
        }
    }

    auto random_template(Rng & rng, int max_elements, int max_arity, int max_tuples, bool nontrivial) -> RelStructure
    {
        int size = rng.between(2, std::max(2, max_elements));
        int arity = rng.between(1, max_arity);
        // a unary relation has only constant tuples
        if (nontrivial && arity == 1)
            arity = std::min(2, max_arity);
        if (nontrivial && arity == 1)
            throw Error(ErrorKind::InternalInvariantViolation, "nontrivial templates need arity at least 2");
        return make_structure("A", numbered_domain(size),
                { random_relation(rng, "R", size, arity, max_tuples, nontrivial) }, Role::Template);
    }

    auto random_multi_template(Rng & rng, int max_elements, int max_total_arity, int max_tuples) -> RelStructure
    {
        int size = rng.between(2, std::max(2, max_elements));
        vector<Relation> relations;
        int total = rng.between(1, max_total_arity);
        if (total >= 2 && rng.coin()) {
            int first = rng.between(1, total - 1);
            relations.push_back(random_relation(rng, "R", size, first, max_tuples, false));
            relations.push_back(random_relation(rng, "S", size, total - first, max_tuples, false));
        }
        else
            relations.push_back(random_relation(rng, "R", size, total, max_tuples, false));
        return make_structure("A", numbered_domain(size), std::move(relations), Role::Template);
    }

    auto random_instance(Rng & rng, const RelStructure & a, int max_elements, int max_tuples) -> RelStructure
    {
        int size = rng.between(1, max_elements);
        vector<string> domain;
        for (int i = 0 ; i < size ; ++i)
            domain.push_back("x" + to_string(i));
        vector<Relation> relations;
        for (auto & r : a.relations) {
            Relation s{ r.name, r.arity, { } };
            int count = rng.between(0, max_tuples);
            for (int i = 0 ; i < count ; ++i)
                s.tuples.push_back(random_tuple(rng, size, r.arity, false));
            relations.push_back(std::move(s));
        }
        return make_structure("X", std::move(domain), std::move(relations), Role::Instance);
    }

    namespace
    {
        // Grows a set of vertices of d from a seed by adding random neighbours,
        // then keeps each induced edge with probability one half, except the
        // ones in the seed path.
        auto grow_piece(Rng & rng, const Digraph & d, vector<int> seed, const set<std::pair<int, int>> & kept_edges,
                int max_vertices) -> Digraph
        {
            Adjacency adj(d);
            set<int> chosen(seed.begin(), seed.end());
            int target = rng.between(int(chosen.size()), std::max(int(chosen.size()), max_vertices));
            int attempts = 0;
            while (int(chosen.size()) < target && attempts++ < 200) {
                vector<int> members(chosen.begin(), chosen.end());
                int v = members[rng.below(int(members.size()))];
                auto & step = rng.coin() ? adj.out[v] : adj.in[v];
                if (! step.empty())
                    chosen.insert(step[rng.below(int(step.size()))]);
            }

            vector<int> keep(chosen.begin(), chosen.end());
            auto sub = induced_subgraph(d, keep);
            vector<std::pair<int, int>> edges;
            for (auto & [u, v] : sub.edges) {
                bool forced = kept_edges.count({ keep[u], keep[v] });
                if (forced || rng.coin())
                    edges.emplace_back(u, v);
            }
            Digraph g;
            for (int i = 0 ; i < sub.size() ; ++i)
                g.add_vertex("g" + to_string(i));
            g.edges = edges;
            return g;
        }

        auto path_seed(Rng & rng, const DMeta & meta, set<std::pair<int, int>> & forced) -> vector<int>
        {
            auto & p = meta.paths[rng.below(int(meta.paths.size()))];
            vector<int> seed = p.vertices;
            for (std::size_t j = 0 ; j + 1 < seed.size() ; ++j) {
                forced.insert({ seed[j], seed[j + 1] });
                forced.insert({ seed[j + 1], seed[j] });
            }
            return seed;
        }

        // Identifies two vertices of the same level chosen at random.
        auto identify(Rng & rng, Digraph g) -> Digraph
        {
            if (g.size() < 2)
                return g;
            // merging two vertices with a common neighbour on the same side
            // keeps them on one level
            Adjacency adj(g);
            vector<std::pair<int, int>> candidates;
            for (int v = 0 ; v < g.size() ; ++v)
                for (auto * step : { &adj.out[v], &adj.in[v] })
                    for (std::size_t i = 0 ; i < step->size() ; ++i)
                        for (std::size_t j = i + 1 ; j < step->size() ; ++j)
                            candidates.emplace_back((*step)[i], (*step)[j]);
            if (candidates.empty())
                return g;
            auto [x, y] = candidates[rng.below(int(candidates.size()))];
            if (x > y)
                std::swap(x, y);
            Digraph h;
            for (int v = 0 ; v < g.size() ; ++v)
                if (v != y)
                    h.add_vertex(g.vertices[v]);
            auto renumber = [&] (int v) { return v == y ? x : (v > y ? v - 1 : v); };
            for (auto & [u, v] : g.edges)
                h.add_edge(renumber(u), renumber(v));
            dedupe_edges(h);
            return h;
        }

        auto layered(Rng & rng, int vertices, int height) -> Digraph
        {
            Digraph g;
            vector<int> level;
            for (int v = 0 ; v < vertices ; ++v) {
                g.add_vertex("g" + to_string(v));
                level.push_back(v <= height ? v : rng.between(0, height));
            }
            // a spine through every level, then random extra edges
            for (int v = 0 ; v < height && v + 1 < vertices ; ++v) {
                if (rng.below(4) == 0 && v + 1 < height)
                    continue;
                g.add_edge(v, v + 1);
            }
            for (int u = 0 ; u < vertices ; ++u)
                for (int v = 0 ; v < vertices ; ++v)
                    if (level[v] == level[u] + 1 && rng.below(4) == 0)
                        g.add_edge(u, v);
            dedupe_edges(g);
            return g;
        }
    }

    auto random_reverse_graph(Rng & rng, const DMeta & meta, int max_vertices) -> pair<Digraph, string>
    {
        int n = meta.height();
        Digraph g;
        string mode;
        switch (rng.below(7)) {
            case 0: {
                set<std::pair<int, int>> forced;
                auto seed = path_seed(rng, meta, forced);
                if (int(seed.size()) > max_vertices)
                    seed.resize(max_vertices);
                g = grow_piece(rng, meta.graph, seed, forced, max_vertices);
                mode = "piece-of-d";
                break;
            }
            case 1: {
                set<std::pair<int, int>> forced;
                auto seed = path_seed(rng, meta, forced);
                if (int(seed.size()) > max_vertices)
                    seed.resize(max_vertices);
                g = identify(rng, identify(rng, grow_piece(rng, meta.graph, seed, forced, max_vertices)));
                mode = "identified";
                break;
            }
            case 2: {
                // a piece of D(B) for another template B of the same arity
                int size = rng.between(2, std::max(2, meta.element_count()));
                auto b = make_structure("B", numbered_domain(size),
                        { random_relation(rng, "R", size, meta.k, meta.tuple_count() + 1, false) }, Role::Template);
                auto other = build_d(b);
                set<std::pair<int, int>> forced;
                auto seed = path_seed(rng, other, forced);
                if (int(seed.size()) > max_vertices)
                    seed.resize(max_vertices);
                g = grow_piece(rng, other.graph, seed, forced, max_vertices);
                mode = "piece-of-other";
                break;
            }
            case 3:
                g = layered(rng, rng.between(n + 1, max_vertices), n);
                mode = "layered";
                break;
            case 4:
                g = layered(rng, rng.between(1, max_vertices), rng.between(0, n - 1));
                mode = "short";
                break;
            case 5:
                g = layered(rng, rng.between(n + 2, max_vertices), n + 1);
                mode = "tall";
                break;
            default: {
                g = layered(rng, rng.between(2, max_vertices), rng.between(1, n));
                int u = rng.below(g.size()), v = rng.below(g.size());
                g.add_edge(u, v);
                if (rng.coin())
                    g.add_edge(v, u);
                dedupe_edges(g);
                mode = "perturbed";
                break;
            }
        }
        g.name = "G";
        for (int v = 0 ; v < g.size() ; ++v)
            g.vertices[v] = "g" + to_string(v);
        return { g, mode };
    }

    auto random_edge_sets(Rng & rng, const DMeta & meta, int max_edges) -> pair<vector<int>, vector<int>>
    {
        auto & edges = meta.graph.edges;
        vector<std::pair<int, int>> pool;
        if (rng.coin())
            pool = edges;
        else {
            // edges leaving a single level, so that ties between paths matter
            int level = meta.graph.levels[edges[rng.below(int(edges.size()))].first];
            for (auto & e : edges)
                if (meta.graph.levels[e.first] == level)
                    pool.push_back(e);
        }
        int count = rng.between(1, max_edges);
        set<int> c, d;
        for (int i = 0 ; i < count ; ++i) {
            auto & [u, v] = pool[rng.below(int(pool.size()))];
            c.insert(u);
            d.insert(v);
        }
        return { vector<int>(c.begin(), c.end()), vector<int>(d.begin(), d.end()) };
    }
}
