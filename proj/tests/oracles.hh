/* vim: set sw=4 sts=4 et foldmethod=syntax : */

// Deliberately naive reference implementations. Nothing here shares code
// with the library beyond the plain data types.

#ifndef DRED_TESTS_ORACLES_HH
#define DRED_TESTS_ORACLES_HH 1

#include <dred/digraph.hh>
#include <dred/structure.hh>

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace oracle
{
    using dred::RelStructure;
    using dred::Digraph;
    using dred::Tuple;

    /// Plain backtracking: assign elements in order, check each tuple as
    /// soon as its entries are all assigned. No propagation.
    inline auto count_homs(const RelStructure & x, const RelStructure & a, long stop_after = -1) -> long
    {
        std::vector<std::set<Tuple>> target;
        for (auto & r : x.relations) {
            const dred::Relation * match = nullptr;
            for (auto & s : a.relations)
                if (s.name == r.name || (a.relations.size() == 1 && x.relations.size() == 1))
                    match = &s;
            target.emplace_back(match->tuples.begin(), match->tuples.end());
        }

        // tuples become checkable once their largest entry is assigned
        std::vector<std::vector<std::pair<int, int>>> ready(x.size());
        for (int ri = 0 ; ri < int(x.relations.size()) ; ++ri)
            for (int ti = 0 ; ti < int(x.relations[ri].tuples.size()) ; ++ti) {
                auto & t = x.relations[ri].tuples[ti];
                ready[*std::max_element(t.begin(), t.end())].emplace_back(ri, ti);
            }

        std::vector<int> h(x.size(), -1);
        long count = 0;
        std::function<auto (int) -> bool> go = [&] (int v) -> bool {
            if (v == x.size()) {
                ++count;
                return stop_after < 0 || count < stop_after;
            }
            for (int c = 0 ; c < a.size() ; ++c) {
                h[v] = c;
                bool ok = true;
                for (auto & [ri, ti] : ready[v]) {
                    Tuple image;
                    for (auto e : x.relations[ri].tuples[ti])
                        image.push_back(h[e]);
                    if (! target[ri].count(image)) {
                        ok = false;
                        break;
                    }
                }
                if (ok && ! go(v + 1))
                    return false;
            }
            h[v] = -1;
            return true;
        };
        go(0);
        return count;
    }

    inline auto hom_exists(const RelStructure & x, const RelStructure & a) -> bool
    {
        return count_homs(x, a, 1) > 0;
    }

    inline auto as_rel(const Digraph & g) -> RelStructure
    {
        RelStructure s;
        s.name = g.name;
        s.domain = g.vertices;
        dred::Relation e{ "E", 2, { } };
        for (auto & [u, v] : g.edges)
            e.tuples.push_back({ u, v });
        s.relations.push_back(e);
        return s;
    }

    inline auto hom_exists(const Digraph & x, const Digraph & a) -> bool
    {
        return hom_exists(as_rel(x), as_rel(a));
    }

    inline auto count_homs(const Digraph & x, const Digraph & a) -> long
    {
        return count_homs(as_rel(x), as_rel(a));
    }

    /// Steps of Q_I straight from the definition, true meaning forward.
    inline auto path_steps(int k, const std::set<int> & members) -> std::vector<bool>
    {
        std::vector<bool> steps{ true };
        for (int l = 1 ; l <= k ; ++l) {
            if (members.count(l))
                steps.push_back(true);
            else {
                steps.push_back(true);
                steps.push_back(false);
                steps.push_back(true);
            }
        }
        steps.push_back(true);
        return steps;
    }

    /// Vertex and edge counts of D(A) by summing path lengths.
    inline auto d_counts(const RelStructure & a) -> std::pair<long, long>
    {
        auto & r = a.relations.at(0);
        long vertices = a.size() + long(r.tuples.size()), edges = 0;
        for (int e = 0 ; e < a.size() ; ++e)
            for (auto & t : r.tuples) {
                std::set<int> members;
                for (int i = 0 ; i < int(t.size()) ; ++i)
                    if (t[i] == e)
                        members.insert(i + 1);
                long steps = long(path_steps(r.arity, members).size());
                edges += steps;
                vertices += steps - 1;
            }
        return { vertices, edges };
    }

    /// Does the tuple reach the diagonal of g^m? Breadth-first over tuples.
    inline auto reaches_diagonal(const Digraph & g, const std::vector<int> & start) -> bool
    {
        std::vector<std::vector<int>> out(g.size()), in(g.size());
        for (auto & [u, v] : g.edges) {
            out[u].push_back(v);
            in[v].push_back(u);
        }
        std::set<std::vector<int>> seen{ start };
        std::deque<std::vector<int>> queue{ start };
        while (! queue.empty()) {
            auto c = queue.front();
            queue.pop_front();
            if (std::all_of(c.begin(), c.end(), [&] (int v) { return v == c[0]; }))
                return true;
            for (auto * step : { &out, &in }) {
                std::vector<int> d(c.size());
                std::function<void (std::size_t)> extend = [&] (std::size_t i) {
                    if (i == c.size()) {
                        if (seen.insert(d).second)
                            queue.push_back(d);
                        return;
                    }
                    for (auto w : (*step)[c[i]]) {
                        d[i] = w;
                        extend(i + 1);
                    }
                };
                extend(0);
            }
        }
        return false;
    }

    /// Is f (given as a function) edge-preserving on g, over all m-tuples of edges?
    inline auto preserves_edges(const Digraph & g, int m, const std::function<int (const std::vector<int> &)> & f) -> bool
    {
        std::set<std::pair<int, int>> edges(g.edges.begin(), g.edges.end());
        std::vector<int> pick(m, 0);
        int n = int(g.edges.size());
        while (true) {
            std::vector<int> from, to;
            for (auto p : pick) {
                from.push_back(g.edges[p].first);
                to.push_back(g.edges[p].second);
            }
            if (! edges.count({ f(from), f(to) }))
                return false;
            int i = m - 1;
            while (i >= 0 && ++pick[i] == n)
                pick[i--] = 0;
            if (i < 0)
                return true;
        }
    }
}

#endif
