/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <dred/digraph.hh>
#include <dred/errors.hh>

#include <map>
#include <set>

using std::map;
using std::optional;
using std::set;
using std::string;
using std::string_view;
using std::to_string;
using std::vector;

namespace dred
{
    auto Digraph::vertex_index(string_view v) const -> optional<int>
    {
        for (int i = 0 ; i < size() ; ++i)
            if (vertices[i] == v)
                return i;
        return std::nullopt;
    }

    auto Digraph::add_vertex(string v) -> int
    {
        vertices.push_back(std::move(v));
        return size() - 1;
    }

    auto Digraph::add_edge(int from, int to) -> void
    {
        edges.emplace_back(from, to);
    }

    auto validate(const Digraph & g) -> void
    {
        set<string> names;
        for (auto & v : g.vertices)
            if (! names.insert(v).second)
                throw Error(ErrorKind::Syntax, "duplicate vertex name '" + v + "'");

        set<Edge> seen;
        for (auto & [u, v] : g.edges) {
            if (u < 0 || v < 0 || u >= g.size() || v >= g.size())
                throw Error(ErrorKind::UnknownElement, "edge endpoint out of range");
            if (! seen.insert({u, v}).second)
                throw Error(ErrorKind::Syntax, "duplicate edge " + g.vertices[u] + " -> " + g.vertices[v]);
        }

        if (! g.provenance.empty() && int(g.provenance.size()) != g.size())
            throw Error(ErrorKind::Syntax, "provenance does not cover every vertex");

        if (! g.levels.empty()) {
            if (int(g.levels.size()) != g.size())
                throw Error(ErrorKind::Syntax, "levels do not cover every vertex");
            for (auto & [u, v] : g.edges)
                if (g.levels[v] != g.levels[u] + 1)
                    throw Error(ErrorKind::UnbalancedInput, "edge " + g.vertices[u] + " -> " + g.vertices[v]
                            + " does not increase the level by one");
        }
    }

    auto dedupe_edges(Digraph & g) -> void
    {
        set<Edge> seen;
        vector<Edge> kept;
        for (auto & e : g.edges)
            if (seen.insert(e).second)
                kept.push_back(e);
        g.edges = std::move(kept);
    }

    Adjacency::Adjacency(const Digraph & g) :
        out(g.size()),
        in(g.size()),
        out_rows(g.size(), Bitset(g.size()))
    {
        for (auto & [u, v] : g.edges) {
            out[u].push_back(v);
            in[v].push_back(u);
            out_rows[u].set(v);
        }
    }

    auto connected_components(const Digraph & g) -> vector<vector<int>>
    {
        vector<int> parent(g.size());
        for (int i = 0 ; i < g.size() ; ++i)
            parent[i] = i;

        auto find = [&] (int x) {
            while (parent[x] != x)
                x = parent[x] = parent[parent[x]];
            return x;
        };

        for (auto & [u, v] : g.edges) {
            int a = find(u), b = find(v);
            if (a != b)
                parent[std::max(a, b)] = std::min(a, b);
        }

        map<int, int> component_of_root;
        vector<vector<int>> result;
        for (int v = 0 ; v < g.size() ; ++v) {
            int root = find(v);
            auto [it, fresh] = component_of_root.try_emplace(root, int(result.size()));
            if (fresh)
                result.emplace_back();
            result[it->second].push_back(v);
        }
        return result;
    }

    auto induced_subgraph(const Digraph & g, const vector<int> & keep, string name) -> Digraph
    {
        Digraph result;
        result.name = name.empty() ? g.name : std::move(name);
        vector<int> new_index(g.size(), -1);
        for (auto v : keep) {
            new_index[v] = result.add_vertex(g.vertices[v]);
            if (! g.provenance.empty())
                result.provenance.push_back(g.provenance[v]);
            if (! g.levels.empty())
                result.levels.push_back(g.levels[v]);
        }
        for (auto & [u, v] : g.edges)
            if (new_index[u] != -1 && new_index[v] != -1)
                result.add_edge(new_index[u], new_index[v]);
        return result;
    }

    auto as_structure(const Digraph & g, Role role) -> RelStructure
    {
        RelStructure s;
        s.name = g.name;
        s.role = role;
        s.domain = g.vertices;
        Relation e{ "E", 2, { } };
        for (auto & [u, v] : g.edges)
            e.tuples.push_back({ u, v });
        s.relations.push_back(std::move(e));
        return s;
    }

    auto zigzag() -> Digraph
    {
        Digraph z;
        z.name = "zigzag";
        for (auto v : { "00", "01", "10", "11" })
            z.add_vertex(v);
        z.add_edge(0, 1);
        z.add_edge(2, 1);
        z.add_edge(2, 3);
        z.levels = { 0, 1, 0, 1 };
        return z;
    }

    auto single_edge() -> Digraph
    {
        Digraph e;
        e.name = "edge";
        e.add_vertex("0");
        e.add_vertex("1");
        e.add_edge(0, 1);
        e.levels = { 0, 1 };
        return e;
    }

    auto directed_cycle(int n) -> Digraph
    {
        Digraph c;
        c.name = "cycle" + to_string(n);
        for (int i = 0 ; i < n ; ++i)
            c.add_vertex("c" + to_string(i));
        for (int i = 0 ; i < n ; ++i)
            c.add_edge(i, (i + 1) % n);
        return c;
    }
}
