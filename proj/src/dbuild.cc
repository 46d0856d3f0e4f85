/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <dred/dbuild.hh>
#include <dred/errors.hh>

#include <algorithm>

using std::optional;
using std::pair;
using std::string;
using std::to_string;
using std::vector;

namespace dred
{
    auto PathSpec::contains(int l) const -> bool
    {
        return std::binary_search(members.begin(), members.end(), l);
    }

    auto make_spec(int k, vector<int> members) -> PathSpec
    {
        std::sort(members.begin(), members.end());
        members.erase(std::unique(members.begin(), members.end()), members.end());
        for (auto i : members)
            if (i < 1 || i > k)
                throw Error(ErrorKind::ArityMismatch, "path position " + to_string(i) + " outside 1.." + to_string(k));
        return PathSpec{ k, std::move(members) };
    }

    auto path_steps(const PathSpec & spec) -> vector<bool>
    {
        vector<bool> steps{ true };
        for (int l = 1 ; l <= spec.k ; ++l) {
            if (spec.contains(l))
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

    auto segment_starts(const PathSpec & spec) -> vector<int>
    {
        vector<int> result(spec.k + 2, 0);
        int pos = 1;
        for (int l = 1 ; l <= spec.k ; ++l) {
            result[l] = pos;
            pos += spec.contains(l) ? 1 : 3;
        }
        result[spec.k + 1] = pos;
        return result;
    }

    auto build_path(const PathSpec & spec) -> Digraph
    {
        auto steps = path_steps(spec);
        Digraph g;
        g.name = "Q";
        g.add_vertex("q0");
        g.levels.push_back(0);
        for (std::size_t i = 0 ; i < steps.size() ; ++i) {
            int v = g.add_vertex("q" + to_string(i + 1));
            g.levels.push_back(g.levels.back() + (steps[i] ? 1 : -1));
            if (steps[i])
                g.add_edge(v - 1, v);
            else
                g.add_edge(v, v - 1);
        }
        return g;
    }

    auto path_hom(const PathSpec & from, const PathSpec & to) -> optional<vector<int>>
    {
        if (from.k != to.k)
            return std::nullopt;
        for (auto i : from.members)
            if (! to.contains(i))
                return std::nullopt;

        auto fs = segment_starts(from), ts = segment_starts(to);
        vector<int> map(fs[from.k + 1] + 2, -1);
        map[0] = 0;
        for (int l = 1 ; l <= from.k ; ++l) {
            int f = fs[l], t = ts[l];
            if (from.contains(l)) {
                map[f] = t;
                map[f + 1] = t + 1;
            }
            else if (to.contains(l)) {
                map[f] = map[f + 2] = t;
                map[f + 1] = map[f + 3] = t + 1;
            }
            else
                for (int j = 0 ; j < 4 ; ++j)
                    map[f + j] = t + j;
        }
        map[fs[from.k + 1] + 1] = ts[to.k + 1] + 1;
        return map;
    }

    auto index_set(int a, const Tuple & r) -> PathSpec
    {
        PathSpec spec{ int(r.size()), { } };
        for (std::size_t i = 0 ; i < r.size() ; ++i)
            if (r[i] == a)
                spec.members.push_back(int(i) + 1);
        return spec;
    }

    auto DMeta::tuple_index(const Tuple & r) const -> optional<int>
    {
        auto it = std::lower_bound(tuples.begin(), tuples.end(), r);
        if (it == tuples.end() || *it != r)
            return std::nullopt;
        return int(it - tuples.begin());
    }

    auto build_d(const RelStructure & a) -> DMeta
    {
        validate(a);
        if (a.relations.size() != 1)
            throw Error(ErrorKind::SignatureMismatch, "D(A) needs a single relation; merge the template first");
        if (a.relations[0].tuples.empty() || a.domain.empty())
            throw Error(ErrorKind::NonemptyRelationRequired, "template relation '" + a.relations[0].name + "' is empty");

        DMeta meta;
        meta.base = a;
        meta.k = a.relations[0].arity;
        meta.tuples = a.relations[0].tuples;
        std::sort(meta.tuples.begin(), meta.tuples.end());

        auto & g = meta.graph;
        g.name = "D_" + a.name;

        for (int e = 0 ; e < a.size() ; ++e) {
            g.add_vertex("a:" + a.domain[e]);
            g.provenance.push_back(ElementVertex{ e });
            g.levels.push_back(0);
            meta.info.push_back(VertexInfo{ VertexKind::Element, e, -1 });
        }
        for (int t = 0 ; t < meta.tuple_count() ; ++t) {
            g.add_vertex("r:" + tuple_names(a, meta.tuples[t]));
            g.provenance.push_back(TupleVertex{ meta.tuples[t] });
            g.levels.push_back(meta.k + 2);
            meta.info.push_back(VertexInfo{ VertexKind::Tuple, t, -1 });
        }

        for (int e = 0 ; e < a.size() ; ++e)
            for (int t = 0 ; t < meta.tuple_count() ; ++t) {
                auto & r = meta.tuples[t];
                PathInfo p;
                p.element = e;
                p.tuple = t;
                p.spec = index_set(e, r);
                p.segment_start = segment_starts(p.spec);
                auto steps = path_steps(p.spec);
                int path_index = int(meta.paths.size());

                p.vertices.push_back(meta.element_vertex(e));
                int level = 0;
                string prefix = "p:" + a.domain[e] + "|" + tuple_names(a, r) + "|";
                for (std::size_t j = 1 ; j < steps.size() ; ++j) {
                    level += steps[j - 1] ? 1 : -1;
                    int v = g.add_vertex(prefix + to_string(j));
                    g.provenance.push_back(InternalVertex{ e, r, int(j) });
                    g.levels.push_back(level);
                    meta.info.push_back(VertexInfo{ VertexKind::Interior, path_index, int(j) });
                    p.vertices.push_back(v);
                }
                p.vertices.push_back(meta.tuple_vertex(t));

                for (std::size_t j = 0 ; j < steps.size() ; ++j) {
                    if (steps[j])
                        g.add_edge(p.vertices[j], p.vertices[j + 1]);
                    else
                        g.add_edge(p.vertices[j + 1], p.vertices[j]);
                }
                meta.paths.push_back(std::move(p));
            }

        validate(g);
        meta.adjacency = std::make_shared<const Adjacency>(meta.graph);
        return meta;
    }

    auto segment_indices(const DMeta & meta, int v) -> vector<int>
    {
        auto & info = meta.info.at(v);
        if (info.kind != VertexKind::Interior)
            throw Error(ErrorKind::NotInterior, "vertex '" + meta.graph.vertices[v] + "' is not an interior path vertex");
        auto & p = meta.paths[info.index];
        vector<int> result;
        for (int l = 1 ; l <= meta.k ; ++l)
            if (p.segment_start[l] <= info.position && info.position <= p.segment_start[l + 1])
                result.push_back(l);
        return result;
    }

    auto path_of(const DMeta & meta, int v) -> pair<int, int>
    {
        auto & info = meta.info.at(v);
        if (info.kind != VertexKind::Interior)
            throw Error(ErrorKind::NotInterior, "vertex '" + meta.graph.vertices[v] + "' is not an interior path vertex");
        auto & p = meta.paths[info.index];
        return { p.element, p.tuple };
    }

    auto formula_vertices(long a, long r, long k) -> long
    {
        return (3 * k + 1) * r * a + (1 - 2 * k) * r + a;
    }

    auto formula_edges(long a, long r, long k) -> long
    {
        return (3 * k + 2) * r * a - 2 * k * r;
    }

    auto stats(const DMeta & meta) -> DStats
    {
        DStats s;
        s.vertices = meta.graph.size();
        s.edges = long(meta.graph.edges.size());
        s.height = meta.graph.levels.empty() ? 0 : *std::max_element(meta.graph.levels.begin(), meta.graph.levels.end());
        s.formula_vertices = formula_vertices(meta.element_count(), meta.tuple_count(), meta.k);
        s.formula_edges = formula_edges(meta.element_count(), meta.tuple_count(), meta.k);
        return s;
    }
}
