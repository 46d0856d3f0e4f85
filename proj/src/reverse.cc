/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <dred/reverse.hh>
#include <dred/errors.hh>
#include <dred/solver.hh>

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>

using std::map;
using std::optional;
using std::pair;
using std::set;
using std::string;
using std::to_string;
using std::variant;
using std::vector;

namespace dred
{
    auto assign_levels(const Digraph & component) -> variant<LevelAssignment, Unbalanced>
    {
        LevelAssignment result;
        int n = component.size();
        if (n == 0)
            return result;

        Adjacency adj(component);
        vector<int> level(n, 0), parent(n, -1);
        vector<bool> seen(n, false);
        std::deque<int> queue{ 0 };
        seen[0] = true;

        auto walk_to_root = [&] (int v) {
            vector<int> path{ v };
            while (parent[v] != -1)
                path.push_back(v = parent[v]);
            return path;
        };

        // an edge s -> d whose endpoints disagree closes an unbalanced walk
        auto witness = [&] (int s, int d) {
            auto ps = walk_to_root(s), pd = walk_to_root(d);
            set<int> on_ps(ps.begin(), ps.end());
            std::size_t j = 0;
            while (! on_ps.count(pd[j]))
                ++j;
            int lca = pd[j];
            Unbalanced u;
            for (auto v : ps) {
                u.cycle.push_back(v);
                if (v == lca)
                    break;
            }
            for (int i = int(j) - 1 ; i >= 0 ; --i)
                u.cycle.push_back(pd[i]);
            if (u.cycle.back() != d)
                u.cycle.push_back(d);
            u.cycle.push_back(s);
            u.net = level[d] - level[s] - 1;
            return u;
        };

        for (int start = 0 ; start < n ; ++start) {
            if (! seen[start]) {
                seen[start] = true;
                queue.push_back(start);
            }
            while (! queue.empty()) {
                int u = queue.front();
                queue.pop_front();
                for (auto v : adj.out[u]) {
                    if (! seen[v]) {
                        seen[v] = true;
                        level[v] = level[u] + 1;
                        parent[v] = u;
                        queue.push_back(v);
                    }
                    else if (level[v] != level[u] + 1)
                        return witness(u, v);
                }
                for (auto v : adj.in[u]) {
                    if (! seen[v]) {
                        seen[v] = true;
                        level[v] = level[u] - 1;
                        parent[v] = u;
                        queue.push_back(v);
                    }
                    else if (level[u] != level[v] + 1)
                        return witness(v, u);
                }
            }
        }

        int lowest = *std::min_element(level.begin(), level.end());
        for (auto & l : level)
            l -= lowest;
        result.level = level;
        result.height = *std::max_element(level.begin(), level.end());
        return result;
    }

    auto stage2_decide(const Digraph & component, const DMeta & meta) -> bool
    {
        return find_hom(component, meta.graph).has_value();
    }

    auto stage2_decide_fans(const Digraph & component, const DMeta & meta) -> bool
    {
        auto interior = [&] (const PathInfo & p, vector<int> & into) {
            for (std::size_t j = 1 ; j + 1 < p.vertices.size() ; ++j)
                into.push_back(p.vertices[j]);
        };
        auto try_target = [&] (vector<int> keep) {
            std::sort(keep.begin(), keep.end());
            keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
            return find_hom(component, induced_subgraph(meta.graph, keep)).has_value();
        };

        for (auto & p : meta.paths)
            if (try_target(p.vertices))
                return true;

        for (int a = 0 ; a < meta.element_count() ; ++a) {
            vector<int> keep{ meta.element_vertex(a) };
            for (int t = 0 ; t < meta.tuple_count() ; ++t) {
                keep.push_back(meta.tuple_vertex(t));
                interior(meta.path(a, t), keep);
            }
            if (try_target(keep))
                return true;
        }

        for (int t = 0 ; t < meta.tuple_count() ; ++t) {
            vector<int> keep{ meta.tuple_vertex(t) };
            for (int a = 0 ; a < meta.element_count() ; ++a) {
                keep.push_back(meta.element_vertex(a));
                interior(meta.path(a, t), keep);
            }
            if (try_target(keep))
                return true;
        }
        return false;
    }

    auto internal_components(const Digraph & g, const LevelAssignment & levels, int n, int first_id)
        -> vector<InternalComponent>
    {
        auto inside = [&] (int v) { return levels.level[v] > 0 && levels.level[v] < n; };

        vector<int> parent(g.size());
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&] (int x) {
            while (parent[x] != x)
                x = parent[x] = parent[parent[x]];
            return x;
        };
        for (auto & [u, v] : g.edges)
            if (inside(u) && inside(v)) {
                int a = find(u), b = find(v);
                if (a != b)
                    parent[std::max(a, b)] = std::min(a, b);
            }

        map<int, int> index_of_root;
        vector<InternalComponent> result;
        for (int v = 0 ; v < g.size() ; ++v) {
            if (! inside(v))
                continue;
            auto [it, fresh] = index_of_root.try_emplace(find(v), int(result.size()));
            if (fresh) {
                result.emplace_back();
                result.back().id = first_id + it->second;
            }
            result[it->second].vertices.push_back(v);
        }

        for (auto & [u, v] : g.edges) {
            if (levels.level[u] == 0 && inside(v))
                result[index_of_root.at(find(v))].base.push_back(u);
            if (levels.level[v] == n && inside(u))
                result[index_of_root.at(find(u))].top.push_back(v);
        }
        for (auto & c : result)
            for (auto * s : { &c.base, &c.top }) {
                std::sort(s->begin(), s->end());
                s->erase(std::unique(s->begin(), s->end()), s->end());
            }
        return result;
    }

    namespace
    {
        auto closed_component(const Digraph & g, const LevelAssignment & levels, const InternalComponent & c) -> Digraph
        {
            vector<int> keep = c.vertices;
            keep.insert(keep.end(), c.base.begin(), c.base.end());
            keep.insert(keep.end(), c.top.begin(), c.top.end());
            std::sort(keep.begin(), keep.end());
            auto sub = induced_subgraph(g, keep);
            sub.levels.clear();
            for (auto v : keep)
                sub.levels.push_back(levels.level[v]);
            return sub;
        }
    }

    auto gamma(const Digraph & g, const LevelAssignment & levels, const InternalComponent & c, int k) -> vector<int>
    {
        auto sub = closed_component(g, levels, c);
        vector<int> result;
        for (int j = 1 ; j <= k ; ++j) {
            vector<int> others;
            for (int i = 1 ; i <= k ; ++i)
                if (i != j)
                    others.push_back(i);
            if (! interpretable_at_levels(sub, PathSpec{ k, others }))
                result.push_back(j);
        }
        return result;
    }

    auto gamma_fast(const Digraph & g, const LevelAssignment & levels, const InternalComponent & c, int k) -> vector<int>
    {
        auto sub = closed_component(g, levels, c);
        Adjacency adj(sub);
        set<int> found;
        for (int u2 = 0 ; u2 < sub.size() ; ++u2) {
            if (adj.in[u2].empty())
                continue;
            bool onward = false;
            for (auto u3 : adj.out[u2])
                if (! adj.out[u3].empty())
                    onward = true;
            int j = sub.levels[u2];
            if (onward && j >= 1 && j <= k)
                found.insert(j);
        }
        return vector<int>(found.begin(), found.end());
    }

    auto build_objects(const Digraph & g, const LevelAssignment & levels,
            const vector<InternalComponent> & internals, int k) -> ReverseObjects
    {
        int n = k + 2;
        ReverseObjects objects;
        objects.k = k;

        vector<int> g0, gn;
        for (int v = 0 ; v < g.size() ; ++v) {
            if (levels.level[v] == 0)
                g0.push_back(v);
            else if (levels.level[v] == n)
                gn.push_back(v);
        }

        auto in_gamma = [] (const InternalComponent & c, int i) {
            return std::binary_search(c.gamma.begin(), c.gamma.end(), i);
        };
        auto has = [] (const vector<int> & s, int v) {
            return std::find(s.begin(), s.end(), v) != s.end();
        };

        map<int, int> base_x;
        map<std::tuple<int, int, int>, int> alpha_x;
        map<pair<int, int>, int> beta_x, gamma_x;
        auto add = [&] (XElement x) {
            objects.x.push_back(std::move(x));
            return int(objects.x.size()) - 1;
        };

        for (auto b : g0)
            base_x[b] = add(XElement{ XKind::Base, g.vertices[b], -1, b, 0 });
        for (auto & c : internals)
            if (c.top.empty())
                for (auto b : c.base)
                    for (int i = 1 ; i <= k ; ++i)
                        if (! in_gamma(c, i))
                            alpha_x[{ c.id, b, i }] = add(XElement{ XKind::Alpha,
                                    "xa:" + to_string(c.id) + ":" + g.vertices[b] + ":" + to_string(i), c.id, b, i });
        for (auto & c : internals)
            if (c.base.empty() && ! c.gamma.empty())
                for (auto e : c.top)
                    beta_x[{ c.id, e }] = add(XElement{ XKind::Beta,
                            "xb:" + to_string(c.id) + ":" + g.vertices[e], c.id, e, 0 });
        for (auto e : gn)
            for (int i = 1 ; i <= k ; ++i) {
                bool filled = false;
                for (auto & c : internals)
                    if (has(c.top, e) && in_gamma(c, i))
                        filled = true;
                if (! filled)
                    gamma_x[{ e, i }] = add(XElement{ XKind::Gamma,
                            "xg:" + g.vertices[e] + ":" + to_string(i), -1, e, i });
            }

        auto tidy = [] (vector<int> & s) {
            std::sort(s.begin(), s.end());
            s.erase(std::unique(s.begin(), s.end()), s.end());
        };

        for (auto e : gn) {
            ObjectI o{ e, vector<vector<int>>(k) };
            for (int i = 1 ; i <= k ; ++i) {
                auto & v = o.sets[i - 1];
                for (auto & c : internals) {
                    if (! has(c.top, e) || ! in_gamma(c, i))
                        continue;
                    if (! c.base.empty())
                        for (auto b : c.base)
                            v.push_back(base_x.at(b));
                    else
                        v.push_back(beta_x.at({ c.id, e }));
                }
                if (v.empty())
                    v.push_back(gamma_x.at({ e, i }));
                tidy(v);
            }
            objects.type1.push_back(std::move(o));
        }

        for (auto b : g0)
            for (auto & c : internals)
                if (c.top.empty() && has(c.base, b)) {
                    ObjectII o{ b, c.id, vector<vector<int>>(k) };
                    for (int i = 1 ; i <= k ; ++i)
                        o.sets[i - 1] = { in_gamma(c, i) ? base_x.at(b) : alpha_x.at({ c.id, b, i }) };
                    objects.type2.push_back(std::move(o));
                }

        set<pair<int, int>> three, four;
        for (auto & c : internals) {
            for (std::size_t i = 0 ; i < c.top.size() ; ++i)
                for (std::size_t j = i + 1 ; j < c.top.size() ; ++j)
                    three.insert({ c.top[i], c.top[j] });
            for (std::size_t i = 0 ; i < c.base.size() ; ++i)
                for (std::size_t j = i + 1 ; j < c.base.size() ; ++j)
                    four.insert({ c.base[i], c.base[j] });
        }
        objects.type3.assign(three.begin(), three.end());
        objects.type4.assign(four.begin(), four.end());
        return objects;
    }

    auto SimPartition::classes() const -> vector<vector<int>>
    {
        map<int, vector<int>> by_rep;
        for (int x = 0 ; x < int(representative.size()) ; ++x)
            by_rep[representative[x]].push_back(x);
        vector<vector<int>> result;
        for (auto & [rep, members] : by_rep)
            result.push_back(members);
        return result;
    }

    auto sim_closure(const ReverseObjects & objects) -> SimPartition
    {
        vector<int> parent(objects.x.size());
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&] (int x) {
            while (parent[x] != x)
                x = parent[x] = parent[parent[x]];
            return x;
        };
        auto unite = [&] (int x, int y) {
            int a = find(x), b = find(y);
            if (a != b)
                parent[std::max(a, b)] = std::min(a, b);
        };
        auto unite_all = [&] (const vector<int> & s, int with) {
            for (auto x : s)
                unite(x, with);
        };

        // rule (1): sets meeting at the same position collapse, as does each set itself
        for (auto & o : objects.type1)
            for (auto & s : o.sets)
                unite_all(s, s.front());
        for (auto & o : objects.type2)
            for (auto & s : o.sets)
                unite_all(s, s.front());

        // rule (2)
        map<int, int> x_of_vertex;
        for (int x = 0 ; x < int(objects.x.size()) ; ++x)
            if (objects.x[x].kind == XKind::Base)
                x_of_vertex[objects.x[x].vertex] = x;
        for (auto & [b, c] : objects.type4)
            unite(x_of_vertex.at(b), x_of_vertex.at(c));

        // rule (3)
        map<int, const ObjectI *> object_of_top;
        for (auto & o : objects.type1)
            object_of_top[o.top] = &o;
        for (auto & [e, f] : objects.type3) {
            auto & v = object_of_top.at(e)->sets;
            auto & w = object_of_top.at(f)->sets;
            for (int i = 0 ; i < objects.k ; ++i) {
                unite_all(v[i], v[i].front());
                unite_all(w[i], v[i].front());
            }
        }

        SimPartition p;
        for (int x = 0 ; x < int(objects.x.size()) ; ++x)
            p.representative.push_back(find(x));

        auto check = [&] (const vector<vector<int>> & sets) {
            for (auto & s : sets)
                for (auto x : s)
                    if (p.representative[x] != p.representative[s.front()])
                        throw Error(ErrorKind::InternalInvariantViolation, "a set of an object straddles two classes");
        };
        for (auto & o : objects.type1)
            check(o.sets);
        for (auto & o : objects.type2)
            check(o.sets);
        return p;
    }

    auto assemble_b(const ReverseObjects & objects, const SimPartition & partition,
            const string & name, const string & relation) -> RelStructure
    {
        RelStructure b;
        b.name = name;
        b.role = Role::Instance;
        map<int, int> element_of_rep;
        for (int x = 0 ; x < int(objects.x.size()) ; ++x)
            if (partition.representative[x] == x) {
                element_of_rep[x] = b.size();
                b.domain.push_back(objects.x[x].name);
            }

        Relation r{ relation, objects.k, { } };
        auto hyperedge = [&] (const vector<vector<int>> & sets) {
            Tuple t;
            for (auto & s : sets)
                t.push_back(element_of_rep.at(partition.representative[s.front()]));
            r.tuples.push_back(std::move(t));
        };
        for (auto & o : objects.type1)
            hyperedge(o.sets);
        for (auto & o : objects.type2)
            hyperedge(o.sets);
        b.relations.push_back(std::move(r));
        normalise(b);
        return b;
    }

    auto fixed_no(const RelStructure & a) -> RelStructure
    {
        auto & r = a.relations.at(0);
        RelStructure b;
        b.name = "fixed_no";
        b.role = Role::Instance;
        b.domain = { "x" };
        b.relations.push_back(Relation{ r.name, r.arity, { Tuple(r.arity, 0) } });
        b.blocks = a.blocks;
        return b;
    }

    auto fixed_yes(const RelStructure & a) -> RelStructure
    {
        auto & r = a.relations.at(0);
        RelStructure b;
        b.name = "fixed_yes";
        b.role = Role::Instance;
        Tuple t;
        for (int i = 0 ; i < r.arity ; ++i) {
            b.domain.push_back("y" + to_string(i + 1));
            t.push_back(i);
        }
        b.relations.push_back(Relation{ r.name, r.arity, { t } });
        b.blocks = a.blocks;
        return b;
    }

    auto outcome_name(ReverseOutcome o) -> string
    {
        switch (o) {
            case ReverseOutcome::Assembled: return "assembled";
            case ReverseOutcome::FixedYes:  return "fixed-yes";
            case ReverseOutcome::FixedNo:   return "fixed-no";
        }
        return "";
    }

    auto reverse_instance(const Digraph & g, const RelStructure & a) -> ReverseResult
    {
        if (auto c = constant_tuple_element(a))
            throw Error(ErrorKind::TrivialTemplate, "(" + a.domain[*c] + ", ..., " + a.domain[*c]
                    + ") is a tuple of the template, so every instance is a YES instance");
        return reverse_instance(g, build_d(a));
    }

    auto reverse_instance(const Digraph & g, const DMeta & meta) -> ReverseResult
    {
        auto & a = meta.base;
        if (auto c = constant_tuple_element(a))
            throw Error(ErrorKind::TrivialTemplate, "(" + a.domain[*c] + ", ..., " + a.domain[*c]
                    + ") is a tuple of the template, so every instance is a YES instance");
        validate(g);

        int k = meta.k, n = k + 2;
        ReverseResult result;
        result.outcome = ReverseOutcome::FixedYes;

        RelStructure union_b;
        union_b.name = "B_" + g.name;
        union_b.role = Role::Instance;
        union_b.relations.push_back(Relation{ a.relations[0].name, k, { } });
        union_b.blocks = a.blocks;

        int next_id = 0;
        bool failed = false;
        for (auto & vertices : connected_components(g)) {
            ComponentReport report;
            report.vertices = vertices;
            report.graph = induced_subgraph(g, vertices);
            report.graph.levels.clear();

            auto levels = assign_levels(report.graph);
            if (auto u = std::get_if<Unbalanced>(&levels)) {
                report.status = "unbalanced";
                report.witness = *u;
            }
            else {
                auto & lv = std::get<LevelAssignment>(levels);
                report.height = lv.height;
                report.graph.levels = lv.level;
                if (lv.height > n)
                    report.status = "too-tall";
                else if (lv.height < n)
                    report.status = stage2_decide(report.graph, meta) ? "short-yes" : "short-no";
                else {
                    report.status = "full";
                    report.internals = internal_components(report.graph, lv, n, next_id);
                    next_id += int(report.internals.size());
                    for (auto & c : report.internals)
                        c.gamma = gamma(report.graph, lv, c, k);
                    report.objects = build_objects(report.graph, lv, report.internals, k);
                    report.partition = sim_closure(*report.objects);
                    auto part = assemble_b(*report.objects, *report.partition, "part", a.relations[0].name);

                    int offset = union_b.size();
                    union_b.domain.insert(union_b.domain.end(), part.domain.begin(), part.domain.end());
                    for (auto t : part.relations[0].tuples) {
                        for (auto & x : t)
                            x += offset;
                        union_b.relations[0].tuples.push_back(std::move(t));
                    }
                    if (result.outcome == ReverseOutcome::FixedYes)
                        result.outcome = ReverseOutcome::Assembled;
                }
            }

            if (! failed && report.status != "full" && report.status != "short-yes") {
                failed = true;
                result.reason = "component containing '" + g.vertices[vertices.front()] + "' is " + report.status;
            }
            result.components.push_back(std::move(report));
        }

        if (failed) {
            result.outcome = ReverseOutcome::FixedNo;
            result.b = fixed_no(a);
        }
        else if (result.outcome == ReverseOutcome::FixedYes) {
            result.reason = "no component has height " + to_string(n);
            result.b = fixed_yes(a);
        }
        else {
            normalise(union_b);
            result.b = union_b;
        }
        return result;
    }

    namespace
    {
        auto names(const Digraph & g, const vector<int> & vs) -> string
        {
            string s = "{";
            for (std::size_t i = 0 ; i < vs.size() ; ++i)
                s += (i ? "," : "") + g.vertices[vs[i]];
            return s + "}";
        }

        auto x_names(const ReverseObjects & o, const vector<int> & xs) -> string
        {
            string s = "{";
            for (std::size_t i = 0 ; i < xs.size() ; ++i)
                s += (i ? "," : "") + o.x[xs[i]].name;
            return s + "}";
        }

        auto positions(const vector<int> & ps) -> string
        {
            string s = "{";
            for (std::size_t i = 0 ; i < ps.size() ; ++i)
                s += (i ? "," : "") + to_string(ps[i]);
            return s + "}";
        }
    }

    auto objects_report(const ReverseResult & result) -> string
    {
        string out = "outcome " + outcome_name(result.outcome) + "\n";
        if (! result.reason.empty())
            out += "reason " + result.reason + "\n";
        for (std::size_t ci = 0 ; ci < result.components.size() ; ++ci) {
            auto & c = result.components[ci];
            auto & g = c.graph;
            out += "component " + to_string(ci) + " " + c.status + " vertices " + to_string(c.vertices.size());
            if (c.height >= 0)
                out += " height " + to_string(c.height);
            out += "\n";
            if (c.witness) {
                out += "  witness";
                for (auto v : c.witness->cycle)
                    out += " " + g.vertices[v];
                out += " net " + to_string(c.witness->net) + "\n";
            }
            for (auto & ic : c.internals)
                out += "  internal " + to_string(ic.id) + " size " + to_string(ic.vertices.size())
                    + " base " + names(g, ic.base) + " top " + names(g, ic.top) + " gamma " + positions(ic.gamma) + "\n";
            if (! c.objects)
                continue;
            auto & o = *c.objects;
            for (auto & t : o.type1) {
                out += "  I (" + g.vertices[t.top];
                for (auto & s : t.sets)
                    out += ", " + x_names(o, s);
                out += ")\n";
            }
            for (auto & t : o.type2) {
                out += "  II (";
                for (std::size_t i = 0 ; i < t.sets.size() ; ++i)
                    out += (i ? ", " : "") + x_names(o, t.sets[i]);
                out += ") from " + g.vertices[t.base] + "\n";
            }
            for (auto & [e, f] : o.type3)
                out += "  III (" + g.vertices[e] + ", " + g.vertices[f] + ")\n";
            for (auto & [b, d] : o.type4)
                out += "  IV (" + g.vertices[b] + ", " + g.vertices[d] + ")\n";
            for (auto & cls : c.partition->classes())
                if (cls.size() > 1)
                    out += "  block " + x_names(o, cls) + "\n";
        }
        out += "hyperedges " + to_string(result.b.relations[0].tuples.size()) + "\n";
        return out;
    }
}
