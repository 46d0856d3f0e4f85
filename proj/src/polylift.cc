/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <dred/polylift.hh>
#include <dred/errors.hh>

#include <algorithm>
#include <deque>
#include <set>

using std::array;
using std::map;
using std::optional;
using std::set;
using std::string;
using std::to_string;
using std::vector;

namespace dred
{
    auto zigzag_structure() -> RelStructure
    {
        auto s = as_structure(zigzag(), Role::Template);
        return s;
    }

    namespace
    {
        auto contains(const vector<int> & xs, int v) -> bool
        {
            return std::find(xs.begin(), xs.end(), v) != xs.end();
        }

        auto all_equal(const vector<int> & xs) -> bool
        {
            return std::adjacent_find(xs.begin(), xs.end(), std::not_equal_to<>()) == xs.end();
        }
    }

    auto zz_meet() -> OpTable
    {
        return make_op("meet", 2, 4, [] (const vector<int> & x) { return std::min(x[0], x[1]); });
    }

    auto zz_join() -> OpTable
    {
        return make_op("join", 2, 4, [] (const vector<int> & x) { return std::max(x[0], x[1]); });
    }

    auto zz_median() -> OpTable
    {
        return make_op("median", 3, 4, [] (const vector<int> & x) {
                auto s = x;
                std::sort(s.begin(), s.end());
                return s[1];
            });
    }

    auto zz_allmin(int m) -> OpTable
    {
        return make_op("allmin", m, 4, [] (const vector<int> & x) { return *std::min_element(x.begin(), x.end()); });
    }

    auto zz_p1() -> OpTable
    {
        return make_op("p1", 3, 4, [] (const vector<int> & x) {
                if (x[1] != x[2] && contains(x, z01))
                    return z01;
                if (x[1] != x[2] && contains(x, z10))
                    return z10;
                return x[0];
            });
    }

    auto zz_p2() -> OpTable
    {
        return make_op("p2", 3, 4, [] (const vector<int> & x) {
                if (x[0] != x[1] && contains(x, z01))
                    return z01;
                if (x[0] != x[1] && contains(x, z10))
                    return z10;
                if (x[0] == x[1])
                    return x[2];
                return x[0];
            });
    }

    auto zz_preserves_sides(const OpTable & f) -> bool
    {
        bool ok = true;
        for (auto side : { array<int, 2>{ z00, z10 }, array<int, 2>{ z01, z11 } })
            for_each_tuple(2, f.arity, [&] (const vector<int> & choice) {
                    vector<int> args;
                    for (auto c : choice)
                        args.push_back(side[c]);
                    int v = f(args);
                    if (v != side[0] && v != side[1])
                        ok = false;
                });
        return ok;
    }

    auto level_of(const DMeta & meta, int v) -> int
    {
        return meta.graph.levels[v];
    }

    auto order_key(const DMeta & meta, int v, Order order) -> array<int, 4>
    {
        auto & info = meta.info[v];
        int level = level_of(meta, v);
        switch (info.kind) {
            case VertexKind::Element: return { level, info.index, 0, 0 };
            case VertexKind::Tuple:   return { level, info.index, 0, 0 };
            case VertexKind::Interior: {
                auto & p = meta.paths[info.index];
                if (order == Order::Plain)
                    return { level, p.element, p.tuple, info.position };
                return { level, p.tuple, p.element, info.position };
            }
        }
        return { };
    }

    auto order_less(const DMeta & meta, int x, int y, Order order) -> bool
    {
        return order_key(meta, x, order) < order_key(meta, y, order);
    }

    auto order_min(const DMeta & meta, const vector<int> & vs, Order order) -> int
    {
        return *std::min_element(vs.begin(), vs.end(), [&] (int x, int y) { return order_less(meta, x, y, order); });
    }

    auto order_max(const DMeta & meta, const vector<int> & vs, Order order) -> int
    {
        return *std::max_element(vs.begin(), vs.end(), [&] (int x, int y) { return order_less(meta, x, y, order); });
    }

    namespace
    {
        auto adjacency_of(const DMeta & meta) -> const Adjacency &
        {
            if (! meta.adjacency)
                throw Error(ErrorKind::InternalInvariantViolation, "D(A) metadata has no adjacency");
            return *meta.adjacency;
        }
    }

    auto in_delta(const DMeta & meta, const vector<int> & c) -> bool
    {
        vector<int> levels;
        for (auto v : c)
            levels.push_back(level_of(meta, v));
        if (! all_equal(levels))
            return false;
        auto & adj = adjacency_of(meta);
        bool all_out = true, all_in = true;
        for (auto v : c) {
            all_out = all_out && ! adj.out[v].empty();
            all_in = all_in && ! adj.in[v].empty();
        }
        return all_out || all_in;
    }

    auto delta_pairs_by_search(const DMeta & meta) -> vector<bool>
    {
        int n = meta.graph.size();
        Adjacency adj(meta.graph);
        vector<bool> reached(n * n, false);
        std::deque<int> queue;
        for (int v = 0 ; v < n ; ++v) {
            reached[v * n + v] = true;
            queue.push_back(v * n + v);
        }
        while (! queue.empty()) {
            int p = queue.front();
            queue.pop_front();
            int x = p / n, y = p % n;
            auto visit = [&] (const vector<vector<int>> & step) {
                for (auto u : step[x])
                    for (auto w : step[y])
                        if (! reached[u * n + w]) {
                            reached[u * n + w] = true;
                            queue.push_back(u * n + w);
                        }
            };
            visit(adj.out);
            visit(adj.in);
        }
        return reached;
    }

    auto case_name(LiftCase c) -> string
    {
        switch (c) {
            case LiftCase::ElementTuple: return "1a";
            case LiftCase::TupleTuple:   return "1b";
            case LiftCase::ForcedEdge:   return "2a";
            case LiftCase::AllZigzag:    return "2b";
            case LiftCase::SomeZigzag:   return "2c";
            case LiftCase::TwoPaths:     return "3a";
            case LiftCase::OnePath:      return "3a1";
            case LiftCase::TwoLevels:    return "3b";
            case LiftCase::Minimum:      return "3c";
        }
        return "";
    }

    namespace
    {
        auto apply_coordinatewise(const OpTable & f, const vector<const Tuple *> & ts) -> Tuple
        {
            Tuple result(ts.front()->size());
            vector<int> column(ts.size());
            for (std::size_t p = 0 ; p < result.size() ; ++p) {
                for (std::size_t i = 0 ; i < ts.size() ; ++i)
                    column[i] = (*ts[i])[p];
                result[p] = f(column);
            }
            return result;
        }

        auto target_path(const DMeta & meta, const vector<int> & paths, const OpTable & fa) -> int
        {
            vector<int> elements;
            vector<const Tuple *> tuples;
            for (auto p : paths) {
                elements.push_back(meta.paths[p].element);
                tuples.push_back(&meta.tuples[meta.paths[p].tuple]);
            }
            auto t = meta.tuple_index(apply_coordinatewise(fa, tuples));
            if (! t)
                throw Error(ErrorKind::NotAPolymorphism, "operation '" + fa.name + "' does not preserve the relation");
            return fa(elements) * meta.tuple_count() + *t;
        }
    }

    auto classify(const DMeta & meta, const vector<int> & c, const OpTable * fa) -> CaseData
    {
        CaseData d;
        int m = int(c.size());
        bool all_elements = true, all_tuples = true;
        for (auto v : c) {
            auto & info = meta.info[v];
            all_elements = all_elements && info.kind == VertexKind::Element;
            all_tuples = all_tuples && info.kind == VertexKind::Tuple;
            d.paths.push_back(info.kind == VertexKind::Interior ? info.index : -1);
        }
        if (all_elements) {
            d.tag = LiftCase::ElementTuple;
            return d;
        }
        if (all_tuples) {
            d.tag = LiftCase::TupleTuple;
            return d;
        }

        if (in_delta(meta, c)) {
            // equal levels away from 0 and k+2, so every entry is interior
            set<int> common;
            for (int l = 1 ; l <= meta.k ; ++l)
                common.insert(l);
            for (auto v : c) {
                auto s = segment_indices(meta, v);
                set<int> keep;
                for (auto l : s)
                    if (common.count(l))
                        keep.insert(l);
                common = keep;
            }
            if (common.empty())
                throw Error(ErrorKind::InternalInvariantViolation, "tuple in the diagonal component shares no segment");
            d.l = *common.begin();

            bool every_zigzag = true;
            for (int i = 0 ; i < m ; ++i)
                every_zigzag = every_zigzag && ! meta.paths[d.paths[i]].single(d.l);

            if (fa) {
                d.e = target_path(meta, d.paths, *fa);
                if (meta.paths[d.e].single(d.l))
                    d.tag = LiftCase::ForcedEdge;
                else
                    d.tag = every_zigzag ? LiftCase::AllZigzag : LiftCase::SomeZigzag;
            }
            else
                d.tag = every_zigzag ? LiftCase::AllZigzag : LiftCase::SomeZigzag;
            return d;
        }

        set<int> levels;
        for (auto v : c)
            levels.insert(level_of(meta, v));
        if (levels.size() == 1) {
            set<int> paths(d.paths.begin(), d.paths.end());
            if (paths.size() == 2 && ! paths.count(-1)) {
                d.tag = LiftCase::TwoPaths;
                d.carriers.assign(paths.begin(), paths.end());
                return d;
            }
            // Two distinct entries on one path, say an out-only and an
            // in-only vertex between two zigzags. Such tuples are isolated
            // in D(A)^m, but the minimum rule would break f(x,...,y) = x.
            if (paths.size() == 1 && ! paths.count(-1)) {
                d.tag = LiftCase::OnePath;
                d.carriers = { order_min(meta, c) };
                return d;
            }
        }
        else if (levels.size() == 2) {
            d.tag = LiftCase::TwoLevels;
            d.carriers.assign(levels.begin(), levels.end());
            return d;
        }
        d.tag = LiftCase::Minimum;
        return d;
    }

    LiftedOp::LiftedOp(const DMeta & meta, OpTable fa, OpTable fz) :
        _meta(&meta),
        _fa(std::move(fa)),
        _fz(std::move(fz))
    {
    }

    auto LiftedOp::apply_tuples(const vector<int> & c) const -> int
    {
        vector<const Tuple *> tuples;
        for (auto v : c)
            tuples.push_back(&_meta->tuples[_meta->info[v].index]);
        auto t = _meta->tuple_index(apply_coordinatewise(_fa, tuples));
        if (! t)
            throw Error(ErrorKind::NotAPolymorphism, "operation '" + _fa.name + "' does not preserve the relation");
        return _meta->tuple_vertex(*t);
    }

    auto LiftedOp::case2(const vector<int> & c, const CaseData & d) const -> int
    {
        auto & meta = *_meta;
        auto & target = meta.paths[d.e];
        int start = target.segment_start[d.l];
        int level = level_of(meta, c.front());

        if (d.tag == LiftCase::ForcedEdge)
            return target.vertices[start + (level == d.l ? 0 : 1)];

        auto phi = [&] (int i) {
            auto & p = meta.paths[d.paths[i]];
            return meta.info[c[i]].position - p.segment_start[d.l];
        };

        if (d.tag == LiftCase::AllZigzag) {
            vector<int> args;
            for (int i = 0 ; i < int(c.size()) ; ++i)
                args.push_back(phi(i));
            return target.vertices[start + _fz(args)];
        }

        vector<int> candidates;
        for (int i = 0 ; i < int(c.size()) ; ++i)
            if (! meta.paths[d.paths[i]].single(d.l))
                candidates.push_back(target.vertices[start + phi(i)]);
        return order_min(meta, candidates);
    }

    auto LiftedOp::operator() (const vector<int> & c) const -> int
    {
        auto & meta = *_meta;
        auto d = classify(meta, c, &_fa);
        switch (d.tag) {
            case LiftCase::ElementTuple:
                return meta.element_vertex(_fa(c));

            case LiftCase::TupleTuple:
                return apply_tuples(c);

            case LiftCase::ForcedEdge:
            case LiftCase::AllZigzag:
            case LiftCase::SomeZigzag:
                return case2(c, d);

            case LiftCase::TwoPaths:
            case LiftCase::OnePath:
            case LiftCase::TwoLevels: {
                vector<int> side;
                for (int i = 0 ; i < int(c.size()) ; ++i) {
                    int key = d.tag == LiftCase::TwoPaths ? d.paths[i]
                        : d.tag == LiftCase::OnePath ? c[i] : level_of(meta, c[i]);
                    side.push_back(key == d.carriers[0] ? z00 : z10);
                }
                int z = _fz(side);
                if (z != z00 && z != z10)
                    throw Error(ErrorKind::InternalInvariantViolation, "zigzag operation '" + _fz.name + "' leaves {00,10}");
                vector<int> chosen;
                for (int i = 0 ; i < int(c.size()) ; ++i)
                    if (side[i] == z)
                        chosen.push_back(c[i]);
                if (d.tag == LiftCase::TwoLevels && z == z10)
                    return order_max(meta, chosen, Order::Star);
                return order_min(meta, chosen);
            }

            case LiftCase::Minimum:
                return order_min(meta, c);
        }
        throw Error(ErrorKind::InternalInvariantViolation, "unhandled case");
    }

    auto lift_op(const DMeta & meta, const OpTable & fa, const OpTable & fz) -> LiftedOp
    {
        if (fa.arity != fz.arity)
            throw Error(ErrorKind::ArityMismatch, "operation '" + fa.name + "' has arity " + to_string(fa.arity)
                    + " on A but " + to_string(fz.arity) + " on the zigzag");
        if (fa.size != meta.element_count())
            throw Error(ErrorKind::ArityMismatch, "operation '" + fa.name + "' is over " + to_string(fa.size)
                    + " elements, template has " + to_string(meta.element_count()));
        if (fz.size != 4)
            throw Error(ErrorKind::ArityMismatch, "zigzag operation '" + fz.name + "' is not over 4 elements");
        if (! is_polymorphism(fa, meta.base))
            throw Error(ErrorKind::NotAPolymorphism, "operation '" + fa.name + "' is not a polymorphism of the template");
        return LiftedOp(meta, fa, fz);
    }

    auto polymorphism_failure(const DMeta & meta, const LiftedOp & f) -> optional<string>
    {
        auto & g = meta.graph;
        auto & adj = adjacency_of(meta);
        int m = f.arity();
        vector<int> from(m), to(m);
        optional<string> failure;
        for_each_tuple(int(g.edges.size()), m, [&] (const vector<int> & choice) {
                if (failure)
                    return;
                for (int i = 0 ; i < m ; ++i) {
                    from[i] = g.edges[choice[i]].first;
                    to[i] = g.edges[choice[i]].second;
                }
                int u = f(from), v = f(to);
                if (! adj.has_edge(u, v)) {
                    string s = "edge tuple (";
                    for (int i = 0 ; i < m ; ++i)
                        s += (i ? " " : "") + g.vertices[from[i]] + "->" + g.vertices[to[i]];
                    failure = s + ") goes to the non-edge " + g.vertices[u] + " -> " + g.vertices[v];
                }
            });
        return failure;
    }

    namespace
    {
        auto evaluate(const LiftedMap & ops, const Term & t, const map<string, int> & env) -> int
        {
            if (t.is_variable())
                return env.at(t.args[0]);
            vector<int> args;
            for (auto & a : t.args)
                args.push_back(env.at(a));
            return ops.at(t.symbol)(args);
        }
    }

    auto identity_failure(const DMeta & meta, const LiftedMap & ops, const IdentitySet & sigma) -> optional<string>
    {
        int n = meta.graph.size();
        for (auto & id : sigma.identities) {
            auto vars = id.variables();
            optional<string> failure;
            map<string, int> env;
            for_each_tuple(n, int(vars.size()), [&] (const vector<int> & values) {
                    if (failure)
                        return;
                    for (std::size_t i = 0 ; i < vars.size() ; ++i)
                        env[vars[i]] = values[i];
                    if (evaluate(ops, id.lhs, env) != evaluate(ops, id.rhs, env)) {
                        string s = id.text() + " fails at";
                        for (std::size_t i = 0 ; i < vars.size() ; ++i)
                            s += " " + vars[i] + "=" + meta.graph.vertices[values[i]];
                        failure = s;
                    }
                });
            if (failure)
                return failure;
        }
        return std::nullopt;
    }

    auto check_shape(const IdentitySet & sigma) -> void
    {
        for (auto & id : sigma.identities)
            if (! id.balanced() && id.variables().size() > 2)
                throw Error(ErrorKind::ShapeViolation, "identity " + id.text() + " is neither balanced nor in at most two variables");
        if (auto f = idempotency_missing(sigma))
            throw Error(ErrorKind::ShapeViolation, "no idempotency identity for '" + *f + "'");
    }

    auto lift_all(const DMeta & meta, const IdentitySet & sigma,
            const optional<OpMap> & on_a, const optional<OpMap> & on_z) -> optional<LiftReport>
    {
        check_shape(sigma);
        LiftReport report;

        auto z = zigzag_structure();
        if (on_z) {
            report.on_z = *on_z;
            for (auto & [symbol, arity] : sigma.symbols) {
                auto it = report.on_z.find(symbol);
                if (it == report.on_z.end())
                    throw Error(ErrorKind::ZigzagWitnessFails, "no zigzag operation for '" + symbol + "'");
                if (it->second.arity != arity || it->second.size != 4 || ! is_polymorphism(it->second, z))
                    throw Error(ErrorKind::ZigzagWitnessFails, "operation for '" + symbol + "' is not an "
                            + to_string(arity) + "-ary polymorphism of the zigzag");
            }
            if (auto f = first_failure(report.on_z, sigma, 4))
                throw Error(ErrorKind::ZigzagWitnessFails, *f);
        }
        else {
            auto found = find_operations(z, sigma);
            if (! found)
                throw Error(ErrorKind::ZigzagWitnessFails, "the zigzag has no polymorphisms satisfying the identities");
            report.on_z = *found;
        }

        if (on_a) {
            report.on_a = *on_a;
            for (auto & [symbol, arity] : sigma.symbols) {
                auto it = report.on_a.find(symbol);
                if (it == report.on_a.end())
                    throw Error(ErrorKind::NotAPolymorphism, "no operation on the template for '" + symbol + "'");
                if (it->second.arity != arity)
                    throw Error(ErrorKind::ArityMismatch, "operation for '" + symbol + "' has arity " + to_string(it->second.arity));
                if (it->second.size != meta.element_count() || ! is_polymorphism(it->second, meta.base))
                    throw Error(ErrorKind::NotAPolymorphism, "operation for '" + symbol + "' is not a polymorphism of the template");
            }
            if (auto f = first_failure(report.on_a, sigma, meta.element_count()))
                throw Error(ErrorKind::NotAPolymorphism, "template operations do not satisfy " + *f);
        }
        else {
            auto found = find_operations(meta.base, sigma);
            if (! found)
                return std::nullopt;
            report.on_a = *found;
        }

        report.ok = true;
        for (auto & [symbol, arity] : sigma.symbols) {
            report.lifted.emplace(symbol, lift_op(meta, report.on_a.at(symbol), report.on_z.at(symbol)));
            auto & f = report.lifted.at(symbol);
            long tuples = 1;
            for (int i = 0 ; i < arity ; ++i)
                tuples *= long(meta.graph.edges.size());
            if (auto fail = polymorphism_failure(meta, f)) {
                report.ok = false;
                report.lines.push_back("polymorphism " + symbol + " FAIL " + *fail);
            }
            else
                report.lines.push_back("polymorphism " + symbol + " ok " + to_string(tuples) + " edge tuples");
        }

        for (auto & id : sigma.identities) {
            IdentitySet one{ sigma.symbols, { id } };
            long evaluations = 1;
            for (std::size_t i = 0 ; i < id.variables().size() ; ++i)
                evaluations *= meta.graph.size();
            if (auto fail = identity_failure(meta, report.lifted, one)) {
                report.ok = false;
                report.lines.push_back("identity FAIL " + *fail);
            }
            else
                report.lines.push_back("identity " + id.text() + " ok " + to_string(evaluations) + " evaluations");
        }
        return report;
    }

    auto lift_endomorphism(const DMeta & meta, const Hom & phi) -> Hom
    {
        if (int(phi.size()) != meta.element_count() || ! is_hom(meta.base, meta.base, phi))
            throw Error(ErrorKind::NotEndomorphism, "map is not an endomorphism of the template");

        Hom result(meta.graph.size(), -1);
        for (int a = 0 ; a < meta.element_count() ; ++a)
            result[meta.element_vertex(a)] = meta.element_vertex(phi[a]);

        vector<int> tuple_image;
        for (auto & r : meta.tuples) {
            Tuple s;
            for (auto x : r)
                s.push_back(phi[x]);
            auto t = meta.tuple_index(s);
            if (! t)
                throw Error(ErrorKind::NotEndomorphism, "map does not preserve the relation");
            tuple_image.push_back(*t);
        }
        for (int t = 0 ; t < meta.tuple_count() ; ++t)
            result[meta.tuple_vertex(t)] = meta.tuple_vertex(tuple_image[t]);

        for (auto & p : meta.paths) {
            auto & q = meta.path(phi[p.element], tuple_image[p.tuple]);
            auto local = path_hom(p.spec, q.spec);
            if (! local)
                throw Error(ErrorKind::InternalInvariantViolation, "no path homomorphism between paths of D(A)");
            for (std::size_t j = 1 ; j + 1 < p.vertices.size() ; ++j)
                result[p.vertices[j]] = q.vertices[(*local)[j]];
        }

        if (! is_hom(meta.graph, meta.graph, result))
            throw Error(ErrorKind::InternalInvariantViolation, "lifted map is not an endomorphism of D(A)");
        return result;
    }

    auto restrict_endomorphism(const DMeta & meta, const Hom & big_phi) -> Hom
    {
        if (int(big_phi.size()) != meta.graph.size() || ! is_hom(meta.graph, meta.graph, big_phi))
            throw Error(ErrorKind::NotEndomorphism, "map is not an endomorphism of D(A)");
        Hom result;
        for (int a = 0 ; a < meta.element_count() ; ++a) {
            auto & info = meta.info[big_phi[meta.element_vertex(a)]];
            if (info.kind != VertexKind::Element)
                throw Error(ErrorKind::InternalInvariantViolation, "endomorphism of D(A) moves an element off level 0");
            result.push_back(info.index);
        }
        return result;
    }
}
