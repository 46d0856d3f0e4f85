/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <dred/solver.hh>
#include <dred/errors.hh>

#include <algorithm>
#include <map>
#include <memory>
#include <set>

using std::function;
using std::make_shared;
using std::map;
using std::optional;
using std::pair;
using std::set;
using std::shared_ptr;
using std::to_string;
using std::vector;

namespace dred
{
    namespace
    {
        /// For each relation of x, the index of the relation of a it must map into.
        auto match_signature(const RelStructure & x, const RelStructure & a) -> vector<int>
        {
            if (x.relations.size() == 1 && a.relations.size() == 1
                    && x.relations[0].arity == a.relations[0].arity)
                return { 0 };

            vector<int> result;
            for (auto & r : x.relations) {
                int found = -1;
                for (std::size_t j = 0 ; j < a.relations.size() ; ++j)
                    if (a.relations[j].name == r.name)
                        found = int(j);
                if (found == -1)
                    throw Error(ErrorKind::SignatureMismatch, "relation '" + r.name + "' does not occur in '" + a.name + "'");
                if (a.relations[found].arity != r.arity)
                    throw Error(ErrorKind::SignatureMismatch, "relation '" + r.name + "' has arity " + to_string(r.arity)
                            + " in '" + x.name + "' but " + to_string(a.relations[found].arity) + " in '" + a.name + "'");
                result.push_back(found);
            }
            return result;
        }

        struct Table
        {
            vector<Tuple> rows;
            vector<vector<vector<int>>> support;    // [position][value] -> rows
        };

        struct Constraint
        {
            vector<int> scope;
            vector<bool> first;                     // first occurrence of its variable in scope
            shared_ptr<const Table> table;
        };

        class Search
        {
            private:
                int _vars, _values;
                SolveOptions _options;
                vector<Constraint> _constraints;
                vector<vector<int>> _var_constraints;
                vector<Bitset> _initial;
                bool _hopeless = false;

                const function<auto (const Hom &) -> bool> * _callback = nullptr;
                bool _stopped = false;
                long _count = 0;

            public:
                Search(const RelStructure & x, const RelStructure & a, const Restriction & restriction, SolveOptions options) :
                    _vars(x.size()),
                    _values(a.size()),
                    _options(options),
                    _var_constraints(x.size()),
                    _initial(x.size(), Bitset(a.size(), true))
                {
                    auto matching = match_signature(x, a);

                    for (auto & [v, allowed] : restriction) {
                        if (v < 0 || v >= _vars)
                            throw Error(ErrorKind::UnknownElement, "restricted element out of range");
                        Bitset d(_values);
                        for (auto b : allowed) {
                            if (b < 0 || b >= _values)
                                throw Error(ErrorKind::UnknownElement, "allowed element out of range");
                            d.set(b);
                        }
                        _initial[v] &= d;
                    }

                    map<pair<int, vector<int>>, shared_ptr<const Table>> tables;
                    for (std::size_t ri = 0 ; ri < x.relations.size() ; ++ri) {
                        auto & target = a.relations[matching[ri]];
                        for (auto & t : x.relations[ri].tuples) {
                            vector<int> pattern(t.size());
                            vector<bool> first(t.size());
                            for (std::size_t p = 0 ; p < t.size() ; ++p) {
                                pattern[p] = int(std::find(t.begin(), t.end(), t[p]) - t.begin());
                                first[p] = pattern[p] == int(p);
                            }

                            auto & table = tables[{ matching[ri], pattern }];
                            if (! table) {
                                auto built = make_shared<Table>();
                                built->support.assign(t.size(), vector<vector<int>>(_values));
                                for (auto & row : target.tuples) {
                                    bool fits = true;
                                    for (std::size_t p = 0 ; p < t.size() ; ++p)
                                        if (row[p] != row[pattern[p]])
                                            fits = false;
                                    if (! fits)
                                        continue;
                                    int id = int(built->rows.size());
                                    built->rows.push_back(row);
                                    for (std::size_t p = 0 ; p < t.size() ; ++p)
                                        built->support[p][row[p]].push_back(id);
                                }
                                table = built;
                            }

                            if (table->rows.empty())
                                _hopeless = true;

                            int id = int(_constraints.size());
                            _constraints.push_back(Constraint{ t, first, table });
                            for (std::size_t p = 0 ; p < t.size() ; ++p)
                                if (first[p])
                                    _var_constraints[t[p]].push_back(id);
                        }
                    }

                    for (auto & d : _initial)
                        if (d.none())
                            _hopeless = true;
                }

                auto run(const function<auto (const Hom &) -> bool> & callback) -> long
                {
                    if (_hopeless)
                        return 0;
                    _callback = &callback;
                    auto domains = _initial;
                    if (_options.propagate) {
                        vector<int> all(_constraints.size());
                        for (std::size_t c = 0 ; c < all.size() ; ++c)
                            all[c] = int(c);
                        if (! propagate(domains, all))
                            return 0;
                    }
                    recurse(domains);
                    return _count;
                }

            private:
                auto supported(const Constraint & c, int row, const vector<Bitset> & domains) const -> bool
                {
                    auto & r = c.table->rows[row];
                    for (std::size_t q = 0 ; q < c.scope.size() ; ++q)
                        if (! domains[c.scope[q]].test(r[q]))
                            return false;
                    return true;
                }

                /// Generalised arc consistency over a queue of constraints.
                auto propagate(vector<Bitset> & domains, vector<int> queue) -> bool
                {
                    vector<bool> queued(_constraints.size(), false);
                    for (auto c : queue)
                        queued[c] = true;

                    while (! queue.empty()) {
                        int ci = queue.back();
                        queue.pop_back();
                        queued[ci] = false;
                        auto & c = _constraints[ci];

                        for (std::size_t p = 0 ; p < c.scope.size() ; ++p) {
                            if (! c.first[p])
                                continue;
                            int v = c.scope[p];
                            Bitset kept(_values);
                            domains[v].for_each([&] (int value) {
                                for (auto row : c.table->support[p][value])
                                    if (supported(c, row, domains)) {
                                        kept.set(value);
                                        return;
                                    }
                            });
                            if (kept == domains[v])
                                continue;
                            if (kept.none())
                                return false;
                            domains[v] = kept;
                            for (auto other : _var_constraints[v])
                                if (other != ci && ! queued[other]) {
                                    queued[other] = true;
                                    queue.push_back(other);
                                }
                        }
                    }
                    return true;
                }

                /// Without propagation, only check constraints whose scope is fully fixed.
                auto check_fixed(const vector<Bitset> & domains, int v) const -> bool
                {
                    for (auto ci : _var_constraints[v]) {
                        auto & c = _constraints[ci];
                        bool fixed = true;
                        for (auto u : c.scope)
                            if (domains[u].count() != 1)
                                fixed = false;
                        if (! fixed)
                            continue;
                        bool ok = false;
                        for (auto row : c.table->support[0][domains[c.scope[0]].find_first()])
                            if (supported(c, row, domains)) {
                                ok = true;
                                break;
                            }
                        if (! ok)
                            return false;
                    }
                    return true;
                }

                auto satisfied(const vector<Bitset> & domains) const -> bool
                {
                    for (auto & c : _constraints) {
                        bool ok = false;
                        for (auto row : c.table->support[0][domains[c.scope[0]].find_first()])
                            if (supported(c, row, domains)) {
                                ok = true;
                                break;
                            }
                        if (! ok)
                            return false;
                    }
                    return true;
                }

                auto recurse(vector<Bitset> & domains) -> void
                {
                    int branch = -1, best_size = 0, best_degree = 0;
                    for (int v = 0 ; v < _vars ; ++v) {
                        int size = domains[v].count();
                        if (size <= 1)
                            continue;
                        int degree = int(_var_constraints[v].size());
                        if (branch == -1 || size < best_size || (size == best_size && degree > best_degree)) {
                            branch = v;
                            best_size = size;
                            best_degree = degree;
                        }
                    }

                    if (branch == -1) {
                        if (! satisfied(domains))
                            return;
                        Hom h(_vars);
                        for (int v = 0 ; v < _vars ; ++v)
                            h[v] = domains[v].find_first();
                        ++_count;
                        if (! (*_callback)(h))
                            _stopped = true;
                        return;
                    }

                    vector<int> values;
                    domains[branch].for_each([&] (int value) { values.push_back(value); });
                    for (auto value : values) {
                        auto next = domains;
                        next[branch].clear();
                        next[branch].set(value);
                        bool ok = _options.propagate ? propagate(next, _var_constraints[branch]) : check_fixed(next, branch);
                        if (ok)
                            recurse(next);
                        if (_stopped)
                            return;
                    }
                }
        };

        auto instance_of(const Digraph & g) -> RelStructure
        {
            return as_structure(g, Role::Instance);
        }

        auto template_of(const Digraph & g) -> RelStructure
        {
            return as_structure(g, Role::Template);
        }
    }

    auto is_hom(const RelStructure & x, const RelStructure & a, const Hom & h) -> bool
    {
        if (int(h.size()) != x.size())
            return false;
        for (auto v : h)
            if (v < 0 || v >= a.size())
                return false;
        auto matching = match_signature(x, a);
        for (std::size_t ri = 0 ; ri < x.relations.size() ; ++ri) {
            auto & target = a.relations[matching[ri]].tuples;
            set<Tuple> rows(target.begin(), target.end());
            for (auto & t : x.relations[ri].tuples) {
                Tuple image;
                for (auto v : t)
                    image.push_back(h[v]);
                if (! rows.count(image))
                    return false;
            }
        }
        return true;
    }

    auto is_hom(const Digraph & x, const Digraph & a, const Hom & h) -> bool
    {
        return is_hom(instance_of(x), template_of(a), h);
    }

    auto enumerate_homs(const RelStructure & x, const RelStructure & a, const Restriction & restriction,
            const function<auto (const Hom &) -> bool> & f, SolveOptions options) -> long
    {
        Search search(x, a, restriction, options);
        return search.run(f);
    }

    auto enumerate_homs(const Digraph & x, const Digraph & a, const Restriction & restriction,
            const function<auto (const Hom &) -> bool> & f, SolveOptions options) -> long
    {
        return enumerate_homs(instance_of(x), template_of(a), restriction, f, options);
    }

    auto find_hom(const RelStructure & x, const RelStructure & a, const Restriction & restriction,
            SolveOptions options) -> optional<Hom>
    {
        optional<Hom> result;
        enumerate_homs(x, a, restriction, [&] (const Hom & h) {
                result = h;
                return false;
            }, options);
        return result;
    }

    auto find_hom(const Digraph & x, const Digraph & a, const Restriction & restriction,
            SolveOptions options) -> optional<Hom>
    {
        return find_hom(instance_of(x), template_of(a), restriction, options);
    }

    auto count_homs(const RelStructure & x, const RelStructure & a, const Restriction & restriction) -> long
    {
        return enumerate_homs(x, a, restriction, [] (const Hom &) { return true; });
    }

    auto count_homs(const Digraph & x, const Digraph & a, const Restriction & restriction) -> long
    {
        return count_homs(instance_of(x), template_of(a), restriction);
    }

    auto endomorphisms(const RelStructure & a) -> vector<Hom>
    {
        vector<Hom> result;
        enumerate_homs(a, a, { }, [&] (const Hom & h) {
                result.push_back(h);
                return true;
            });
        return result;
    }

    namespace
    {
        /// An endomorphism whose image misses some element, if there is one.
        auto shrinking_endomorphism(const RelStructure & a) -> optional<Hom>
        {
            for (int v = 0 ; v < a.size() ; ++v) {
                vector<int> others;
                for (int b = 0 ; b < a.size() ; ++b)
                    if (b != v)
                        others.push_back(b);
                Restriction r;
                for (int x = 0 ; x < a.size() ; ++x)
                    r[x] = others;
                if (auto h = find_hom(a, a, r))
                    return h;
            }
            return std::nullopt;
        }

        auto induced(const RelStructure & a, const vector<int> & keep) -> RelStructure
        {
            vector<int> position(a.size(), -1);
            RelStructure result;
            result.name = a.name;
            result.role = a.role;
            for (std::size_t i = 0 ; i < keep.size() ; ++i) {
                position[keep[i]] = int(i);
                result.domain.push_back(a.domain[keep[i]]);
            }
            for (auto & r : a.relations) {
                Relation kept{ r.name, r.arity, { } };
                for (auto & t : r.tuples) {
                    Tuple mapped;
                    for (auto v : t)
                        if (position[v] != -1)
                            mapped.push_back(position[v]);
                    if (mapped.size() == t.size())
                        kept.tuples.push_back(std::move(mapped));
                }
                result.relations.push_back(std::move(kept));
            }
            return result;
        }
    }

    auto is_core(const RelStructure & a) -> bool
    {
        return ! shrinking_endomorphism(a);
    }

    auto is_core(const Digraph & g) -> bool
    {
        return is_core(template_of(g));
    }

    auto core_of(const RelStructure & a) -> CoreResult
    {
        // current is induced on elements (indices into a); g maps a onto elements
        vector<int> elements(a.size());
        Hom g(a.size());
        for (int i = 0 ; i < a.size() ; ++i)
            elements[i] = g[i] = i;
        RelStructure current = a;

        while (auto h = shrinking_endomorphism(current)) {
            set<int> image(h->begin(), h->end());
            vector<int> local(image.begin(), image.end());
            vector<int> next_elements;
            for (auto l : local)
                next_elements.push_back(elements[l]);

            // position of a's element within current
            vector<int> position(a.size(), -1);
            for (std::size_t i = 0 ; i < elements.size() ; ++i)
                position[elements[i]] = int(i);
            for (auto & x : g)
                x = elements[(*h)[position[x]]];

            current = induced(current, local);
            elements = next_elements;
        }

        // g restricted to the core is an automorphism; power it to the identity
        Hom retraction = g;
        auto identity_on_core = [&] (const Hom & r) {
            for (auto e : elements)
                if (r[e] != e)
                    return false;
            return true;
        };
        while (! identity_on_core(retraction)) {
            Hom next(a.size());
            for (int x = 0 ; x < a.size() ; ++x)
                next[x] = g[retraction[x]];
            retraction = next;
        }

        return CoreResult{ current, elements, retraction };
    }

    auto interpretable_at_levels(const Digraph & h, const PathSpec & spec,
            const map<int, vector<int>> & anchors) -> bool
    {
        if (int(h.levels.size()) != h.size())
            throw Error(ErrorKind::UnbalancedInput, "levels are not assigned");
        for (auto & [u, v] : h.edges)
            if (h.levels[v] != h.levels[u] + 1)
                throw Error(ErrorKind::UnbalancedInput, "levels do not increase along every edge");

        auto q = build_path(spec);
        Restriction r;
        for (int v = 0 ; v < h.size() ; ++v) {
            vector<int> allowed;
            auto anchor = anchors.find(v);
            for (int p = 0 ; p < q.size() ; ++p)
                if (q.levels[p] == h.levels[v])
                    if (anchor == anchors.end() || std::find(anchor->second.begin(), anchor->second.end(), p) != anchor->second.end())
                        allowed.push_back(p);
            r[v] = allowed;
        }
        return find_hom(h, q, r).has_value();
    }
}
