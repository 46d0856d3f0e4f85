/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <dred/verify.hh>
#include <dred/dbuild.hh>
#include <dred/errors.hh>
#include <dred/forward.hh>
#include <dred/operations.hh>
#include <dred/polylift.hh>
#include <dred/random.hh>
#include <dred/reverse.hh>
#include <dred/singleton.hh>
#include <dred/solver.hh>

#include <algorithm>
#include <functional>
#include <map>
#include <set>

using std::function;
using std::map;
using std::optional;
using std::set;
using std::string;
using std::to_string;
using std::uint64_t;
using std::vector;

namespace dred
{
    auto named_fixture(const string & name) -> optional<RelStructure>
    {
        if (name == "two-cycle")
            return make_structure("two_cycle", numbered_domain(2), { Relation{ "E", 2, { { 0, 1 }, { 1, 0 } } } }, Role::Template);
        if (name == "single-edge")
            return make_structure("single_edge", numbered_domain(2), { Relation{ "E", 2, { { 0, 1 } } } }, Role::Template);
        if (name == "parity")
            return make_structure("parity", numbered_domain(2),
                    { Relation{ "R", 4, { { 0, 0, 0, 1 }, { 0, 1, 1, 1 }, { 1, 0, 1, 1 }, { 1, 1, 0, 1 } } } }, Role::Template);
        return std::nullopt;
    }

    auto fixture_names() -> vector<string>
    {
        return { "two-cycle", "single-edge", "parity" };
    }

    auto SuiteReport::summary() const -> string
    {
        return suite + ": " + to_string(passed) + "/" + to_string(passed + failed) + (ok() ? " ok" : " FAILED");
    }

    auto suite_names() -> vector<string>
    {
        return { "counts", "observation", "forward-eq", "reverse-eq", "orders", "delta", "lift", "endo", "core" };
    }

    namespace
    {
        auto record(SuiteReport & report, const string & label, const optional<string> & failure, const string & detail = "")
        {
            if (failure) {
                ++report.failed;
                report.lines.push_back(label + " FAIL " + *failure);
            }
            else {
                ++report.passed;
                report.lines.push_back(label + " ok" + (detail.empty() ? "" : " " + detail));
            }
        }

        // Each trial gets its own seed so that a failure can be replayed alone.
        auto each_trial(SuiteReport & report, uint64_t seed, int trials,
                const function<auto (Rng &, string &) -> optional<string>> & body)
        {
            Rng master(seed);
            for (int i = 0 ; i < trials ; ++i) {
                uint64_t trial_seed = master.next();
                Rng rng(trial_seed);
                string detail;
                optional<string> failure;
                try {
                    failure = body(rng, detail);
                }
                catch (const Error & e) {
                    failure = string(e.what());
                }
                record(report, "trial " + to_string(i) + " seed " + to_string(trial_seed), failure, detail);
            }
        }

        auto templates_or_fixtures(const vector<RelStructure> & templates) -> vector<RelStructure>
        {
            if (! templates.empty())
                return templates;
            vector<RelStructure> result;
            for (auto & n : fixture_names())
                result.push_back(*named_fixture(n));
            return result;
        }

        auto shape(const RelStructure & a) -> string
        {
            string s = "|A|=" + to_string(a.size());
            for (auto & r : a.relations)
                s += " " + r.name + ":" + to_string(r.arity) + "x" + to_string(r.tuples.size());
            return s;
        }

        auto yes_no(bool b) -> string
        {
            return b ? "yes" : "no";
        }

        auto counts(SuiteReport & report, uint64_t seed, int trials)
        {
            each_trial(report, seed, trials, [] (Rng & rng, string & detail) -> optional<string> {
                    auto a = random_template(rng, 4, 4, 6, false);
                    auto meta = build_d(a);
                    auto s = stats(meta);
                    detail = shape(a) + " V=" + to_string(s.vertices) + " E=" + to_string(s.edges);
                    if (! s.matches())
                        return "formulas give V=" + to_string(s.formula_vertices) + " E=" + to_string(s.formula_edges);
                    if (s.height != meta.k + 2)
                        return "height " + to_string(s.height);
                    return std::nullopt;
                });
        }

        auto subsets(int k) -> vector<PathSpec>
        {
            vector<PathSpec> result;
            for (int mask = 0 ; mask < (1 << k) ; ++mask) {
                vector<int> members;
                for (int i = 1 ; i <= k ; ++i)
                    if (mask & (1 << (i - 1)))
                        members.push_back(i);
                result.push_back(make_spec(k, members));
            }
            return result;
        }

        auto spec_text(const PathSpec & s) -> string
        {
            string t = "{";
            for (std::size_t i = 0 ; i < s.members.size() ; ++i)
                t += (i ? "," : "") + to_string(s.members[i]);
            return t + "}";
        }

        auto observation(SuiteReport & report)
        {
            for (int k = 1 ; k <= 3 ; ++k)
                for (auto & i : subsets(k))
                    for (auto & j : subsets(k)) {
                        auto qi = build_path(i), qj = build_path(j);
                        bool subset = std::includes(j.members.begin(), j.members.end(), i.members.begin(), i.members.end());
                        vector<Hom> homs;
                        enumerate_homs(qi, qj, { }, [&] (const Hom & h) { homs.push_back(h); return homs.size() < 2; });
                        optional<string> failure;
                        if (subset != ! homs.empty())
                            failure = "solver says " + yes_no(! homs.empty());
                        else if (homs.size() > 1)
                            failure = "more than one homomorphism";
                        else if (subset) {
                            set<int> image(homs[0].begin(), homs[0].end());
                            if (int(image.size()) != qj.size())
                                failure = "not surjective";
                            else if (homs[0] != *path_hom(i, j))
                                failure = "differs from the segment map";
                        }
                        record(report, "k=" + to_string(k) + " I=" + spec_text(i) + " J=" + spec_text(j), failure,
                                subset ? "hom" : "none");
                    }
        }

        auto forward_eq(SuiteReport & report, uint64_t seed, int trials)
        {
            each_trial(report, seed, trials, [] (Rng & rng, string & detail) -> optional<string> {
                    auto a = random_multi_template(rng, 3, 3, 4);
                    auto x = random_instance(rng, a, 4, 4);
                    bool direct = find_hom(x, a).has_value();
                    auto [merged, blocks] = merge_template(a);
                    auto mx = merge_instance(x, blocks);
                    auto meta = build_d(merged);
                    auto g = forward_instance(mx, meta.k);
                    bool reduced = find_hom(g, meta.graph).has_value();
                    detail = shape(a) + " |X|=" + to_string(x.size()) + " " + yes_no(direct);
                    if (direct != reduced)
                        return "direct " + yes_no(direct) + ", reduced " + yes_no(reduced);
                    return std::nullopt;
                });
        }

        auto reverse_eq(SuiteReport & report, uint64_t seed, int trials)
        {
            each_trial(report, seed, trials, [] (Rng & rng, string & detail) -> optional<string> {
                    auto a = random_template(rng, 3, 3, 4, true);
                    auto meta = build_d(a);
                    auto [g, mode] = random_reverse_graph(rng, meta, 14);
                    bool direct = find_hom(g, meta.graph).has_value();
                    auto result = reverse_instance(g, meta);
                    bool reduced = find_hom(result.b, a).has_value();
                    detail = shape(a) + " " + mode + " |G|=" + to_string(g.size()) + " "
                        + outcome_name(result.outcome) + " " + yes_no(direct);
                    set<string> statuses;
                    for (auto & c : result.components)
                        statuses.insert(c.status);
                    for (auto & st : statuses)
                        detail += " " + st;
                    if (direct != reduced)
                        return "direct " + yes_no(direct) + ", reduced " + yes_no(reduced) + " (" + mode + ")";

                    for (auto & c : result.components) {
                        if (c.status == "short-yes" || c.status == "short-no")
                            if (stage2_decide_fans(c.graph, meta) != (c.status == "short-yes"))
                                return string("fan decision disagrees on a short component");
                        if (c.status == "full") {
                            LevelAssignment lv{ c.graph.levels, c.height };
                            for (auto & ic : c.internals)
                                if (gamma_fast(c.graph, lv, ic, meta.k) != ic.gamma)
                                    return "path criterion disagrees on gamma of internal component " + to_string(ic.id);
                        }
                    }
                    return std::nullopt;
                });
        }

        auto strict_total(const DMeta & meta, Order order) -> optional<string>
        {
            int n = meta.graph.size();
            for (int x = 0 ; x < n ; ++x) {
                if (order_less(meta, x, x, order))
                    return "not irreflexive at " + meta.graph.vertices[x];
                for (int y = x + 1 ; y < n ; ++y)
                    if (order_less(meta, x, y, order) == order_less(meta, y, x, order))
                        return "incomparable or symmetric pair " + meta.graph.vertices[x] + ", " + meta.graph.vertices[y];
            }
            if (n <= 30)
                for (int x = 0 ; x < n ; ++x)
                    for (int y = 0 ; y < n ; ++y)
                        for (int z = 0 ; z < n ; ++z)
                            if (order_less(meta, x, y, order) && order_less(meta, y, z, order) && ! order_less(meta, x, z, order))
                                return "not transitive";
            return std::nullopt;
        }

        auto orders(SuiteReport & report, uint64_t seed, int trials, const vector<RelStructure> & templates)
        {
            vector<DMeta> metas;
            for (auto & a : templates_or_fixtures(templates))
                metas.push_back(build_d(a));
            for (auto & meta : metas) {
                record(report, meta.base.name + " plain order", strict_total(meta, Order::Plain));
                record(report, meta.base.name + " star order", strict_total(meta, Order::Star));
            }

            int counter = 0;
            each_trial(report, seed, trials, [&] (Rng & rng, string & detail) -> optional<string> {
                    auto & meta = metas[counter++ % metas.size()];
                    auto & adj = *meta.adjacency;
                    auto [c, d] = random_edge_sets(rng, meta, 5);
                    bool d_in_r = std::all_of(d.begin(), d.end(), [&] (int v) { return meta.info[v].kind == VertexKind::Tuple; });
                    bool c_in_a = std::all_of(c.begin(), c.end(), [&] (int v) { return meta.info[v].kind == VertexKind::Element; });
                    detail = meta.base.name + " |C|=" + to_string(c.size()) + " |D|=" + to_string(d.size());
                    if (! d_in_r) {
                        int x = order_min(meta, c), y = order_min(meta, d);
                        if (! adj.has_edge(x, y))
                            return "minima " + meta.graph.vertices[x] + ", " + meta.graph.vertices[y] + " not adjacent";
                    }
                    if (! c_in_a) {
                        int x = order_max(meta, c, Order::Star), y = order_max(meta, d, Order::Star);
                        if (! adj.has_edge(x, y))
                            return "star maxima " + meta.graph.vertices[x] + ", " + meta.graph.vertices[y] + " not adjacent";
                    }
                    return std::nullopt;
                });
        }

        auto delta_check(const DMeta & meta) -> optional<string>
        {
            auto reached = delta_pairs_by_search(meta);
            int n = meta.graph.size();
            for (int x = 0 ; x < n ; ++x)
                for (int y = 0 ; y < n ; ++y)
                    if (meta.graph.levels[x] == meta.graph.levels[y] && in_delta(meta, { x, y }) != reached[x * n + y])
                        return "pair " + meta.graph.vertices[x] + ", " + meta.graph.vertices[y];
            return std::nullopt;
        }

        auto delta(SuiteReport & report, uint64_t seed, int trials, const vector<RelStructure> & templates)
        {
            for (auto & a : templates_or_fixtures(templates)) {
                auto meta = build_d(a);
                if (meta.graph.size() <= 24)
                    record(report, a.name, delta_check(meta), to_string(meta.graph.size()) + " vertices");
            }
            each_trial(report, seed, trials, [] (Rng & rng, string & detail) -> optional<string> {
                    auto a = random_template(rng, 3, 3, 3, false);
                    auto meta = build_d(a);
                    detail = shape(a) + " " + to_string(meta.graph.size()) + " vertices";
                    return delta_check(meta);
                });
        }

        auto lift_check(SuiteReport & report, const string & label, const RelStructure & a, const IdentitySet & sigma,
                const optional<OpMap> & on_a, const optional<OpMap> & on_z)
        {
            optional<string> failure;
            string detail;
            try {
                auto meta = build_d(a);
                auto r = lift_all(meta, sigma, on_a, on_z);
                if (! r)
                    detail = "template has no witnesses";
                else {
                    for (auto & line : r->lines)
                        if (line.find("FAIL") != string::npos && ! failure)
                            failure = line;
                    detail = to_string(r->lines.size()) + " checks on " + to_string(meta.graph.size()) + " vertices";
                }
            }
            catch (const Error & e) {
                failure = string(e.what());
            }
            record(report, label, failure, detail);
        }

        auto lift(SuiteReport & report, uint64_t seed, int trials)
        {
            auto majority = make_op("m", 3, 2, [] (const vector<int> & x) { return (x[0] + x[1] + x[2]) >= 2 ? 1 : 0; });
            auto zm = zz_median();
            zm.name = "m";
            lift_check(report, "majority on single-edge", *named_fixture("single-edge"), majority_identities(),
                    OpMap{ { "m", majority } }, OpMap{ { "m", zm } });

            auto xor3 = make_op("w", 3, 2, [] (const vector<int> & x) { return x[0] ^ x[1] ^ x[2]; });
            auto zw = zz_allmin(3);
            zw.name = "w";
            lift_check(report, "wnu3 on parity", *named_fixture("parity"), wnu_identities(3),
                    OpMap{ { "w", xor3 } }, OpMap{ { "w", zw } });

            auto p1 = zz_p1(), p2 = zz_p2();
            for (auto & f : { "two-cycle", "single-edge" })
                lift_check(report, string("3-permutability on ") + f, *named_fixture(f), three_permutability_identities(),
                        std::nullopt, OpMap{ { "p1", p1 }, { "p2", p2 } });

            each_trial(report, seed, trials, [] (Rng & rng, string & detail) -> optional<string> {
                    auto a = random_template(rng, 3, 2, 3, false);
                    auto meta = build_d(a);
                    detail = shape(a);
                    for (auto & sigma : { majority_identities(), wnu_identities(3) }) {
                        auto r = lift_all(meta, sigma);
                        if (! r) {
                            detail += " -";
                            continue;
                        }
                        detail += " lifted";
                        for (auto & line : r->lines)
                            if (line.find("FAIL") != string::npos)
                                return line;
                    }
                    return std::nullopt;
                });
        }

        auto endo_check(const RelStructure & a) -> optional<string>
        {
            auto meta = build_d(a);
            auto small = endomorphisms(a);
            auto big = endomorphisms(as_structure(meta.graph, Role::Template));
            if (small.size() != big.size())
                return to_string(small.size()) + " endomorphisms of A, " + to_string(big.size()) + " of D(A)";
            set<Hom> big_set(big.begin(), big.end());
            for (auto & phi : small) {
                auto lifted = lift_endomorphism(meta, phi);
                if (! big_set.count(lifted))
                    return string("a lifted endomorphism is missing from the enumeration");
                if (restrict_endomorphism(meta, lifted) != phi)
                    return string("restriction does not undo lifting");
            }
            for (auto & big_phi : big)
                if (lift_endomorphism(meta, restrict_endomorphism(meta, big_phi)) != big_phi)
                    return string("lifting does not undo restriction");
            return std::nullopt;
        }

        auto endo(SuiteReport & report, uint64_t seed, int trials, const vector<RelStructure> & templates)
        {
            for (auto & a : templates_or_fixtures(templates))
                record(report, a.name, endo_check(a));
            each_trial(report, seed, trials, [] (Rng & rng, string & detail) -> optional<string> {
                    auto a = random_template(rng, 3, 2, 3, false);
                    detail = shape(a);
                    return endo_check(a);
                });
        }

        auto core_check(const RelStructure & a, string & detail) -> optional<string>
        {
            auto meta = build_d(a);
            bool small = is_core(a), big = is_core(meta.graph);
            detail = "core " + yes_no(small);
            if (small != big)
                return "A core " + yes_no(small) + ", D(A) core " + yes_no(big);
            return std::nullopt;
        }

        auto core(SuiteReport & report, uint64_t seed, int trials, const vector<RelStructure> & templates)
        {
            for (auto & a : templates_or_fixtures(templates)) {
                string detail;
                auto failure = core_check(a, detail);
                record(report, a.name, failure, detail);
            }
            each_trial(report, seed, trials, [] (Rng & rng, string & detail) -> optional<string> {
                    auto a = random_template(rng, 3, 2, 3, false);
                    string inner;
                    auto failure = core_check(a, inner);
                    detail = shape(a) + " " + inner;
                    return failure;
                });
        }
    }

    auto run_suite(const string & suite, uint64_t seed, int trials, const vector<RelStructure> & templates) -> SuiteReport
    {
        SuiteReport report;
        report.suite = suite;
        if (suite == "counts")
            counts(report, seed, trials);
        else if (suite == "observation")
            observation(report);
        else if (suite == "forward-eq")
            forward_eq(report, seed, trials);
        else if (suite == "reverse-eq")
            reverse_eq(report, seed, trials);
        else if (suite == "orders")
            orders(report, seed, trials, templates);
        else if (suite == "delta")
            delta(report, seed, trials, templates);
        else if (suite == "lift")
            lift(report, seed, trials);
        else if (suite == "endo")
            endo(report, seed, trials, templates);
        else if (suite == "core")
            core(report, seed, trials, templates);
        else
            throw Error(ErrorKind::Syntax, "unknown suite '" + suite + "'");
        return report;
    }
}
