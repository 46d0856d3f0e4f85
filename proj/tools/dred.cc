/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <dred/dbuild.hh>
#include <dred/errors.hh>
#include <dred/formats.hh>
#include <dred/forward.hh>
#include <dred/operations.hh>
#include <dred/polylift.hh>
#include <dred/reverse.hh>
#include <dred/singleton.hh>
#include <dred/solver.hh>
#include <dred/verify.hh>

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

using namespace dred;

using std::cerr;
using std::cout;
using std::map;
using std::optional;
using std::string;
using std::to_string;
using std::vector;

namespace
{
    enum Exit
    {
        yes = 0,
        no = 1,
        usage = 2,
        precondition = 3
    };

    auto load_structure(const string & path) -> RelStructure
    {
        return parse_structure(read_file(path));
    }

    /// A template given either as a structure or as a digraph.
    auto load_any(const string & path, Role role) -> RelStructure
    {
        auto text = read_file(path);
        if (looks_like_digraph(text))
            return as_structure(parse_digraph(text), role);
        return parse_structure(text);
    }

    auto single_relation(const RelStructure & a) -> RelStructure
    {
        if (a.relations.size() == 1)
            return a;
        cerr << "note: merging " << a.relations.size() << " relations of '" << a.name << "' into one\n";
        return merge_template(a).first;
    }

    auto hom_lines(const RelStructure & x, const RelStructure & a, const Hom & h) -> string
    {
        string out;
        for (int v = 0 ; v < x.size() ; ++v)
            out += x.domain[v] + " -> " + a.domain[h[v]] + "\n";
        return out;
    }

    auto emit(const string & path, const string & text) -> void
    {
        write_file(path, text);
    }

    auto parse_witnesses(const vector<string> & specs) -> optional<OpMap>
    {
        if (specs.empty())
            return std::nullopt;
        OpMap ops;
        for (auto & s : specs) {
            auto eq = s.find('=');
            if (eq == string::npos)
                throw Error(ErrorKind::Syntax, "witness '" + s + "' is not of the form symbol=file");
            auto op = parse_op(read_file(s.substr(eq + 1)));
            op.name = s.substr(0, eq);
            ops[op.name] = op;
        }
        return ops;
    }
}

auto main(int argc, char * argv[]) -> int
{
    CLI::App app{ "Reductions between relational and digraph constraint problems" };
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    string template_path, instance_path, output_path = "-", dot_path, objects_path, sigma_path, restrict_path;
    vector<string> witnesses, zwitnesses;
    std::uint64_t seed = 1;
    int trials = 20;
    string suite;
    bool zigzag_template = false;

    auto * build = app.add_subcommand("build", "Build D(A) and print its vertex, edge and height counts");
    build->add_option("--template,-t", template_path, "template A")->required();
    build->add_option("--output,-o", output_path, "digraph output")->required();
    build->add_option("--dot", dot_path, "also write Graphviz");

    auto * merge = app.add_subcommand("merge", "Fold several relations into one");
    merge->add_option("--template,-t", template_path, "template")->required();
    merge->add_option("--instance,-i", instance_path, "instance to merge against the template");
    merge->add_option("--output,-o", output_path, "output");

    auto * unmerge = app.add_subcommand("unmerge", "Split a merged instance back into relations");
    unmerge->add_option("--template,-t", template_path, "the original template")->required();
    unmerge->add_option("--instance,-i", instance_path, "merged instance")->required();
    unmerge->add_option("--output,-o", output_path, "output");

    auto * forward = app.add_subcommand("forward", "Instance of CSP(A) to instance of CSP(D(A))");
    forward->add_option("--template,-t", template_path, "template A")->required();
    forward->add_option("--instance,-i", instance_path, "instance X")->required();
    forward->add_option("--output,-o", output_path, "digraph output");
    forward->add_option("--dot", dot_path, "also write Graphviz");

    auto * reverse = app.add_subcommand("reverse", "Instance of CSP(D(A)) to instance of CSP(A)");
    reverse->add_option("--template,-t", template_path, "template A")->required();
    reverse->add_option("--instance,-i", instance_path, "digraph G")->required();
    reverse->add_option("--output,-o", output_path, "instance output");
    reverse->add_option("--emit-objects", objects_path, "write the intermediate objects");

    auto * solve = app.add_subcommand("solve", "Decide whether an instance maps to a template");
    solve->add_option("--template,-t", template_path, "template")->required();
    solve->add_option("--instance,-i", instance_path, "instance")->required();
    solve->add_option("--restrict", restrict_path, "allowed images per instance element");
    solve->add_option("--output,-o", output_path, "output");

    auto * core = app.add_subcommand("core", "Compute the core of a template");
    core->add_option("--template,-t", template_path, "template")->required();
    core->add_option("--output,-o", output_path, "core output");

    auto * endos = app.add_subcommand("endos", "List endomorphisms");
    endos->add_option("--template,-t", template_path, "template")->required();
    endos->add_option("--output,-o", output_path, "output");

    auto * findops = app.add_subcommand("findops", "Search for polymorphisms satisfying identities");
    auto * findops_template = findops->add_option("--template,-t", template_path, "template");
    findops->add_flag("--zigzag", zigzag_template, "use the zigzag as the template");
    findops->add_option("--sigma,-s", sigma_path, "identity file")->required();
    findops->add_option("--output,-o", output_path, "output");
    findops_template->excludes(findops->get_option("--zigzag"));

    auto * lift = app.add_subcommand("lift", "Lift identity witnesses from A and the zigzag to D(A)");
    lift->add_option("--template,-t", template_path, "template A")->required();
    lift->add_option("--sigma,-s", sigma_path, "identity file")->required();
    lift->add_option("--witness,-w", witnesses, "symbol=table.op on A");
    lift->add_option("--zwitness", zwitnesses, "symbol=table.op on the zigzag");
    lift->add_option("--output,-o", output_path, "report output");

    auto * stats_cmd = app.add_subcommand("stats", "Counts of D(A) against the closed formulas");
    stats_cmd->add_option("--template,-t", template_path, "template A")->required();

    auto * export_dot_cmd = app.add_subcommand("export-dot", "Write a digraph as Graphviz");
    export_dot_cmd->add_option("--instance,-i", instance_path, "digraph")->required();
    export_dot_cmd->add_option("--output,-o", output_path, "output");

    auto * verify = app.add_subcommand("verify", "Run a seeded property suite");
    verify->add_option("suite", suite, "counts, observation, forward-eq, reverse-eq, orders, delta, lift, endo, core, or reduction")->required();
    verify->add_option("--seed", seed, "generator seed");
    verify->add_option("--trials", trials, "number of random trials");
    verify->add_option("--template,-t", template_path, "template to use instead of the built-in fixtures");

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError & e) {
        int code = app.exit(e);
        return code == 0 ? 0 : usage;
    }

    try {
        if (build->parsed()) {
            auto a = single_relation(load_structure(template_path));
            auto meta = build_d(a);
            emit(output_path, serialize_digraph(meta.graph));
            if (! dot_path.empty())
                emit(dot_path, export_dot(meta.graph));
            auto s = stats(meta);
            cout << s.vertices << " " << s.edges << " " << s.height << " " << (s.matches() ? "ok" : "mismatch") << "\n";
            return s.matches() ? yes : precondition;
        }

        if (merge->parsed()) {
            auto a = load_structure(template_path);
            auto [merged, blocks] = merge_template(a);
            if (instance_path.empty())
                emit(output_path, serialize_structure(merged));
            else
                emit(output_path, serialize_structure(merge_instance(load_structure(instance_path), blocks)));
            return yes;
        }

        if (unmerge->parsed()) {
            auto a = load_structure(template_path);
            auto x = load_structure(instance_path);
            auto blocks = x.blocks ? *x.blocks : merge_template(a).second;
            emit(output_path, serialize_structure(unmerge_instance(x, blocks)));
            return yes;
        }

        if (forward->parsed()) {
            auto a = load_structure(template_path);
            auto [merged, blocks] = merge_template(a);
            auto x = merge_instance(load_structure(instance_path), blocks);
            auto g = forward_instance(x, merged.relations.at(0).arity);
            emit(output_path, serialize_digraph(g));
            if (! dot_path.empty())
                emit(dot_path, export_dot(g));
            return yes;
        }

        if (reverse->parsed()) {
            auto a = single_relation(load_structure(template_path));
            auto g = parse_digraph(read_file(instance_path));
            if (auto c = constant_tuple_element(a)) {
                // every instance of CSP(A) is YES, so no equivalent one exists
                cerr << "TrivialTemplate: element " << a.domain[*c] << " has a constant tuple; deciding G directly\n";
                cout << "outcome direct " << (find_hom(g, build_d(a).graph) ? "YES" : "NO") << "\n";
                return precondition;
            }
            auto result = reverse_instance(g, a);
            emit(output_path, serialize_structure(result.b));
            if (! objects_path.empty())
                emit(objects_path, objects_report(result));
            cout << "outcome " << outcome_name(result.outcome);
            if (! result.reason.empty())
                cout << " (" << result.reason << ")";
            cout << "\n";
            return result.outcome == ReverseOutcome::FixedNo ? no : yes;
        }

        if (solve->parsed()) {
            auto a = load_any(template_path, Role::Template);
            auto x = load_any(instance_path, Role::Instance);
            Restriction r;
            if (! restrict_path.empty())
                r = parse_restriction(read_file(restrict_path), x.domain, a.domain);
            auto h = find_hom(x, a, r);
            if (! h) {
                emit(output_path, "NO\n");
                return no;
            }
            emit(output_path, "YES\n" + hom_lines(x, a, *h));
            return yes;
        }

        if (core->parsed()) {
            auto a = load_any(template_path, Role::Template);
            auto c = core_of(a);
            cerr << (int(c.elements.size()) == a.size() ? "already a core" : "core has " + to_string(c.elements.size())
                    + " of " + to_string(a.size()) + " elements") << "\n";
            emit(output_path, serialize_structure(c.core));
            return yes;
        }

        if (endos->parsed()) {
            auto a = load_any(template_path, Role::Template);
            auto all = endomorphisms(a);
            string out = "endomorphisms " + to_string(all.size()) + "\n";
            for (auto & h : all) {
                for (int v = 0 ; v < a.size() ; ++v)
                    out += (v ? " " : "") + a.domain[h[v]];
                out += "\n";
            }
            emit(output_path, out);
            return yes;
        }

        if (findops->parsed()) {
            if (template_path.empty() && ! zigzag_template)
                throw CLI::RequiredError("--template or --zigzag");
            auto a = zigzag_template ? zigzag_structure() : load_any(template_path, Role::Template);
            auto sigma = parse_identities(read_file(sigma_path));
            auto ops = find_operations(a, sigma);
            if (! ops) {
                emit(output_path, "NO\n");
                return no;
            }
            string out;
            for (auto & [name, op] : *ops)
                out += serialize_op(op);
            emit(output_path, out);
            return yes;
        }

        if (lift->parsed()) {
            auto a = single_relation(load_structure(template_path));
            auto sigma = parse_identities(read_file(sigma_path));
            auto meta = build_d(a);
            auto report = lift_all(meta, sigma, parse_witnesses(witnesses), parse_witnesses(zwitnesses));
            if (! report) {
                emit(output_path, "template has no operations satisfying the identities\n");
                return no;
            }
            string out = "D(A) " + to_string(meta.graph.size()) + " vertices " + to_string(meta.graph.edges.size()) + " edges\n";
            for (auto & line : report->lines)
                out += line + "\n";
            out += report->ok ? "verified\n" : "FAILED\n";
            emit(output_path, out);
            return report->ok ? yes : precondition;
        }

        if (stats_cmd->parsed()) {
            auto a = single_relation(load_structure(template_path));
            auto meta = build_d(a);
            auto s = stats(meta);
            cout << "elements " << meta.element_count() << "\n"
                << "tuples " << meta.tuple_count() << "\n"
                << "arity " << meta.k << "\n"
                << "vertices " << s.vertices << " formula " << s.formula_vertices << "\n"
                << "edges " << s.edges << " formula " << s.formula_edges << "\n"
                << "height " << s.height << "\n"
                << (s.matches() ? "ok" : "mismatch") << "\n";
            return s.matches() ? yes : precondition;
        }

        if (export_dot_cmd->parsed()) {
            emit(output_path, export_dot(parse_digraph(read_file(instance_path))));
            return yes;
        }

        if (verify->parsed()) {
            vector<RelStructure> templates;
            if (! template_path.empty())
                templates.push_back(single_relation(load_structure(template_path)));
            vector<string> suites{ suite };
            if (suite == "reduction")
                suites = { "forward-eq", "reverse-eq" };
            bool ok = true;
            for (auto & s : suites) {
                auto report = run_suite(s, seed, trials, templates);
                for (auto & line : report.lines)
                    cout << s << " " << line << "\n";
                cout << report.summary() << "\n";
                ok = ok && report.ok();
            }
            return ok ? yes : no;
        }
    }
    catch (const CLI::Error & e) {
        cerr << e.what() << "\n";
        return usage;
    }
    catch (const Error & e) {
        cerr << e.what() << "\n";
        switch (e.kind()) {
            case ErrorKind::Syntax:
            case ErrorKind::Io:
                return usage;
            default:
                return precondition;
        }
    }
    return usage;
}
