/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <dred/forward.hh>
#include <dred/dbuild.hh>
#include <dred/errors.hh>

using std::string;
using std::to_string;

namespace dred
{
    auto forward_instance(const RelStructure & x, int k) -> Digraph
    {
        validate(x);
        if (k < 1)
            throw Error(ErrorKind::ArityMismatch, "arity must be positive");
        if (x.relations.size() > 1)
            throw Error(ErrorKind::ArityMismatch, "instance has several relations; merge it first");
        if (x.relations.size() == 1 && x.relations[0].arity != k)
            throw Error(ErrorKind::ArityMismatch, "instance relation has arity " + to_string(x.relations[0].arity)
                    + ", template has " + to_string(k));

        Digraph g;
        g.name = "F_" + x.name;
        for (int v = 0 ; v < x.size() ; ++v) {
            g.add_vertex("x:" + x.domain[v]);
            g.provenance.push_back(VariableVertex{ v });
            g.levels.push_back(0);
        }
        if (x.relations.empty())
            return g;

        auto & tuples = x.relations[0].tuples;
        for (int t = 0 ; t < int(tuples.size()) ; ++t) {
            int apex = g.add_vertex("y:" + to_string(t));
            g.provenance.push_back(ApexVertex{ t });
            g.levels.push_back(k + 2);

            for (int i = 1 ; i <= k ; ++i) {
                auto steps = path_steps(PathSpec{ k, { i } });
                int previous = tuples[t][i - 1];
                int level = 0;
                for (std::size_t j = 0 ; j < steps.size() ; ++j) {
                    level += steps[j] ? 1 : -1;
                    int next;
                    if (j + 1 == steps.size())
                        next = apex;
                    else {
                        next = g.add_vertex("q:" + to_string(t) + ":" + to_string(i) + ":" + to_string(j + 1));
                        g.provenance.push_back(GadgetVertex{ t, i, int(j + 1) });
                        g.levels.push_back(level);
                    }
                    if (steps[j])
                        g.add_edge(previous, next);
                    else
                        g.add_edge(next, previous);
                    previous = next;
                }
            }
        }
        return g;
    }

    auto forward_vertex_count(long elements, long tuples, long k) -> long
    {
        return elements + tuples * (1 + k * (3 * k - 1));
    }

    auto forward_edge_count(long tuples, long k) -> long
    {
        return 3 * k * k * tuples;
    }

    auto fixed_yes_digraph() -> Digraph
    {
        Digraph g;
        g.name = "yes";
        g.add_vertex("v0");
        return g;
    }

    auto single_edge_probe() -> Digraph
    {
        Digraph g;
        g.name = "edge";
        g.add_vertex("v0");
        g.add_vertex("v1");
        g.add_edge(0, 1);
        return g;
    }
}
