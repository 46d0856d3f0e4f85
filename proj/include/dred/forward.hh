/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef DRED_FORWARD_HH
#define DRED_FORWARD_HH 1

#include <dred/digraph.hh>
#include <dred/structure.hh>

namespace dred
{
    /// Instance of CSP(D(A)) equivalent to the single-relation instance x: a
    /// vertex "x:<name>" per element and, per tuple t, an apex "y:<t>" joined
    /// to the position-i entry by a copy of Q_{i} with interior vertices
    /// "q:<t>:<i>:<j>".
    auto forward_instance(const RelStructure & x, int k) -> Digraph;

    auto forward_vertex_count(long elements, long tuples, long k) -> long;
    auto forward_edge_count(long tuples, long k) -> long;

    /// A single vertex; maps into every D(A).
    auto fixed_yes_digraph() -> Digraph;

    /// A single edge; maps into every D(A) since R is nonempty.
    auto single_edge_probe() -> Digraph;
}

#endif
