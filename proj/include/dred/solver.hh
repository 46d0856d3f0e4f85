/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef DRED_SOLVER_HH
#define DRED_SOLVER_HH 1

#include <dred/dbuild.hh>
#include <dred/digraph.hh>
#include <dred/structure.hh>

#include <functional>
#include <map>
#include <optional>
#include <vector>

namespace dred
{
    /// Source element -> allowed target elements. Missing entries allow
    /// everything.
    using Restriction = std::map<int, std::vector<int>>;

    /// Image of each source element.
    using Hom = std::vector<int>;

    struct SolveOptions
    {
        bool propagate = true;
    };

    /// Straight from the definition: every tuple of every relation of x maps
    /// into the matching relation of a.
    auto is_hom(const RelStructure & x, const RelStructure & a, const Hom & h) -> bool;
    auto is_hom(const Digraph & x, const Digraph & a, const Hom & h) -> bool;

    auto find_hom(const RelStructure & x, const RelStructure & a, const Restriction & restriction = { },
            SolveOptions options = { }) -> std::optional<Hom>;
    auto find_hom(const Digraph & x, const Digraph & a, const Restriction & restriction = { },
            SolveOptions options = { }) -> std::optional<Hom>;

    /// Calls f on every homomorphism, in a fixed order, until f returns false.
    /// Returns the number of homomorphisms visited.
    auto enumerate_homs(const RelStructure & x, const RelStructure & a, const Restriction & restriction,
            const std::function<auto (const Hom &) -> bool> & f, SolveOptions options = { }) -> long;
    auto enumerate_homs(const Digraph & x, const Digraph & a, const Restriction & restriction,
            const std::function<auto (const Hom &) -> bool> & f, SolveOptions options = { }) -> long;

    auto count_homs(const RelStructure & x, const RelStructure & a, const Restriction & restriction = { }) -> long;
    auto count_homs(const Digraph & x, const Digraph & a, const Restriction & restriction = { }) -> long;

    auto endomorphisms(const RelStructure & a) -> std::vector<Hom>;
    auto is_core(const RelStructure & a) -> bool;
    auto is_core(const Digraph & g) -> bool;

    struct CoreResult
    {
        RelStructure core;
        std::vector<int> elements;      // elements of the input kept in the core
        Hom retraction;                 // identity on elements
    };

    auto core_of(const RelStructure & a) -> CoreResult;

    /// Is there a homomorphism from h to Q_spec sending every vertex to a
    /// vertex of Q_spec on its own level, also respecting the extra anchors
    /// (vertex of h -> allowed local positions of Q_spec)?
    auto interpretable_at_levels(const Digraph & h, const PathSpec & spec,
            const std::map<int, std::vector<int>> & anchors = { }) -> bool;
}

#endif
