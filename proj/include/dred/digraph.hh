/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef DRED_DIGRAPH_HH
#define DRED_DIGRAPH_HH 1

#include <dred/bitset.hh>
#include <dred/structure.hh>

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace dred
{
    /// Provenance of a vertex of D(A): an element of A.
    struct ElementVertex
    {
        int element;
        auto operator== (const ElementVertex &) const -> bool = default;
    };

    /// A tuple vertex of D(A).
    struct TupleVertex
    {
        Tuple tuple;
        auto operator== (const TupleVertex &) const -> bool = default;
    };

    /// Interior vertex of the path joining element to tuple; position counts
    /// from the element end, starting at 1.
    struct InternalVertex
    {
        int element;
        Tuple tuple;
        int position;
        auto operator== (const InternalVertex &) const -> bool = default;
    };

    /// Gadget vertices emitted by the forward reduction.
    struct VariableVertex
    {
        int element;
        auto operator== (const VariableVertex &) const -> bool = default;
    };

    struct ApexVertex
    {
        int tuple_index;
        auto operator== (const ApexVertex &) const -> bool = default;
    };

    struct GadgetVertex
    {
        int tuple_index;
        int position;
        int step;
        auto operator== (const GadgetVertex &) const -> bool = default;
    };

    using DVertex = std::variant<ElementVertex, TupleVertex, InternalVertex,
          VariableVertex, ApexVertex, GadgetVertex>;

    using Edge = std::pair<int, int>;

    struct Digraph
    {
        std::string name;
        std::vector<std::string> vertices;
        std::vector<Edge> edges;
        std::vector<DVertex> provenance;   // empty, or one per vertex
        std::vector<int> levels;           // empty, or one per vertex

        auto size() const -> int
        {
            return int(vertices.size());
        }

        auto vertex_index(std::string_view v) const -> std::optional<int>;

        auto add_vertex(std::string v) -> int;
        auto add_edge(int from, int to) -> void;

        auto operator== (const Digraph &) const -> bool = default;
    };

    /// Checks endpoint ranges, duplicate edges, unique names, and the level
    /// increment rule when levels are present.
    auto validate(const Digraph & g) -> void;

    /// Sorts nothing; drops repeated edges keeping first occurrences.
    auto dedupe_edges(Digraph & g) -> void;

    struct Adjacency
    {
        std::vector<std::vector<int>> out, in;
        std::vector<Bitset> out_rows;

        explicit Adjacency(const Digraph & g);

        auto has_edge(int from, int to) const -> bool
        {
            return out_rows[from].test(to);
        }
    };

    /// Connected components (ignoring orientation), ordered by smallest
    /// vertex index; each component lists vertices in increasing order.
    auto connected_components(const Digraph & g) -> std::vector<std::vector<int>>;

    auto induced_subgraph(const Digraph & g, const std::vector<int> & keep, std::string name = "") -> Digraph;

    /// The digraph viewed as a structure with one binary relation E.
    auto as_structure(const Digraph & g, Role role) -> RelStructure;

    auto zigzag() -> Digraph;
    auto single_edge() -> Digraph;
    auto directed_cycle(int n) -> Digraph;
}

#endif
