/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef DRED_DBUILD_HH
#define DRED_DBUILD_HH 1

#include <dred/digraph.hh>
#include <dred/structure.hh>

#include <memory>
#include <optional>
#include <utility>
#include <vector>

namespace dred
{
    /// The subset I of [k] (1-based, sorted) selecting single-edge segments.
    struct PathSpec
    {
        int k = 0;
        std::vector<int> members;

        auto contains(int l) const -> bool;
        auto operator== (const PathSpec &) const -> bool = default;
    };

    auto make_spec(int k, std::vector<int> members) -> PathSpec;

    /// Step directions of Q_I, true for forward.
    auto path_steps(const PathSpec & spec) -> std::vector<bool>;

    /// Q_I as a digraph on vertices "q0", "q1", ...; iota is vertex 0, tau is
    /// the last vertex. Levels are filled in.
    auto build_path(const PathSpec & spec) -> Digraph;

    /// Local position of the start of each segment l in 1..k, plus entry k+1
    /// holding the end of segment k. Entry 0 is unused.
    auto segment_starts(const PathSpec & spec) -> std::vector<int>;

    /// The unique homomorphism Q_I -> Q_J as a map of local positions, when
    /// I is a subset of J.
    auto path_hom(const PathSpec & from, const PathSpec & to) -> std::optional<std::vector<int>>;

    /// {i : a = r_i}, 1-based.
    auto index_set(int a, const Tuple & r) -> PathSpec;

    struct PathInfo
    {
        int element;
        int tuple;                          // index into DMeta::tuples
        PathSpec spec;
        std::vector<int> segment_start;     // as segment_starts()
        std::vector<int> vertices;          // global vertex per local position

        auto single(int l) const -> bool
        {
            return spec.contains(l);
        }
    };

    enum class VertexKind
    {
        Element,
        Tuple,
        Interior
    };

    struct VertexInfo
    {
        VertexKind kind;
        int index;          // element index, tuple index, or path index
        int position;       // local position on the path, interiors only
    };

    /// D(A) together with everything the other modules need to know about
    /// where each vertex came from.
    struct DMeta
    {
        RelStructure base;
        int k = 0;
        std::vector<Tuple> tuples;          // R, sorted lexicographically
        Digraph graph;
        std::vector<PathInfo> paths;        // index a * |R| + t
        std::vector<VertexInfo> info;
        std::shared_ptr<const Adjacency> adjacency;

        auto element_count() const -> int
        {
            return base.size();
        }

        auto tuple_count() const -> int
        {
            return int(tuples.size());
        }

        auto height() const -> int
        {
            return k + 2;
        }

        auto element_vertex(int a) const -> int
        {
            return a;
        }

        auto tuple_vertex(int t) const -> int
        {
            return element_count() + t;
        }

        auto path(int a, int t) const -> const PathInfo &
        {
            return paths[a * tuple_count() + t];
        }

        auto tuple_index(const Tuple & r) const -> std::optional<int>;
    };

    /// D(A) for a template with a single relation.
    auto build_d(const RelStructure & a) -> DMeta;

    /// Segments of the path containing interior vertex v: one index, or two
    /// at a boundary between consecutive segments.
    auto segment_indices(const DMeta & meta, int v) -> std::vector<int>;

    /// (element, tuple index) of the path containing interior vertex v.
    auto path_of(const DMeta & meta, int v) -> std::pair<int, int>;

    struct DStats
    {
        long vertices, edges;
        int height;
        long formula_vertices, formula_edges;

        auto matches() const -> bool
        {
            return vertices == formula_vertices && edges == formula_edges;
        }
    };

    auto formula_vertices(long a, long r, long k) -> long;
    auto formula_edges(long a, long r, long k) -> long;

    auto stats(const DMeta & meta) -> DStats;
}

#endif
