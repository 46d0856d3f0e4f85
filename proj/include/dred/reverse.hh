/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef DRED_REVERSE_HH
#define DRED_REVERSE_HH 1

#include <dred/dbuild.hh>
#include <dred/digraph.hh>
#include <dred/structure.hh>

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace dred
{
    struct LevelAssignment
    {
        std::vector<int> level;     // minimum level is 0
        int height = 0;
    };

    /// A closed walk v0, v1, ..., v0 whose edges do not cancel out.
    struct Unbalanced
    {
        std::vector<int> cycle;
        int net = 0;                // forward minus backward edges along the walk
    };

    /// Levels of a connected digraph, propagated from vertex 0.
    auto assign_levels(const Digraph & component) -> std::variant<LevelAssignment, Unbalanced>;

    /// Does a component of height below k+2 map into D(A)? Decided by search.
    auto stage2_decide(const Digraph & component, const DMeta & meta) -> bool;

    /// The same decision, trying single paths and the fans at each element and
    /// each tuple separately.
    auto stage2_decide_fans(const Digraph & component, const DMeta & meta) -> bool;

    struct InternalComponent
    {
        int id = 0;
        std::vector<int> vertices;  // all on levels 1..n-1
        std::vector<int> base;      // adjacent level-0 vertices
        std::vector<int> top;       // adjacent level-n vertices
        std::vector<int> gamma;     // 1-based positions, sorted
    };

    /// Components of g without its level-0 and level-n vertices; ids start at
    /// first_id. Gamma is left empty.
    auto internal_components(const Digraph & g, const LevelAssignment & levels, int n, int first_id = 0)
        -> std::vector<InternalComponent>;

    /// Positions j with C plus its base and top not mapping level-preservingly
    /// into Q_{[k] \ {j}}.
    auto gamma(const Digraph & g, const LevelAssignment & levels, const InternalComponent & c, int k) -> std::vector<int>;

    /// The same set, as the positions j with a directed path through levels
    /// j-1, j, j+1, j+2.
    auto gamma_fast(const Digraph & g, const LevelAssignment & levels, const InternalComponent & c, int k) -> std::vector<int>;

    enum class XKind
    {
        Base,       // a level-0 vertex of g
        Alpha,      // x_{C,b,i}: C has no top, b in base(C), i not in gamma(C)
        Beta,       // x_{C,e}: C has no base, e in top(C), gamma(C) nonempty
        Gamma       // x_{e,i}: nothing fills position i of e
    };

    struct XElement
    {
        XKind kind;
        std::string name;
        int component = -1;
        int vertex = -1;
        int position = 0;
    };

    struct ObjectI
    {
        int top;                                // vertex of g
        std::vector<std::vector<int>> sets;     // V_1..V_k as indices into X
    };

    struct ObjectII
    {
        int base;
        int component;
        std::vector<std::vector<int>> sets;
    };

    struct ReverseObjects
    {
        int k = 0;
        std::vector<XElement> x;                // in canonical order
        std::vector<ObjectI> type1;
        std::vector<ObjectII> type2;
        std::vector<std::pair<int, int>> type3; // pairs of level-n vertices
        std::vector<std::pair<int, int>> type4; // pairs of level-0 vertices
    };

    auto build_objects(const Digraph & g, const LevelAssignment & levels,
            const std::vector<InternalComponent> & internals, int k) -> ReverseObjects;

    struct SimPartition
    {
        std::vector<int> representative;        // per element of X, the earliest of its class
        auto classes() const -> std::vector<std::vector<int>>;
    };

    auto sim_closure(const ReverseObjects & objects) -> SimPartition;

    /// One hyperedge per object of type I and II, over the class representatives.
    auto assemble_b(const ReverseObjects & objects, const SimPartition & partition,
            const std::string & name, const std::string & relation) -> RelStructure;

    auto fixed_no(const RelStructure & a) -> RelStructure;
    auto fixed_yes(const RelStructure & a) -> RelStructure;

    enum class ReverseOutcome
    {
        Assembled,
        FixedYes,
        FixedNo
    };

    auto outcome_name(ReverseOutcome o) -> std::string;

    struct ComponentReport
    {
        std::vector<int> vertices;      // in g
        std::string status;             // unbalanced, too-tall, short-yes, short-no, full
        int height = -1;
        Digraph graph;                  // the component, levels filled in when balanced
        std::optional<Unbalanced> witness;
        std::vector<InternalComponent> internals;
        std::optional<ReverseObjects> objects;
        std::optional<SimPartition> partition;
    };

    struct ReverseResult
    {
        ReverseOutcome outcome;
        RelStructure b;
        std::string reason;
        std::vector<ComponentReport> components;
    };

    /// Instance of CSP(A) equivalent to g as an instance of CSP(D(A)). A must
    /// have a single relation and no constant tuple.
    auto reverse_instance(const Digraph & g, const RelStructure & a) -> ReverseResult;
    auto reverse_instance(const Digraph & g, const DMeta & meta) -> ReverseResult;

    /// Human-readable dump of objects I-IV and the partition.
    auto objects_report(const ReverseResult & result) -> std::string;
}

#endif
