/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef DRED_STRUCTURE_HH
#define DRED_STRUCTURE_HH 1

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dred
{
    using Tuple = std::vector<int>;

    enum class Role
    {
        Template,
        Instance
    };

    struct Relation
    {
        std::string name;
        int arity = 0;
        std::vector<Tuple> tuples;

        auto operator== (const Relation &) const -> bool = default;
    };

    /// Arities of the relations folded into a single product relation, in
    /// order, together with their names for diagnostics.
    struct BlockInfo
    {
        std::vector<int> arities;
        std::vector<std::string> names;

        auto total() const -> int;
        auto offset(int block) const -> int;
        auto trivial() const -> bool
        {
            return arities.size() <= 1;
        }

        auto operator== (const BlockInfo &) const -> bool = default;
    };

    /// A finite relational structure. Element order is declaration order and
    /// is the fixed linear order used wherever the construction needs one.
    struct RelStructure
    {
        std::string name;
        Role role = Role::Template;
        std::vector<std::string> domain;
        std::vector<Relation> relations;
        std::optional<BlockInfo> blocks;

        auto size() const -> int
        {
            return int(domain.size());
        }

        auto element_index(std::string_view element) const -> std::optional<int>;
        auto find_relation(std::string_view relation) const -> const Relation *;

        auto operator== (const RelStructure &) const -> bool = default;
    };

    /// Removes duplicate tuples (keeping first occurrences) and checks every
    /// invariant; templates additionally need nonempty relations.
    auto normalise(RelStructure & s) -> void;
    auto validate(const RelStructure & s) -> void;

    auto make_structure(std::string name, std::vector<std::string> domain,
            std::vector<Relation> relations, Role role = Role::Template) -> RelStructure;

    /// Domain "0", "1", ..., "n-1".
    auto numbered_domain(int n) -> std::vector<std::string>;

    /// Some a with (a, ..., a) in every relation, i.e. CSP(s) has no NO instance.
    auto constant_tuple_element(const RelStructure & s) -> std::optional<int>;

    enum class CompareKind
    {
        Element,
        TupleLex,
        ElementThenTuple,
        TupleThenElement
    };

    /// An element, a tuple, or an (element, tuple) pair, depending on the
    /// comparison kind.
    struct OrderItem
    {
        int element = -1;
        Tuple tuple;
    };

    auto canonical_compare(const RelStructure & s, const OrderItem & x, const OrderItem & y,
            CompareKind kind) -> std::strong_ordering;

    auto compare_tuples(const Tuple & x, const Tuple & y) -> std::strong_ordering;

    auto tuple_names(const RelStructure & s, const Tuple & t, char separator = ',') -> std::string;
}

#endif
