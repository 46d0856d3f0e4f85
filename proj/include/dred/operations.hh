/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef DRED_OPERATIONS_HH
#define DRED_OPERATIONS_HH 1

#include <dred/structure.hh>

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dred
{
    /// A total m-ary operation on {0, ..., size-1}, stored with the first
    /// argument most significant.
    struct OpTable
    {
        std::string name;
        int arity = 0;
        int size = 0;
        std::vector<int> values;

        auto index(const std::vector<int> & args) const -> long;
        auto operator() (const std::vector<int> & args) const -> int;
        auto operator== (const OpTable &) const -> bool = default;
    };

    auto make_op(std::string name, int arity, int size, const std::function<auto (const std::vector<int> &) -> int> & f) -> OpTable;

    /// Calls f on every tuple in {0..size-1}^length, in lexicographic order.
    auto for_each_tuple(int size, int length, const std::function<auto (const std::vector<int> &) -> void> & f) -> void;

    /// A side of an identity: a bare variable, or a symbol applied to variables.
    struct Term
    {
        std::string symbol;                 // empty for a bare variable
        std::vector<std::string> args;      // the variable itself when bare

        auto is_variable() const -> bool
        {
            return symbol.empty();
        }

        auto operator== (const Term &) const -> bool = default;
    };

    struct Identity
    {
        Term lhs, rhs;

        auto variables() const -> std::vector<std::string>;
        /// Both sides use the same set of variables.
        auto balanced() const -> bool;
        auto text() const -> std::string;
    };

    struct IdentitySet
    {
        std::vector<std::pair<std::string, int>> symbols;
        std::vector<Identity> identities;

        auto arity(std::string_view symbol) const -> std::optional<int>;
    };

    auto parse_term(std::string_view text, int line = 0) -> Term;
    auto parse_identities(std::string_view text) -> IdentitySet;
    auto serialize_identities(const IdentitySet & sigma) -> std::string;

    auto parse_op(std::string_view text) -> OpTable;
    auto serialize_op(const OpTable & op) -> std::string;

    using OpMap = std::map<std::string, OpTable>;

    /// Checks f preserves every relation of a, over all m-tuples of tuples.
    auto is_polymorphism(const OpTable & f, const RelStructure & a) -> bool;

    /// Checks every identity over all evaluations of its variables.
    auto satisfies(const OpMap & ops, const IdentitySet & sigma, int size) -> bool;

    /// The first identity failing, with a description, if any.
    auto first_failure(const OpMap & ops, const IdentitySet & sigma, int size) -> std::optional<std::string>;

    /// Polymorphisms of a satisfying sigma, found by solving the indicator
    /// problem; nullopt if none exist.
    auto find_operations(const RelStructure & a, const IdentitySet & sigma) -> std::optional<OpMap>;

    /// True if sigma has f(x, ..., x) = x for every symbol f.
    auto idempotency_missing(const IdentitySet & sigma) -> std::optional<std::string>;

    /// Standard systems, for tests and the command line.
    auto majority_identities() -> IdentitySet;
    auto maltsev_identities() -> IdentitySet;
    auto wnu_identities(int m) -> IdentitySet;
    auto three_permutability_identities() -> IdentitySet;
}

#endif
