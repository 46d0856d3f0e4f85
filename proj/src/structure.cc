/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <dred/structure.hh>
#include <dred/errors.hh>

#include <algorithm>
#include <set>

using std::optional;
using std::set;
using std::string;
using std::string_view;
using std::strong_ordering;
using std::to_string;
using std::vector;

namespace dred
{
    auto BlockInfo::total() const -> int
    {
        int result = 0;
        for (auto k : arities)
            result += k;
        return result;
    }

    auto BlockInfo::offset(int block) const -> int
    {
        int result = 0;
        for (int j = 0 ; j < block ; ++j)
            result += arities[j];
        return result;
    }

    auto RelStructure::element_index(string_view element) const -> optional<int>
    {
        for (int i = 0 ; i < size() ; ++i)
            if (domain[i] == element)
                return i;
        return std::nullopt;
    }

    auto RelStructure::find_relation(string_view relation) const -> const Relation *
    {
        for (auto & r : relations)
            if (r.name == relation)
                return &r;
        return nullptr;
    }

    auto normalise(RelStructure & s) -> void
    {
        for (auto & r : s.relations) {
            set<Tuple> seen;
            vector<Tuple> kept;
            for (auto & t : r.tuples)
                if (seen.insert(t).second)
                    kept.push_back(t);
            r.tuples = std::move(kept);
        }
        validate(s);
    }

    auto validate(const RelStructure & s) -> void
    {
        set<string> names;
        for (auto & e : s.domain)
            if (! names.insert(e).second)
                throw Error(ErrorKind::Syntax, "duplicate element name '" + e + "'");

        set<string> relation_names;
        for (auto & r : s.relations) {
            if (! relation_names.insert(r.name).second)
                throw Error(ErrorKind::Syntax, "duplicate relation name '" + r.name + "'");
            if (r.arity < 1)
                throw Error(ErrorKind::ArityMismatch, "relation '" + r.name + "' has arity " + to_string(r.arity));
            for (auto & t : r.tuples) {
                if (int(t.size()) != r.arity)
                    throw Error(ErrorKind::ArityMismatch, "tuple of length " + to_string(t.size())
                            + " in relation '" + r.name + "' of arity " + to_string(r.arity));
                for (auto x : t)
                    if (x < 0 || x >= s.size())
                        throw Error(ErrorKind::UnknownElement, "element index " + to_string(x) + " out of range in relation '" + r.name + "'");
            }
            if (s.role == Role::Template && r.tuples.empty())
                throw Error(ErrorKind::NonemptyRelationRequired, "template relation '" + r.name + "' is empty");
        }

        if (s.role == Role::Template && s.relations.empty())
            throw Error(ErrorKind::NonemptyRelationRequired, "template '" + s.name + "' has no relations");

        if (s.blocks) {
            if (s.relations.size() != 1 || s.blocks->total() != s.relations[0].arity)
                throw Error(ErrorKind::ArityMismatch, "blocks do not add up to the arity of the single relation");
            for (auto k : s.blocks->arities)
                if (k < 1)
                    throw Error(ErrorKind::ArityMismatch, "block arity must be positive");
        }
    }

    auto make_structure(string name, vector<string> domain, vector<Relation> relations, Role role) -> RelStructure
    {
        RelStructure s;
        s.name = std::move(name);
        s.role = role;
        s.domain = std::move(domain);
        s.relations = std::move(relations);
        normalise(s);
        return s;
    }

    auto numbered_domain(int n) -> vector<string>
    {
        vector<string> result;
        for (int i = 0 ; i < n ; ++i)
            result.push_back(to_string(i));
        return result;
    }

    auto constant_tuple_element(const RelStructure & s) -> optional<int>
    {
        for (int a = 0 ; a < s.size() ; ++a) {
            bool everywhere = true;
            for (auto & r : s.relations) {
                Tuple constant(r.arity, a);
                if (std::find(r.tuples.begin(), r.tuples.end(), constant) == r.tuples.end()) {
                    everywhere = false;
                    break;
                }
            }
            if (everywhere)
                return a;
        }
        return std::nullopt;
    }

    auto compare_tuples(const Tuple & x, const Tuple & y) -> strong_ordering
    {
        return std::lexicographical_compare_three_way(x.begin(), x.end(), y.begin(), y.end());
    }

    auto canonical_compare(const RelStructure & s, const OrderItem & x, const OrderItem & y,
            CompareKind kind) -> strong_ordering
    {
        auto check = [&] (const OrderItem & item, bool element, bool tuple) {
            if (element && (item.element < 0 || item.element >= s.size()))
                throw Error(ErrorKind::UnknownElement, "element index out of range");
            if (tuple)
                for (auto v : item.tuple)
                    if (v < 0 || v >= s.size())
                        throw Error(ErrorKind::UnknownElement, "tuple entry out of range");
        };

        bool uses_element = kind != CompareKind::TupleLex;
        bool uses_tuple = kind != CompareKind::Element;
        check(x, uses_element, uses_tuple);
        check(y, uses_element, uses_tuple);

        switch (kind) {
            case CompareKind::Element:
                return x.element <=> y.element;
            case CompareKind::TupleLex:
                return compare_tuples(x.tuple, y.tuple);
            case CompareKind::ElementThenTuple:
                if (auto c = x.element <=> y.element ; c != 0)
                    return c;
                return compare_tuples(x.tuple, y.tuple);
            case CompareKind::TupleThenElement:
                if (auto c = compare_tuples(x.tuple, y.tuple) ; c != 0)
                    return c;
                return x.element <=> y.element;
        }
        return strong_ordering::equal;
    }

    auto tuple_names(const RelStructure & s, const Tuple & t, char separator) -> string
    {
        string result;
        for (std::size_t i = 0 ; i < t.size() ; ++i) {
            if (i > 0)
                result += separator;
            result += s.domain[t[i]];
        }
        return result;
    }
}
