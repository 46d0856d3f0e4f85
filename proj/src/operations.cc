/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <dred/operations.hh>
#include <dred/errors.hh>
#include <dred/solver.hh>

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

using std::function;
using std::map;
using std::optional;
using std::pair;
using std::set;
using std::string;
using std::string_view;
using std::to_string;
using std::vector;

namespace dred
{
    auto OpTable::index(const vector<int> & args) const -> long
    {
        if (int(args.size()) != arity)
            throw Error(ErrorKind::ArityMismatch, "operation '" + name + "' has arity " + to_string(arity)
                    + ", applied to " + to_string(args.size()) + " arguments");
        long result = 0;
        for (auto a : args)
            result = result * size + a;
        return result;
    }

    auto OpTable::operator() (const vector<int> & args) const -> int
    {
        return values[index(args)];
    }

    auto for_each_tuple(int size, int length, const function<auto (const vector<int> &) -> void> & f) -> void
    {
        vector<int> t(length, 0);
        if (length > 0 && size == 0)
            return;
        while (true) {
            f(t);
            int i = length - 1;
            while (i >= 0 && ++t[i] == size)
                t[i--] = 0;
            if (i < 0)
                return;
        }
    }

    auto make_op(string name, int arity, int size, const function<auto (const vector<int> &) -> int> & f) -> OpTable
    {
        OpTable op{ std::move(name), arity, size, { } };
        for_each_tuple(size, arity, [&] (const vector<int> & t) { op.values.push_back(f(t)); });
        return op;
    }

    auto Identity::variables() const -> vector<string>
    {
        vector<string> result;
        for (auto * side : { &lhs, &rhs })
            for (auto & v : side->args)
                if (std::find(result.begin(), result.end(), v) == result.end())
                    result.push_back(v);
        return result;
    }

    auto Identity::balanced() const -> bool
    {
        set<string> l(lhs.args.begin(), lhs.args.end()), r(rhs.args.begin(), rhs.args.end());
        return l == r;
    }

    namespace
    {
        auto term_text(const Term & t) -> string
        {
            if (t.is_variable())
                return t.args[0];
            string s = t.symbol + "(";
            for (std::size_t i = 0 ; i < t.args.size() ; ++i)
                s += (i ? "," : "") + t.args[i];
            return s + ")";
        }

        auto valid_name(string_view s) -> bool
        {
            if (s.empty())
                return false;
            for (auto c : s)
                if (! (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''))
                    return false;
            return true;
        }

        auto strip(string_view s) -> string
        {
            string r;
            for (auto c : s)
                if (! std::isspace(static_cast<unsigned char>(c)))
                    r += c;
            return r;
        }
    }

    auto Identity::text() const -> string
    {
        return term_text(lhs) + " = " + term_text(rhs);
    }

    auto IdentitySet::arity(string_view symbol) const -> optional<int>
    {
        for (auto & [s, m] : symbols)
            if (s == symbol)
                return m;
        return std::nullopt;
    }

    auto parse_term(string_view text, int line) -> Term
    {
        auto s = strip(text);
        auto open = s.find('(');
        if (open == string::npos) {
            if (! valid_name(s))
                throw Error(ErrorKind::Syntax, "bad variable '" + s + "'", line);
            return Term{ "", { s } };
        }
        if (s.back() != ')')
            throw Error(ErrorKind::Syntax, "bad term '" + s + "'", line);
        Term t;
        t.symbol = s.substr(0, open);
        if (! valid_name(t.symbol))
            throw Error(ErrorKind::Syntax, "bad operation symbol in '" + s + "'", line);
        auto inside = s.substr(open + 1, s.size() - open - 2);
        if (inside.find('(') != string::npos || inside.find(')') != string::npos)
            throw Error(ErrorKind::NonlinearIdentity, "nested term '" + s + "'", line);
        std::size_t pos = 0;
        while (pos <= inside.size()) {
            auto comma = inside.find(',', pos);
            if (comma == string::npos)
                comma = inside.size();
            auto arg = inside.substr(pos, comma - pos);
            if (! valid_name(arg))
                throw Error(ErrorKind::Syntax, "bad argument '" + arg + "' in '" + s + "'", line);
            t.args.push_back(arg);
            pos = comma + 1;
        }
        return t;
    }

    auto parse_identities(string_view text) -> IdentitySet
    {
        IdentitySet sigma;
        std::istringstream in{ string(text) };
        string raw;
        int number = 0;
        while (std::getline(in, raw)) {
            ++number;
            if (auto hash = raw.find('#') ; hash != string::npos)
                raw.erase(hash);
            std::istringstream words{ raw };
            string keyword;
            if (! (words >> keyword))
                continue;
            if (keyword == "symbol") {
                string name, arity, extra;
                if (! (words >> name >> arity) || (words >> extra))
                    throw Error(ErrorKind::Syntax, "expected 'symbol <f> <arity>'", number);
                if (! valid_name(name))
                    throw Error(ErrorKind::Syntax, "bad symbol '" + name + "'", number);
                int m = 0;
                try {
                    m = std::stoi(arity);
                }
                catch (const std::logic_error &) {
                    throw Error(ErrorKind::Syntax, "bad arity '" + arity + "'", number);
                }
                if (m < 1)
                    throw Error(ErrorKind::ArityMismatch, "arity must be positive", number);
                if (sigma.arity(name))
                    throw Error(ErrorKind::Syntax, "symbol '" + name + "' declared twice", number);
                sigma.symbols.emplace_back(name, m);
            }
            else if (keyword == "identity") {
                auto rest = raw.substr(raw.find("identity") + 8);
                auto eq = rest.find('=');
                if (eq == string::npos || rest.find('=', eq + 1) != string::npos)
                    throw Error(ErrorKind::Syntax, "expected 'identity <lhs> = <rhs>'", number);
                Identity id{ parse_term(rest.substr(0, eq), number), parse_term(rest.substr(eq + 1), number) };
                for (auto * side : { &id.lhs, &id.rhs })
                    if (! side->is_variable()) {
                        auto m = sigma.arity(side->symbol);
                        if (! m)
                            throw Error(ErrorKind::Syntax, "undeclared symbol '" + side->symbol + "'", number);
                        if (*m != int(side->args.size()))
                            throw Error(ErrorKind::ArityMismatch, "'" + side->symbol + "' has arity " + to_string(*m), number);
                    }
                sigma.identities.push_back(std::move(id));
            }
            else
                throw Error(ErrorKind::Syntax, "unknown keyword '" + keyword + "'", number);
        }
        return sigma;
    }

    auto serialize_identities(const IdentitySet & sigma) -> string
    {
        string out;
        for (auto & [s, m] : sigma.symbols)
            out += "symbol " + s + " " + to_string(m) + "\n";
        for (auto & id : sigma.identities)
            out += "identity " + id.text() + "\n";
        return out;
    }

    auto parse_op(string_view text) -> OpTable
    {
        std::istringstream in{ string(text) };
        string raw;
        int number = 0;
        optional<OpTable> op;
        vector<bool> seen;
        long filled = 0;

        auto to_int = [&] (const string & s) {
            try {
                std::size_t used = 0;
                int v = std::stoi(s, &used);
                if (used == s.size())
                    return v;
            }
            catch (const std::logic_error &) {
            }
            throw Error(ErrorKind::Syntax, "expected an integer, got '" + s + "'", number);
        };

        while (std::getline(in, raw)) {
            ++number;
            if (auto hash = raw.find('#') ; hash != string::npos)
                raw.erase(hash);
            std::istringstream words{ raw };
            vector<string> w;
            for (string s ; words >> s ; )
                w.push_back(s);
            if (w.empty())
                continue;

            if (! op) {
                if (w.size() != 5 || w[0] != "op" || w[3] != "over")
                    throw Error(ErrorKind::Syntax, "expected 'op <name> <arity> over <size>'", number);
                op = OpTable{ w[1], to_int(w[2]), to_int(w[4]), { } };
                if (op->arity < 1 || op->size < 1)
                    throw Error(ErrorKind::ArityMismatch, "arity and size must be positive", number);
                long cells = 1;
                for (int i = 0 ; i < op->arity ; ++i)
                    cells *= op->size;
                op->values.assign(cells, -1);
                seen.assign(cells, false);
                continue;
            }

            if (int(w.size()) != op->arity + 1)
                throw Error(ErrorKind::ArityMismatch, "expected " + to_string(op->arity) + " arguments and a value", number);
            vector<int> args;
            for (int i = 0 ; i < op->arity ; ++i)
                args.push_back(to_int(w[i]));
            int value = to_int(w.back());
            for (auto a : args)
                if (a < 0 || a >= op->size)
                    throw Error(ErrorKind::UnknownElement, "argument out of range", number);
            if (value < 0 || value >= op->size)
                throw Error(ErrorKind::UnknownElement, "value out of range", number);
            auto i = op->index(args);
            if (seen[i])
                throw Error(ErrorKind::Syntax, "repeated table entry", number);
            seen[i] = true;
            op->values[i] = value;
            ++filled;
        }

        if (! op)
            throw Error(ErrorKind::Syntax, "empty operation file");
        if (filled != long(op->values.size()))
            throw Error(ErrorKind::Syntax, "operation table '" + op->name + "' is not total");
        return *op;
    }

    auto serialize_op(const OpTable & op) -> string
    {
        string out = "op " + op.name + " " + to_string(op.arity) + " over " + to_string(op.size) + "\n";
        long i = 0;
        for_each_tuple(op.size, op.arity, [&] (const vector<int> & t) {
                for (auto a : t)
                    out += to_string(a) + " ";
                out += to_string(op.values[i++]) + "\n";
            });
        return out;
    }

    auto is_polymorphism(const OpTable & f, const RelStructure & a) -> bool
    {
        if (f.size != a.size())
            throw Error(ErrorKind::ArityMismatch, "operation '" + f.name + "' is over " + to_string(f.size)
                    + " elements, structure has " + to_string(a.size()));
        for (auto & r : a.relations) {
            set<Tuple> rows(r.tuples.begin(), r.tuples.end());
            bool ok = true;
            for_each_tuple(int(r.tuples.size()), f.arity, [&] (const vector<int> & choice) {
                    if (! ok)
                        return;
                    Tuple image(r.arity);
                    vector<int> column(f.arity);
                    for (int p = 0 ; p < r.arity ; ++p) {
                        for (int i = 0 ; i < f.arity ; ++i)
                            column[i] = r.tuples[choice[i]][p];
                        image[p] = f(column);
                    }
                    if (! rows.count(image))
                        ok = false;
                });
            if (! ok)
                return false;
        }
        return true;
    }

    namespace
    {
        auto evaluate(const OpMap & ops, const Term & t, const map<string, int> & env) -> int
        {
            if (t.is_variable())
                return env.at(t.args[0]);
            auto op = ops.find(t.symbol);
            if (op == ops.end())
                throw Error(ErrorKind::ArityMismatch, "no table for symbol '" + t.symbol + "'");
            vector<int> args;
            for (auto & v : t.args)
                args.push_back(env.at(v));
            return op->second(args);
        }
    }

    auto first_failure(const OpMap & ops, const IdentitySet & sigma, int size) -> optional<string>
    {
        for (auto & [symbol, arity] : sigma.symbols) {
            auto op = ops.find(symbol);
            if (op == ops.end())
                return "no table for symbol '" + symbol + "'";
            if (op->second.arity != arity || op->second.size != size)
                return "table for '" + symbol + "' has the wrong shape";
        }

        for (auto & id : sigma.identities) {
            auto vars = id.variables();
            optional<string> failure;
            for_each_tuple(size, int(vars.size()), [&] (const vector<int> & values) {
                    if (failure)
                        return;
                    map<string, int> env;
                    for (std::size_t i = 0 ; i < vars.size() ; ++i)
                        env[vars[i]] = values[i];
                    if (evaluate(ops, id.lhs, env) != evaluate(ops, id.rhs, env)) {
                        string at;
                        for (std::size_t i = 0 ; i < vars.size() ; ++i)
                            at += (i ? ", " : "") + vars[i] + "=" + to_string(values[i]);
                        failure = id.text() + " fails at " + at;
                    }
                });
            if (failure)
                return failure;
        }
        return std::nullopt;
    }

    auto satisfies(const OpMap & ops, const IdentitySet & sigma, int size) -> bool
    {
        return ! first_failure(ops, sigma, size);
    }

    auto find_operations(const RelStructure & a, const IdentitySet & sigma) -> optional<OpMap>
    {
        int size = a.size();
        map<string, long> offset;
        long cells = 0;
        for (auto & [symbol, arity] : sigma.symbols) {
            offset[symbol] = cells;
            long n = 1;
            for (int i = 0 ; i < arity ; ++i)
                n *= size;
            cells += n;
        }

        vector<long> parent(cells);
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&] (long x) {
            while (parent[x] != x)
                x = parent[x] = parent[parent[x]];
            return x;
        };

        auto cell = [&] (const Term & t, const map<string, int> & env) {
            long index = 0;
            for (auto & v : t.args)
                index = index * size + env.at(v);
            return offset.at(t.symbol) + index;
        };

        vector<pair<long, int>> constants;
        bool contradiction = false;
        for (auto & id : sigma.identities) {
            auto vars = id.variables();
            for_each_tuple(size, int(vars.size()), [&] (const vector<int> & values) {
                    map<string, int> env;
                    for (std::size_t i = 0 ; i < vars.size() ; ++i)
                        env[vars[i]] = values[i];
                    bool lv = id.lhs.is_variable(), rv = id.rhs.is_variable();
                    if (lv && rv) {
                        if (env[id.lhs.args[0]] != env[id.rhs.args[0]])
                            contradiction = true;
                    }
                    else if (lv)
                        constants.emplace_back(cell(id.rhs, env), env[id.lhs.args[0]]);
                    else if (rv)
                        constants.emplace_back(cell(id.lhs, env), env[id.rhs.args[0]]);
                    else {
                        auto x = find(cell(id.lhs, env)), y = find(cell(id.rhs, env));
                        if (x != y)
                            parent[std::max(x, y)] = std::min(x, y);
                    }
                });
        }
        if (contradiction)
            return std::nullopt;

        map<long, int> variable_of;
        RelStructure x;
        x.name = "indicator";
        x.role = Role::Instance;
        for (long c = 0 ; c < cells ; ++c)
            if (find(c) == c) {
                variable_of[c] = x.size();
                x.domain.push_back("c" + to_string(c));
            }
        auto variable = [&] (long c) { return variable_of.at(find(c)); };

        Restriction restriction;
        for (auto & [c, value] : constants) {
            int v = variable(c);
            auto it = restriction.find(v);
            if (it == restriction.end())
                restriction[v] = { value };
            else if (it->second[0] != value)
                return std::nullopt;
        }

        for (auto & r : a.relations) {
            Relation constraint{ r.name, r.arity, { } };
            for (auto & [symbol, arity] : sigma.symbols) {
                long base = offset[symbol];
                for_each_tuple(int(r.tuples.size()), arity, [&] (const vector<int> & choice) {
                        Tuple scope(r.arity);
                        for (int p = 0 ; p < r.arity ; ++p) {
                            long index = 0;
                            for (int i = 0 ; i < arity ; ++i)
                                index = index * size + r.tuples[choice[i]][p];
                            scope[p] = variable(base + index);
                        }
                        constraint.tuples.push_back(std::move(scope));
                    });
            }
            x.relations.push_back(std::move(constraint));
        }
        normalise(x);

        auto h = find_hom(x, a, restriction);
        if (! h)
            return std::nullopt;

        OpMap result;
        for (auto & [symbol, arity] : sigma.symbols) {
            OpTable op{ symbol, arity, size, { } };
            long n = cells;
            for (auto & [s, m] : sigma.symbols)
                if (offset[s] > offset[symbol])
                    n = std::min(n, offset[s]);
            for (long c = offset[symbol] ; c < n ; ++c)
                op.values.push_back((*h)[variable(c)]);
            result.emplace(symbol, std::move(op));
        }
        return result;
    }

    auto idempotency_missing(const IdentitySet & sigma) -> optional<string>
    {
        for (auto & [symbol, arity] : sigma.symbols) {
            bool found = false;
            for (auto & id : sigma.identities)
                for (auto [term, other] : { pair{ &id.lhs, &id.rhs }, pair{ &id.rhs, &id.lhs } })
                    if (term->symbol == symbol && other->is_variable()) {
                        bool all = true;
                        for (auto & v : term->args)
                            if (v != other->args[0])
                                all = false;
                        if (all)
                            found = true;
                    }
            if (! found)
                return symbol;
        }
        return std::nullopt;
    }

    namespace
    {
        auto build(const string & text) -> IdentitySet
        {
            return parse_identities(text);
        }
    }

    auto majority_identities() -> IdentitySet
    {
        return build(
                "symbol m 3\n"
                "identity m(x,x,x) = x\n"
                "identity m(x,x,y) = x\n"
                "identity m(x,y,x) = x\n"
                "identity m(y,x,x) = x\n");
    }

    auto maltsev_identities() -> IdentitySet
    {
        return build(
                "symbol p 3\n"
                "identity p(x,x,x) = x\n"
                "identity p(y,x,x) = y\n"
                "identity p(x,x,y) = y\n");
    }

    auto wnu_identities(int m) -> IdentitySet
    {
        if (m < 2)
            throw Error(ErrorKind::ArityMismatch, "a weak near-unanimity needs arity at least 2");
        string text = "symbol w " + to_string(m) + "\n";
        auto term = [&] (int y_at) {
            string s = "w(";
            for (int i = 0 ; i < m ; ++i)
                s += string(i ? "," : "") + (i == y_at ? "y" : "x");
            return s + ")";
        };
        text += "identity " + term(-1) + " = x\n";
        for (int i = 0 ; i + 1 < m ; ++i)
            text += "identity " + term(i) + " = " + term(i + 1) + "\n";
        return build(text);
    }

    auto three_permutability_identities() -> IdentitySet
    {
        return build(
                "symbol p1 3\n"
                "symbol p2 3\n"
                "identity p1(x,x,x) = x\n"
                "identity p2(x,x,x) = x\n"
                "identity p1(x,y,y) = x\n"
                "identity p1(x,x,y) = p2(x,y,y)\n"
                "identity p2(x,x,y) = y\n");
    }
}
