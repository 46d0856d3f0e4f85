/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <dred/formats.hh>
#include <dred/errors.hh>

#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

using std::map;
using std::optional;
using std::set;
using std::string;
using std::string_view;
using std::to_string;
using std::vector;

namespace dred
{
    namespace
    {
        struct Line
        {
            int number;
            vector<string> words;
            bool directive;     // a "# provenance" or "# level" line
        };

        auto split_words(string_view text) -> vector<string>
        {
            vector<string> result;
            std::istringstream in{ string(text) };
            string w;
            while (in >> w)
                result.push_back(w);
            return result;
        }

        auto lines_of(string_view text) -> vector<Line>
        {
            vector<Line> result;
            int number = 0;
            std::size_t pos = 0;
            while (pos <= text.size()) {
                auto end = text.find('\n', pos);
                if (end == string_view::npos)
                    end = text.size();
                auto raw = text.substr(pos, end - pos);
                ++number;
                pos = end + 1;

                auto hash = raw.find('#');
                if (hash != string_view::npos) {
                    auto comment = split_words(raw.substr(hash + 1));
                    if (! comment.empty() && (comment[0] == "provenance" || comment[0] == "level"))
                        result.push_back(Line{ number, comment, true });
                    raw = raw.substr(0, hash);
                }
                auto words = split_words(raw);
                if (! words.empty())
                    result.push_back(Line{ number, words, false });
                if (end == text.size())
                    break;
            }
            return result;
        }

        auto parse_int(const string & s, int line) -> int
        {
            try {
                std::size_t used = 0;
                int v = std::stoi(s, &used);
                if (used != s.size())
                    throw Error(ErrorKind::Syntax, "expected an integer, got '" + s + "'", line);
                return v;
            }
            catch (const std::logic_error &) {
                throw Error(ErrorKind::Syntax, "expected an integer, got '" + s + "'", line);
            }
        }

        auto parse_index_list(const string & s, int line) -> vector<int>
        {
            vector<int> result;
            std::size_t pos = 0;
            while (pos <= s.size()) {
                auto comma = s.find(',', pos);
                if (comma == string::npos)
                    comma = s.size();
                result.push_back(parse_int(s.substr(pos, comma - pos), line));
                pos = comma + 1;
            }
            return result;
        }

        auto index_list(const vector<int> & v) -> string
        {
            string result;
            for (std::size_t i = 0 ; i < v.size() ; ++i)
                result += (i ? "," : "") + to_string(v[i]);
            return result;
        }

        auto need(const Line & l, std::size_t at_least, const string & what) -> void
        {
            if (l.words.size() < at_least)
                throw Error(ErrorKind::Syntax, "malformed '" + what + "' line", l.number);
        }
    }

    auto parse_structure(string_view text) -> RelStructure
    {
        RelStructure s;
        bool header = false, ended = false, have_domain = false;
        map<string, int> index;
        Relation * current = nullptr;

        for (auto & l : lines_of(text)) {
            if (l.directive)
                continue;
            auto & w = l.words;
            if (ended)
                throw Error(ErrorKind::Syntax, "content after 'end'", l.number);

            if (w[0] == "structure" || w[0] == "instance") {
                if (header)
                    throw Error(ErrorKind::Syntax, "second header", l.number);
                if (w.size() != 2)
                    throw Error(ErrorKind::Syntax, "expected '" + w[0] + " <name>'", l.number);
                header = true;
                s.name = w[1];
                s.role = w[0] == "structure" ? Role::Template : Role::Instance;
                continue;
            }
            if (! header)
                throw Error(ErrorKind::Syntax, "expected 'structure' or 'instance' header", l.number);

            if (w[0] == "domain") {
                if (have_domain)
                    throw Error(ErrorKind::Syntax, "second 'domain' line", l.number);
                have_domain = true;
                for (std::size_t i = 1 ; i < w.size() ; ++i) {
                    if (! index.emplace(w[i], int(s.domain.size())).second)
                        throw Error(ErrorKind::Syntax, "duplicate element '" + w[i] + "'", l.number);
                    s.domain.push_back(w[i]);
                }
            }
            else if (w[0] == "blocks") {
                need(l, 2, "blocks");
                BlockInfo b;
                for (std::size_t i = 1 ; i < w.size() ; ++i)
                    b.arities.push_back(parse_int(w[i], l.number));
                s.blocks = b;
            }
            else if (w[0] == "relation") {
                if (! have_domain)
                    throw Error(ErrorKind::Syntax, "'relation' before 'domain'", l.number);
                if (w.size() != 3)
                    throw Error(ErrorKind::Syntax, "expected 'relation <name> <arity>'", l.number);
                int arity = parse_int(w[2], l.number);
                if (arity < 1)
                    throw Error(ErrorKind::ArityMismatch, "arity must be positive", l.number);
                if (s.find_relation(w[1]))
                    throw Error(ErrorKind::Syntax, "duplicate relation '" + w[1] + "'", l.number);
                s.relations.push_back(Relation{ w[1], arity, { } });
                current = &s.relations.back();
            }
            else if (w[0] == "tuple") {
                if (! current)
                    throw Error(ErrorKind::Syntax, "'tuple' outside a relation", l.number);
                if (int(w.size()) - 1 != current->arity)
                    throw Error(ErrorKind::ArityMismatch, "tuple has " + to_string(w.size() - 1)
                            + " entries, relation '" + current->name + "' has arity " + to_string(current->arity), l.number);
                Tuple t;
                for (std::size_t i = 1 ; i < w.size() ; ++i) {
                    auto it = index.find(w[i]);
                    if (it == index.end())
                        throw Error(ErrorKind::UnknownElement, "unknown element '" + w[i] + "'", l.number);
                    t.push_back(it->second);
                }
                current->tuples.push_back(std::move(t));
            }
            else if (w[0] == "end") {
                if (w.size() != 1)
                    throw Error(ErrorKind::Syntax, "trailing words after 'end'", l.number);
                ended = true;
            }
            else
                throw Error(ErrorKind::Syntax, "unknown keyword '" + w[0] + "'", l.number);
        }

        if (! header)
            throw Error(ErrorKind::Syntax, "empty input");
        if (! ended)
            throw Error(ErrorKind::Syntax, "missing 'end'");

        if (s.blocks) {
            if (s.relations.size() == 1) {
                auto & name = s.relations[0].name;
                std::size_t pos = 0;
                while (pos <= name.size()) {
                    auto star = name.find('*', pos);
                    if (star == string::npos)
                        star = name.size();
                    s.blocks->names.push_back(name.substr(pos, star - pos));
                    pos = star + 1;
                }
                if (s.blocks->names.size() != s.blocks->arities.size()) {
                    s.blocks->names.clear();
                    for (std::size_t i = 0 ; i < s.blocks->arities.size() ; ++i)
                        s.blocks->names.push_back("R" + to_string(i + 1));
                }
            }
        }

        normalise(s);
        return s;
    }

    auto serialize_structure(const RelStructure & s) -> string
    {
        string out = (s.role == Role::Template ? "structure " : "instance ") + s.name + "\n";
        out += "domain";
        for (auto & e : s.domain)
            out += " " + e;
        out += "\n";
        if (s.blocks) {
            out += "blocks";
            for (auto k : s.blocks->arities)
                out += " " + to_string(k);
            out += "\n";
        }
        for (auto & r : s.relations) {
            out += "relation " + r.name + " " + to_string(r.arity) + "\n";
            for (auto & t : r.tuples) {
                out += "tuple";
                for (auto x : t)
                    out += " " + s.domain[x];
                out += "\n";
            }
        }
        out += "end\n";
        return out;
    }

    namespace
    {
        auto provenance_text(const DVertex & p) -> string
        {
            struct Visitor
            {
                auto operator() (const ElementVertex & v) const -> string
                {
                    return "element " + to_string(v.element);
                }
                auto operator() (const TupleVertex & v) const -> string
                {
                    return "tuple " + index_list(v.tuple);
                }
                auto operator() (const InternalVertex & v) const -> string
                {
                    return "internal " + to_string(v.element) + " " + index_list(v.tuple) + " " + to_string(v.position);
                }
                auto operator() (const VariableVertex & v) const -> string
                {
                    return "variable " + to_string(v.element);
                }
                auto operator() (const ApexVertex & v) const -> string
                {
                    return "apex " + to_string(v.tuple_index);
                }
                auto operator() (const GadgetVertex & v) const -> string
                {
                    return "gadget " + to_string(v.tuple_index) + " " + to_string(v.position) + " " + to_string(v.step);
                }
            };
            return std::visit(Visitor{ }, p);
        }

        auto parse_provenance(const Line & l) -> DVertex
        {
            // words: provenance <v> <kind> ...
            auto & w = l.words;
            need(l, 4, "provenance");
            auto & kind = w[2];
            auto want = [&] (std::size_t n) {
                if (w.size() != n)
                    throw Error(ErrorKind::Syntax, "malformed provenance for '" + w[1] + "'", l.number);
            };
            if (kind == "element") {
                want(4);
                return ElementVertex{ parse_int(w[3], l.number) };
            }
            if (kind == "tuple") {
                want(4);
                return TupleVertex{ parse_index_list(w[3], l.number) };
            }
            if (kind == "internal") {
                want(6);
                return InternalVertex{ parse_int(w[3], l.number), parse_index_list(w[4], l.number), parse_int(w[5], l.number) };
            }
            if (kind == "variable") {
                want(4);
                return VariableVertex{ parse_int(w[3], l.number) };
            }
            if (kind == "apex") {
                want(4);
                return ApexVertex{ parse_int(w[3], l.number) };
            }
            if (kind == "gadget") {
                want(6);
                return GadgetVertex{ parse_int(w[3], l.number), parse_int(w[4], l.number), parse_int(w[5], l.number) };
            }
            throw Error(ErrorKind::Syntax, "unknown provenance kind '" + kind + "'", l.number);
        }
    }

    auto parse_digraph(string_view text) -> Digraph
    {
        Digraph g;
        bool header = false, ended = false;
        map<string, int> index;
        map<string, DVertex> provenance;
        map<string, int> levels;
        int directive_line = 0;

        for (auto & l : lines_of(text)) {
            auto & w = l.words;
            if (l.directive) {
                directive_line = l.number;
                if (w[0] == "provenance") {
                    need(l, 4, "provenance");
                    provenance.insert_or_assign(w[1], parse_provenance(l));
                }
                else {
                    if (w.size() != 3)
                        throw Error(ErrorKind::Syntax, "expected '# level <v> <n>'", l.number);
                    levels[w[1]] = parse_int(w[2], l.number);
                }
                continue;
            }
            if (ended)
                throw Error(ErrorKind::Syntax, "content after 'end'", l.number);

            if (w[0] == "digraph") {
                if (header)
                    throw Error(ErrorKind::Syntax, "second header", l.number);
                if (w.size() != 2)
                    throw Error(ErrorKind::Syntax, "expected 'digraph <name>'", l.number);
                header = true;
                g.name = w[1];
                continue;
            }
            if (! header)
                throw Error(ErrorKind::Syntax, "expected 'digraph' header", l.number);

            if (w[0] == "vertex") {
                if (w.size() != 2)
                    throw Error(ErrorKind::Syntax, "expected 'vertex <v>'", l.number);
                if (! index.emplace(w[1], g.size()).second)
                    throw Error(ErrorKind::Syntax, "duplicate vertex '" + w[1] + "'", l.number);
                g.add_vertex(w[1]);
            }
            else if (w[0] == "edge") {
                if (w.size() != 3)
                    throw Error(ErrorKind::Syntax, "expected 'edge <u> <v>'", l.number);
                auto u = index.find(w[1]), v = index.find(w[2]);
                if (u == index.end())
                    throw Error(ErrorKind::UnknownElement, "undeclared vertex '" + w[1] + "'", l.number);
                if (v == index.end())
                    throw Error(ErrorKind::UnknownElement, "undeclared vertex '" + w[2] + "'", l.number);
                g.add_edge(u->second, v->second);
            }
            else if (w[0] == "end") {
                if (w.size() != 1)
                    throw Error(ErrorKind::Syntax, "trailing words after 'end'", l.number);
                ended = true;
            }
            else
                throw Error(ErrorKind::Syntax, "unknown keyword '" + w[0] + "'", l.number);
        }

        if (! header)
            throw Error(ErrorKind::Syntax, "empty input");
        if (! ended)
            throw Error(ErrorKind::Syntax, "missing 'end'");

        dedupe_edges(g);

        auto attach = [&] (auto & source, auto & target, const string & what) {
            if (source.empty())
                return;
            for (auto & [name, value] : source)
                if (! index.count(name))
                    throw Error(ErrorKind::UnknownElement, what + " for undeclared vertex '" + name + "'", directive_line);
            if (int(source.size()) != g.size())
                throw Error(ErrorKind::Syntax, what + " lines do not cover every vertex");
            for (auto & v : g.vertices)
                target.push_back(source.at(v));
        };
        attach(provenance, g.provenance, "provenance");
        attach(levels, g.levels, "level");

        validate(g);
        return g;
    }

    auto serialize_digraph(const Digraph & g) -> string
    {
        string out = "digraph " + g.name + "\n";
        for (int v = 0 ; v < g.size() ; ++v)
            if (! g.provenance.empty())
                out += "# provenance " + g.vertices[v] + " " + provenance_text(g.provenance[v]) + "\n";
        for (int v = 0 ; v < g.size() ; ++v)
            if (! g.levels.empty())
                out += "# level " + g.vertices[v] + " " + to_string(g.levels[v]) + "\n";
        for (auto & v : g.vertices)
            out += "vertex " + v + "\n";
        for (auto & [u, v] : g.edges)
            out += "edge " + g.vertices[u] + " " + g.vertices[v] + "\n";
        out += "end\n";
        return out;
    }

    auto looks_like_digraph(string_view text) -> bool
    {
        for (auto & l : lines_of(text))
            if (! l.directive)
                return l.words[0] == "digraph";
        return false;
    }

    auto export_dot(const Digraph & g) -> string
    {
        auto quote = [] (const string & s) {
            string r = "\"";
            for (auto c : s) {
                if (c == '"' || c == '\\')
                    r += '\\';
                r += c;
            }
            return r + "\"";
        };

        string out = "digraph " + quote(g.name) + " {\n";
        if (! g.levels.empty())
            out += "  rankdir=BT;\n";
        for (auto & v : g.vertices)
            out += "  " + quote(v) + ";\n";
        if (! g.levels.empty()) {
            map<int, vector<int>> by_level;
            for (int v = 0 ; v < g.size() ; ++v)
                by_level[g.levels[v]].push_back(v);
            for (auto & [level, vs] : by_level) {
                out += "  { rank=same;";
                for (auto v : vs)
                    out += " " + quote(g.vertices[v]) + ";";
                out += " }\n";
            }
        }
        for (auto & [u, v] : g.edges)
            out += "  " + quote(g.vertices[u]) + " -> " + quote(g.vertices[v]) + ";\n";
        out += "}\n";
        return out;
    }

    auto parse_restriction(string_view text, const vector<string> & source,
            const vector<string> & target) -> map<int, vector<int>>
    {
        map<string, int> source_index, target_index;
        for (int i = 0 ; i < int(source.size()) ; ++i)
            source_index.emplace(source[i], i);
        for (int i = 0 ; i < int(target.size()) ; ++i)
            target_index.emplace(target[i], i);

        map<int, set<int>> allowed;
        for (auto & l : lines_of(text)) {
            if (l.directive)
                continue;
            auto & w = l.words;
            if (w[0] != "allow" || w.size() < 2)
                throw Error(ErrorKind::Syntax, "expected 'allow <x> <a1> ...'", l.number);
            auto x = source_index.find(w[1]);
            if (x == source_index.end())
                throw Error(ErrorKind::UnknownElement, "unknown source element '" + w[1] + "'", l.number);
            auto & set = allowed[x->second];
            for (std::size_t i = 2 ; i < w.size() ; ++i) {
                auto a = target_index.find(w[i]);
                if (a == target_index.end())
                    throw Error(ErrorKind::UnknownElement, "unknown target element '" + w[i] + "'", l.number);
                set.insert(a->second);
            }
        }

        map<int, vector<int>> result;
        for (auto & [x, as] : allowed)
            result[x] = vector<int>(as.begin(), as.end());
        return result;
    }

    auto read_file(const string & path) -> string
    {
        if (path == "-") {
            std::ostringstream s;
            s << std::cin.rdbuf();
            return s.str();
        }
        std::ifstream in{ path, std::ios::binary };
        if (! in)
            throw Error(ErrorKind::Io, "cannot read '" + path + "'");
        std::ostringstream s;
        s << in.rdbuf();
        return s.str();
    }

    auto write_file(const string & path, string_view contents) -> void
    {
        if (path == "-") {
            std::cout << contents << std::flush;
            return;
        }
        std::ofstream out{ path, std::ios::binary };
        if (! out)
            throw Error(ErrorKind::Io, "cannot write '" + path + "'");
        out << contents;
        if (! out)
            throw Error(ErrorKind::Io, "error writing '" + path + "'");
    }
}
