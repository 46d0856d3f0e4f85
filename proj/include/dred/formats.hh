/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef DRED_FORMATS_HH
#define DRED_FORMATS_HH 1

#include <dred/digraph.hh>
#include <dred/structure.hh>

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace dred
{
    /*
     * Structure files:
     *
     *   structure <name>          (or: instance <name>)
     *   domain <e1> ... <em>
     *   blocks <k1> ... <kn>      (optional, merged structures only)
     *   relation <R> <arity>
     *   tuple <e_1> ... <e_k>
     *   end
     *
     * Digraph files:
     *
     *   digraph <name>
     *   vertex <v>
     *   edge <u> <v>
     *   end
     *
     * '#' starts a comment. Digraph files may carry "# provenance" and
     * "# level" comment lines, which parse_digraph reads back.
     */

    auto parse_structure(std::string_view text) -> RelStructure;
    auto serialize_structure(const RelStructure & s) -> std::string;

    auto parse_digraph(std::string_view text) -> Digraph;
    auto serialize_digraph(const Digraph & g) -> std::string;

    /// True if the text's first keyword is "digraph".
    auto looks_like_digraph(std::string_view text) -> bool;

    auto export_dot(const Digraph & g) -> std::string;

    /// Restriction files: "allow <x> <a1> <a2> ..." lines, element names.
    auto parse_restriction(std::string_view text, const std::vector<std::string> & source,
            const std::vector<std::string> & target) -> std::map<int, std::vector<int>>;

    auto read_file(const std::string & path) -> std::string;
    auto write_file(const std::string & path, std::string_view contents) -> void;
}

#endif
