/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <dred/singleton.hh>
#include <dred/errors.hh>

using std::pair;
using std::string;
using std::to_string;
using std::vector;

namespace dred
{
    auto blocks_of(const RelStructure & s) -> BlockInfo
    {
        BlockInfo b;
        for (auto & r : s.relations) {
            b.arities.push_back(r.arity);
            b.names.push_back(r.name);
        }
        return b;
    }

    auto merge_template(const RelStructure & a) -> pair<RelStructure, BlockInfo>
    {
        validate(a);
        for (auto & r : a.relations)
            if (r.tuples.empty())
                throw Error(ErrorKind::NonemptyRelationRequired, "relation '" + r.name + "' is empty");

        auto blocks = blocks_of(a);
        if (blocks.trivial())
            return { a, blocks };

        string name;
        for (std::size_t i = 0 ; i < blocks.names.size() ; ++i)
            name += (i ? "*" : "") + blocks.names[i];

        Relation merged{ name, blocks.total(), { } };
        vector<std::size_t> choice(a.relations.size(), 0);
        while (true) {
            Tuple t;
            for (std::size_t i = 0 ; i < choice.size() ; ++i) {
                auto & part = a.relations[i].tuples[choice[i]];
                t.insert(t.end(), part.begin(), part.end());
            }
            merged.tuples.push_back(std::move(t));

            // odometer, last relation fastest
            int i = int(choice.size()) - 1;
            while (i >= 0 && ++choice[i] == a.relations[i].tuples.size())
                choice[i--] = 0;
            if (i < 0)
                break;
        }

        RelStructure result;
        result.name = a.name;
        result.role = a.role;
        result.domain = a.domain;
        result.relations.push_back(std::move(merged));
        result.blocks = blocks;
        normalise(result);
        return { result, blocks };
    }

    auto merge_instance(const RelStructure & x, const BlockInfo & blocks) -> RelStructure
    {
        validate(x);
        if (blocks.trivial()) {
            if (x.relations.size() > 1)
                throw Error(ErrorKind::SignatureMismatch, "instance has several relations, template has one");
            if (x.relations.size() == 1 && ! blocks.arities.empty() && x.relations[0].arity != blocks.arities[0])
                throw Error(ErrorKind::SignatureMismatch, "instance relation arity differs from the template's");
            return x;
        }

        vector<const Relation *> by_block(blocks.arities.size(), nullptr);
        for (auto & r : x.relations) {
            bool found = false;
            for (std::size_t i = 0 ; i < blocks.names.size() ; ++i)
                if (blocks.names[i] == r.name) {
                    if (r.arity != blocks.arities[i])
                        throw Error(ErrorKind::SignatureMismatch, "relation '" + r.name + "' has arity "
                                + to_string(r.arity) + ", template has " + to_string(blocks.arities[i]));
                    by_block[i] = &r;
                    found = true;
                }
            if (! found)
                throw Error(ErrorKind::SignatureMismatch, "relation '" + r.name + "' is not in the template's signature");
        }

        RelStructure result;
        result.name = x.name;
        result.role = Role::Instance;
        result.domain = x.domain;
        string name;
        for (std::size_t i = 0 ; i < blocks.names.size() ; ++i)
            name += (i ? "*" : "") + blocks.names[i];
        Relation merged{ name, blocks.total(), { } };

        for (std::size_t i = 0 ; i < by_block.size() ; ++i) {
            if (! by_block[i])
                continue;
            int offset = blocks.offset(int(i));
            for (std::size_t t = 0 ; t < by_block[i]->tuples.size() ; ++t) {
                Tuple merged_tuple(blocks.total());
                for (int p = 0 ; p < blocks.total() ; ++p) {
                    if (p >= offset && p < offset + blocks.arities[i])
                        merged_tuple[p] = by_block[i]->tuples[t][p - offset];
                    else {
                        merged_tuple[p] = result.size();
                        result.domain.push_back("pad:" + by_block[i]->name + ":" + to_string(t) + ":" + to_string(p + 1));
                    }
                }
                merged.tuples.push_back(std::move(merged_tuple));
            }
        }

        result.relations.push_back(std::move(merged));
        result.blocks = blocks;
        normalise(result);
        return result;
    }

    auto unmerge_instance(const RelStructure & x, const BlockInfo & blocks) -> RelStructure
    {
        validate(x);
        if (x.relations.size() != 1)
            throw Error(ErrorKind::ArityMismatch, "expected exactly one relation");
        auto & r = x.relations[0];
        if (r.arity != blocks.total())
            throw Error(ErrorKind::ArityMismatch, "relation arity " + to_string(r.arity)
                    + " does not match block total " + to_string(blocks.total()));

        RelStructure result;
        result.name = x.name;
        result.role = x.role;
        result.domain = x.domain;
        for (std::size_t i = 0 ; i < blocks.arities.size() ; ++i) {
            string name = i < blocks.names.size() ? blocks.names[i] : "R" + to_string(i + 1);
            Relation part{ name, blocks.arities[i], { } };
            int offset = blocks.offset(int(i));
            for (auto & t : r.tuples)
                part.tuples.emplace_back(t.begin() + offset, t.begin() + offset + blocks.arities[i]);
            result.relations.push_back(std::move(part));
        }
        normalise(result);
        return result;
    }
}
