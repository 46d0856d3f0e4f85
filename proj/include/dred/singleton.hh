/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef DRED_SINGLETON_HH
#define DRED_SINGLETON_HH 1

#include <dred/structure.hh>

#include <utility>

namespace dred
{
    /// Blocks describing the relations of s in order.
    auto blocks_of(const RelStructure & s) -> BlockInfo;

    /// The single relation R_1 x ... x R_n, named "R_1*...*R_n". A structure
    /// that already has one relation comes back unchanged.
    auto merge_template(const RelStructure & a) -> std::pair<RelStructure, BlockInfo>;

    /// Each R_i-tuple becomes one product tuple, padded with fresh elements
    /// "pad:<relation>:<tuple index>:<position>" outside block i.
    auto merge_instance(const RelStructure & x, const BlockInfo & blocks) -> RelStructure;

    /// Projects the single relation onto each block.
    auto unmerge_instance(const RelStructure & x, const BlockInfo & blocks) -> RelStructure;
}

#endif
