/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef DRED_RANDOM_HH
#define DRED_RANDOM_HH 1

#include <dred/dbuild.hh>
#include <dred/digraph.hh>
#include <dred/structure.hh>

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace dred
{
    /// x' = 6364136223846793005 x + 1442695040888963407 (mod 2^64), starting
    /// from the seed. below(n) scales the high 32 bits of each output.
    class Rng
    {
        public:
            explicit Rng(std::uint64_t seed) :
                _engine(seed)
            {
            }

            auto next() -> std::uint64_t
            {
                return _engine();
            }

            auto below(int n) -> int
            {
                return int(((next() >> 32) * std::uint64_t(n)) >> 32);
            }

            /// Uniform in lo..hi inclusive.
            auto between(int lo, int hi) -> int
            {
                return lo + below(hi - lo + 1);
            }

            auto coin() -> bool
            {
                return below(2) == 1;
            }

        private:
            std::linear_congruential_engine<std::uint64_t, 6364136223846793005ULL, 1442695040888963407ULL, 0> _engine;
    };

    /// A single-relation template with 2..max_elements elements, arity
    /// 1..max_arity and 1..max_tuples tuples. With nontrivial set, constant
    /// tuples are never drawn.
    auto random_template(Rng & rng, int max_elements, int max_arity, int max_tuples, bool nontrivial) -> RelStructure;

    /// A template with one or two relations whose arities add up to at most
    /// max_total_arity.
    auto random_multi_template(Rng & rng, int max_elements, int max_total_arity, int max_tuples) -> RelStructure;

    /// An instance over the signature of a with 1..max_elements elements and
    /// 0..max_tuples tuples per relation.
    auto random_instance(Rng & rng, const RelStructure & a, int max_elements, int max_tuples) -> RelStructure;

    /// A digraph with at most max_vertices vertices to feed the reverse
    /// reduction for D(A). The second member names how it was made.
    auto random_reverse_graph(Rng & rng, const DMeta & meta, int max_vertices) -> std::pair<Digraph, std::string>;

    /// A nonempty random set of edges of D(A), returned as (sources, targets).
    auto random_edge_sets(Rng & rng, const DMeta & meta, int max_edges) -> std::pair<std::vector<int>, std::vector<int>>;
}

#endif
