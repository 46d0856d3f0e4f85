/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef DRED_BITSET_HH
#define DRED_BITSET_HH 1

#include <bit>
#include <cstdint>
#include <vector>

namespace dred
{
    /// Fixed-size dynamic bitset used for solver domains and adjacency rows.
    class Bitset
    {
        private:
            int _size = 0;
            std::vector<std::uint64_t> _words;

        public:
            Bitset() = default;

            explicit Bitset(int size, bool filled = false) :
                _size(size),
                _words((size + 63) / 64, filled ? ~std::uint64_t{0} : 0)
            {
                if (filled)
                    trim();
            }

            auto size() const -> int
            {
                return _size;
            }

            auto set(int i) -> void
            {
                _words[i / 64] |= std::uint64_t{1} << (i % 64);
            }

            auto reset(int i) -> void
            {
                _words[i / 64] &= ~(std::uint64_t{1} << (i % 64));
            }

            auto test(int i) const -> bool
            {
                return (_words[i / 64] >> (i % 64)) & 1;
            }

            auto count() const -> int
            {
                int result = 0;
                for (auto w : _words)
                    result += std::popcount(w);
                return result;
            }

            auto any() const -> bool
            {
                for (auto w : _words)
                    if (w)
                        return true;
                return false;
            }

            auto none() const -> bool
            {
                return ! any();
            }

            /// First set bit at or after from, or -1.
            auto find_next(int from) const -> int
            {
                if (from >= _size)
                    return -1;
                int w = from / 64;
                std::uint64_t word = _words[w] & (~std::uint64_t{0} << (from % 64));
                while (true) {
                    if (word)
                        return w * 64 + std::countr_zero(word);
                    if (++w >= int(_words.size()))
                        return -1;
                    word = _words[w];
                }
            }

            auto find_first() const -> int
            {
                return find_next(0);
            }

            auto clear() -> void
            {
                for (auto & w : _words)
                    w = 0;
            }

            auto operator&= (const Bitset & other) -> Bitset &
            {
                for (std::size_t i = 0 ; i < _words.size() ; ++i)
                    _words[i] &= other._words[i];
                return *this;
            }

            auto operator|= (const Bitset & other) -> Bitset &
            {
                for (std::size_t i = 0 ; i < _words.size() ; ++i)
                    _words[i] |= other._words[i];
                return *this;
            }

            auto operator== (const Bitset & other) const -> bool = default;

            template <typename F_>
            auto for_each(F_ && f) const -> void
            {
                for (std::size_t w = 0 ; w < _words.size() ; ++w) {
                    auto word = _words[w];
                    while (word) {
                        int bit = std::countr_zero(word);
                        f(int(w * 64 + bit));
                        word &= word - 1;
                    }
                }
            }

        private:
            auto trim() -> void
            {
                if (_size % 64 != 0 && ! _words.empty())
                    _words.back() &= (std::uint64_t{1} << (_size % 64)) - 1;
            }
    };
}

#endif
