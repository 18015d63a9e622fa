#pragma once

// Small random generators for property tests. Seeds are fixed so a failure
// reproduces; CAPTURE the seed when looping.

#include "qub/spaces.hpp"

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace qub::testing {

class Gen {
public:
    explicit Gen(unsigned seed) : rng_(seed) {}

    int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

    // c * s^e with small nonzero integer c
    Scalar scalar()
    {
        int c = 0;
        while (c == 0) c = uniform(-4, 4);
        return Scalar(static_cast<long>(c)) * Scalar::s_power(uniform(-6, 6));
    }

    Word word(const std::vector<Generator>& alphabet, int min_len, int max_len)
    {
        Word w;
        int len = uniform(min_len, max_len);
        for (int i = 0; i < len; ++i)
            w.push_back(encode(alphabet[static_cast<std::size_t>(uniform(0, static_cast<int>(alphabet.size()) - 1))]));
        return w;
    }

    NCPoly poly(const std::vector<Generator>& alphabet, int terms, int max_len)
    {
        NCPoly p;
        for (int t = 0; t < terms; ++t) p += NCPoly::word(word(alphabet, 0, max_len), scalar());
        return p;
    }

private:
    std::mt19937 rng_;
};

inline SpaceSpec space_spec(Family f, int n, int copies = 1)
{
    SpaceSpec s;
    s.family = f;
    s.n = n;
    s.copies = copies;
    return s;
}

// Commutative model by direct enumeration of exponent vectors: free letters
// take exponents >= 0, Laurent letters any integer (cost |e|), and each
// exclusive pair uses at most one of its two letters.
inline std::uint64_t enumerate_model(int free_letters, int laurent, int pairs, int d)
{
    std::uint64_t count = 0;
    int slots = free_letters + laurent + pairs;
    std::function<void(int, int)> rec = [&](int slot, int left) {
        if (slot == slots) {
            if (left == 0) ++count;
            return;
        }
        rec(slot + 1, left);
        // a Laurent letter has two signs, a pair has two members
        int ways = slot < free_letters ? 1 : 2;
        for (int e = 1; e <= left; ++e)
            for (int w = 0; w < ways; ++w) rec(slot + 1, left - e);
    };
    rec(0, d);
    return count;
}

} // namespace qub::testing
