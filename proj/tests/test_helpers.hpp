#pragma once

#include "cisim/config_space.hpp"

#include <algorithm>
#include <bit>
#include <vector>

namespace cisim::testing {

// Brute-force enumeration of all configurations of a space, sorted by
// bitmask. Independent of the combinatorial ranking under test.
inline std::vector<Config> enumerate_space(const SpaceParams& p) {
    std::vector<Config> all;
    for (Config x = 0; x < (Config{1} << p.n_orbitals); ++x)
        if (std::popcount(x) == p.n_electrons) all.push_back(x);
    std::sort(all.begin(), all.end());
    return all;
}

// Brute-force neighbor list: every configuration differing in exactly
// `degree` occupied orbitals, by scanning the whole space.
inline std::vector<Config> enumerate_neighbors(Config x, int degree, const SpaceParams& p) {
    std::vector<Config> out;
    for (Config y : enumerate_space(p))
        if (y != x && std::popcount(x ^ y) == 2 * degree) out.push_back(y);
    return out;
}

} // namespace cisim::testing
