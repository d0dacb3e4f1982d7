#pragma once

#include <cstdint>
#include <vector>

namespace cisim {

/// Occupancy bitmask over spin orbitals: bit (i-1) set <=> orbital i occupied.
using Config = std::uint64_t;

/// 0-based index of a configuration within its space, ordered by bitmask value.
using Rank = std::uint64_t;

/// Bitmask width bound; larger spaces are rejected rather than wrapped.
inline constexpr int kMaxOrbitals = 63;

/// Fixed-particle-number space: n_electrons electrons in n_orbitals spin orbitals.
struct SpaceParams {
    int n_orbitals;
    int n_electrons;

    SpaceParams(int n_o, int n_e); // throws std::invalid_argument on bad bounds

    friend bool operator==(const SpaceParams&, const SpaceParams&) = default;
};

/// Exact C(n, k) in 64-bit arithmetic; throws std::overflow_error if the
/// value does not fit. C(n, k) = 0 for k < 0 or k > n.
std::uint64_t binomial(int n, int k);

/// Number of configurations, C(n_orbitals, n_electrons).
std::uint64_t dimension(const SpaceParams& p);

/// Maximum structural nonzeros in one row of the interaction matrix:
/// n_e(n_e-1)(n_o-n_e)(n_o-n_e-1)/4 + n_e(n_o-n_e) + 1.
std::uint64_t sparsity(const SpaceParams& p);

/// Bitmask from a set of occupied orbital indices (1-based). Rejects
/// out-of-range and duplicate orbitals and wrong cardinality.
Config encode(const std::vector<int>& orbitals, const SpaceParams& p);

/// Ascending list of occupied orbital indices (1-based). Inverse of encode.
std::vector<int> orbital_list(Config x);

bool is_valid_config(Config x, const SpaceParams& p);

/// Index of x among all configurations of the space sorted by bitmask value.
/// Combinatorial number system; O(n_orbitals), no enumeration.
Rank rank_of(Config x, const SpaceParams& p);

/// Configuration with rank q; inverse of rank_of.
Config unrank(Rank q, const SpaceParams& p);

/// Occupied orbitals strictly below orbital i (1 <= i).
int n_incl(Config x, int i);

/// Unoccupied orbitals strictly below orbital i: (i-1) - n_incl(x, i).
int n_excl(Config x, int i);

/// All configurations differing from x in exactly `degree` (1 or 2) occupied
/// orbitals, sorted ascending by bitmask.
std::vector<Config> neighbors(Config x, int degree, const SpaceParams& p);

} // namespace cisim
