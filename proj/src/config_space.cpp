#include "cisim/config_space.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <stdexcept>
#include <string>

namespace cisim {

namespace {

constexpr std::uint64_t kOverflow = std::numeric_limits<std::uint64_t>::max();

// Pascal triangle up to n = 64 with kOverflow as saturation sentinel.
struct BinomialTable {
    std::uint64_t c[65][65];

    constexpr BinomialTable() : c{} {
        for (int n = 0; n <= 64; ++n) {
            c[n][0] = 1;
            for (int k = 1; k <= n; ++k) {
                const std::uint64_t a = c[n - 1][k - 1];
                const std::uint64_t b = (k <= n - 1) ? c[n - 1][k] : 0;
                if (a == kOverflow || b == kOverflow || a > kOverflow - b)
                    c[n][k] = kOverflow;
                else
                    c[n][k] = a + b;
            }
        }
    }
};

constexpr BinomialTable kBinomial{};

Config full_mask(int n_bits) {
    return (n_bits >= 64) ? ~Config{0} : ((Config{1} << n_bits) - 1);
}

} // namespace

SpaceParams::SpaceParams(int n_o, int n_e) : n_orbitals(n_o), n_electrons(n_e) {
    if (n_o < 1 || n_o > kMaxOrbitals)
        throw std::invalid_argument("n_orbitals must be in [1, " +
                                    std::to_string(kMaxOrbitals) + "], got " +
                                    std::to_string(n_o));
    if (n_e < 0 || n_e > n_o)
        throw std::invalid_argument("n_electrons must be in [0, n_orbitals], got " +
                                    std::to_string(n_e));
}

std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n || n < 0) return 0;
    if (n > 64) throw std::overflow_error("binomial: n > 64 unsupported");
    const std::uint64_t v = kBinomial.c[n][k];
    if (v == kOverflow)
        throw std::overflow_error("binomial(" + std::to_string(n) + ", " +
                                  std::to_string(k) + ") exceeds 64 bits");
    return v;
}

std::uint64_t dimension(const SpaceParams& p) {
    return binomial(p.n_orbitals, p.n_electrons);
}

std::uint64_t sparsity(const SpaceParams& p) {
    const int ne = p.n_electrons;
    const int nv = p.n_orbitals - p.n_electrons;
    return binomial(ne, 2) * binomial(nv, 2) +
           static_cast<std::uint64_t>(ne) * static_cast<std::uint64_t>(nv) + 1;
}

Config encode(const std::vector<int>& orbitals, const SpaceParams& p) {
    if (static_cast<int>(orbitals.size()) != p.n_electrons)
        throw std::invalid_argument("encode: expected " + std::to_string(p.n_electrons) +
                                    " orbitals, got " + std::to_string(orbitals.size()));
    Config x = 0;
    for (int orb : orbitals) {
        if (orb < 1 || orb > p.n_orbitals)
            throw std::invalid_argument("encode: orbital " + std::to_string(orb) +
                                        " outside [1, " + std::to_string(p.n_orbitals) + "]");
        const Config bit = Config{1} << (orb - 1);
        if (x & bit)
            throw std::invalid_argument("encode: duplicate orbital " + std::to_string(orb));
        x |= bit;
    }
    return x;
}

std::vector<int> orbital_list(Config x) {
    std::vector<int> orbs;
    orbs.reserve(static_cast<std::size_t>(std::popcount(x)));
    while (x) {
        orbs.push_back(std::countr_zero(x) + 1);
        x &= x - 1;
    }
    return orbs;
}

bool is_valid_config(Config x, const SpaceParams& p) {
    return std::popcount(x) == p.n_electrons && (x & ~full_mask(p.n_orbitals)) == 0;
}

Rank rank_of(Config x, const SpaceParams& p) {
    if (!is_valid_config(x, p))
        throw std::invalid_argument("rank_of: configuration " + std::to_string(x) +
                                    " invalid for (" + std::to_string(p.n_orbitals) + ", " +
                                    std::to_string(p.n_electrons) + ")");
    // Colexicographic rank: sum of C(position_j, j) over set bits, j = 1-based
    // index of the bit in ascending position order. Colex order on position
    // tuples coincides with numeric order on bitmasks.
    Rank q = 0;
    int j = 0;
    Config rest = x;
    while (rest) {
        const int pos = std::countr_zero(rest);
        rest &= rest - 1;
        ++j;
        q += binomial(pos, j);
    }
    return q;
}

Config unrank(Rank q, const SpaceParams& p) {
    const std::uint64_t dim = dimension(p);
    if (q >= dim)
        throw std::invalid_argument("unrank: rank " + std::to_string(q) +
                                    " outside [0, " + std::to_string(dim) + ")");
    Config x = 0;
    std::uint64_t rest = q;
    int pos = p.n_orbitals - 1;
    for (int j = p.n_electrons; j >= 1; --j) {
        while (binomial(pos, j) > rest) --pos;
        x |= Config{1} << pos;
        rest -= binomial(pos, j);
        --pos;
    }
    return x;
}

int n_incl(Config x, int i) {
    if (i < 1 || i > 64)
        throw std::invalid_argument("n_incl: orbital index " + std::to_string(i) +
                                    " outside [1, 64]");
    return std::popcount(x & full_mask(i - 1));
}

int n_excl(Config x, int i) {
    return (i - 1) - n_incl(x, i);
}

std::vector<Config> neighbors(Config x, int degree, const SpaceParams& p) {
    if (degree != 1 && degree != 2)
        throw std::invalid_argument("neighbors: degree must be 1 or 2");
    if (!is_valid_config(x, p))
        throw std::invalid_argument("neighbors: invalid configuration");

    const std::vector<int> occ = orbital_list(x);
    std::vector<int> vac;
    vac.reserve(static_cast<std::size_t>(p.n_orbitals - p.n_electrons));
    for (int i = 1; i <= p.n_orbitals; ++i)
        if (!(x >> (i - 1) & 1)) vac.push_back(i);

    std::vector<Config> out;
    if (degree == 1) {
        out.reserve(occ.size() * vac.size());
        for (int d : occ)
            for (int u : vac)
                out.push_back(x ^ (Config{1} << (d - 1)) ^ (Config{1} << (u - 1)));
    } else {
        out.reserve(occ.size() * (occ.size() - 1) / 2 * vac.size() * (vac.size() - 1) / 2);
        for (std::size_t a = 0; a < occ.size(); ++a)
            for (std::size_t b = a + 1; b < occ.size(); ++b)
                for (std::size_t c = 0; c < vac.size(); ++c)
                    for (std::size_t e = c + 1; e < vac.size(); ++e)
                        out.push_back(x ^ (Config{1} << (occ[a] - 1)) ^ (Config{1} << (occ[b] - 1)) ^
                                      (Config{1} << (vac[c] - 1)) ^ (Config{1} << (vac[e] - 1)));
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace cisim
