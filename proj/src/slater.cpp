#include "cisim/slater.hpp"

#include "cisim/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace cisim {

SignMode sign_mode_from_name(const std::string& name) {
    if (name == "fermionic") return SignMode::fermionic;
    if (name == "plain") return SignMode::plain;
    throw std::invalid_argument("unknown sign mode '" + name +
                                "' (expected fermionic or plain)");
}

int excitation_degree(Config x, Config y) {
    return std::popcount(x ^ y) / 2;
}

namespace {

Config bit_of(int orbital) { return Config{1} << (orbital - 1); }

// Bits for orbitals strictly between a and b (order-free).
Config between_mask(int a, int b) {
    const int lo = std::min(a, b);
    const int hi = std::max(a, b);
    if (hi - lo < 2) return 0;
    return ((Config{1} << (hi - 1)) - 1) & ~((Config{1} << lo) - 1);
}

int check_pair(Config x, Config y, const IntegralTable& t) {
    if (std::popcount(x) != std::popcount(y))
        throw std::invalid_argument("matrix element between different particle numbers");
    const Config both = x | y;
    if (both != 0 && 64 - std::countl_zero(both) > t.n_spin_orbitals())
        throw std::invalid_argument("configuration occupies orbitals beyond the table");
    return excitation_degree(x, y);
}

} // namespace

double matrix_element(Config x, Config y, const IntegralTable& t, SignMode mode) {
    const int degree = check_pair(x, y, t);
    if (degree > 2) return 0.0;

    if (degree == 0) {
        const std::vector<int> occ = orbital_list(x);
        double v = 0.0;
        for (std::size_t i = 0; i < occ.size(); ++i) {
            v += t.one_electron(occ[i], occ[i]);
            for (std::size_t j = i + 1; j < occ.size(); ++j)
                v += t.antisymmetrized(occ[i], occ[j], occ[i], occ[j]);
        }
        return v;
    }

    if (degree == 1) {
        const int d = std::countr_zero(x & ~y) + 1; // occupied in x only
        const int u = std::countr_zero(y & ~x) + 1; // occupied in y only
        double v = t.one_electron(d, u);
        for (Config common = x & y; common; common &= common - 1)
            v += t.antisymmetrized(d, std::countr_zero(common) + 1, u, std::countr_zero(common) + 1);
        if (mode == SignMode::fermionic && (std::popcount(x & between_mask(d, u)) & 1))
            v = -v;
        return v;
    }

    // degree == 2: removed p < q, added r < s
    const std::vector<int> removed = orbital_list(x & ~y);
    const std::vector<int> added = orbital_list(y & ~x);
    double v = t.antisymmetrized(removed[0], removed[1], added[0], added[1]);
    if (mode == SignMode::fermionic) {
        // maximum-coincidence parity via sequential alignment p->r, then q->s
        int gamma = std::popcount(x & between_mask(removed[0], added[0]));
        const Config x1 = x ^ bit_of(removed[0]) ^ bit_of(added[0]);
        gamma += std::popcount(x1 & between_mask(removed[1], added[1]));
        if (gamma & 1) v = -v;
    }
    return v;
}

namespace {

// Ascending-order creation convention: moving an operator for orbital p past
// the occupied orbitals below p costs (-1) each.
bool annihilate(Config& m, int p, int& sign) {
    const Config b = bit_of(p);
    if (!(m & b)) return false;
    if (std::popcount(m & (b - 1)) & 1) sign = -sign;
    m ^= b;
    return true;
}

bool create(Config& m, int p, int& sign) {
    const Config b = bit_of(p);
    if (m & b) return false;
    if (std::popcount(m & (b - 1)) & 1) sign = -sign;
    m |= b;
    return true;
}

} // namespace

std::map<Config, double> second_quantized_column(Config y, const IntegralTable& t) {
    const int n = t.n_spin_orbitals();
    if (n > 12)
        throw cap_error("second-quantized oracle restricted to <= 12 spin orbitals, table has " +
                        std::to_string(n));

    std::map<Config, double> column;

    for (int p = 1; p <= n; ++p)
        for (int q = 1; q <= n; ++q) {
            const double h = t.one_electron(p, q);
            if (h == 0.0) continue;
            Config m = y;
            int sign = 1;
            if (!annihilate(m, q, sign)) continue;
            if (!create(m, p, sign)) continue;
            column[m] += sign * h;
        }

    for (int p = 1; p <= n; ++p)
        for (int q = 1; q <= n; ++q)
            for (int r = 1; r <= n; ++r)
                for (int s = 1; s <= n; ++s) {
                    const double v = t.two_electron(p, q, r, s);
                    if (v == 0.0) continue;
                    Config m = y;
                    int sign = 1;
                    if (!annihilate(m, r, sign)) continue;
                    if (!annihilate(m, s, sign)) continue;
                    if (!create(m, q, sign)) continue;
                    if (!create(m, p, sign)) continue;
                    column[m] += 0.5 * sign * v;
                }

    return column;
}

double second_quantized_oracle(Config x, Config y, const IntegralTable& t) {
    const auto column = second_quantized_column(y, t);
    const auto it = column.find(x);
    return it == column.end() ? 0.0 : it->second;
}

SparseCiMatrix build_ci_matrix(const SpaceParams& p, const IntegralTable& t, SignMode mode,
                               std::uint64_t dim_cap) {
    const std::uint64_t dim = dimension(p);
    if (dim > dim_cap)
        throw cap_error("dimension " + std::to_string(dim) + " exceeds cap " +
                        std::to_string(dim_cap));
    if (t.n_spin_orbitals() < p.n_orbitals)
        throw std::invalid_argument("integral table covers fewer spin orbitals than the space");

    SparseCiMatrix m{p, {}, 0.0};
    m.entries.reserve(dim * sparsity(p) / 2 + dim);
    for (Rank row = 0; row < dim; ++row) {
        const Config x = unrank(row, p);
        m.entries.push_back({row, row, matrix_element(x, x, t, mode)});
        for (int degree : {1, 2})
            for (Config y : neighbors(x, degree, p))
                if (y > x)
                    m.entries.push_back({row, rank_of(y, p), matrix_element(x, y, t, mode)});
    }
    std::sort(m.entries.begin(), m.entries.end(),
              [](const MatrixElement& a, const MatrixElement& b) {
                  return a.row != b.row ? a.row < b.row : a.col < b.col;
              });
    for (const MatrixElement& e : m.entries)
        m.max_abs = std::max(m.max_abs, std::abs(e.value));
    return m;
}

void write_triplets(std::ostream& out, const SparseCiMatrix& m) {
    out << "# " << m.params.n_orbitals << ' ' << m.params.n_electrons << ' '
        << dimension(m.params) << '\n';
    char buf[64];
    for (const MatrixElement& e : m.entries) {
        std::snprintf(buf, sizeof buf, "%llu %llu %.17g",
                      static_cast<unsigned long long>(e.row),
                      static_cast<unsigned long long>(e.col), e.value);
        out << buf << '\n';
    }
}

} // namespace cisim
