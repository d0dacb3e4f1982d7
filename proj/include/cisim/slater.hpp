#pragma once

#include "cisim/config_space.hpp"
#include "cisim/integrals.hpp"

#include <iosfwd>
#include <map>
#include <vector>

namespace cisim {

/// `fermionic` multiplies off-diagonal elements by the maximum-coincidence
/// permutation parity (-1)^gamma; `plain` applies the case rules verbatim
/// with no parity factor. Both give real Hermitian matrices.
enum class SignMode { fermionic, plain };

SignMode sign_mode_from_name(const std::string& name);

/// Number of occupied orbitals by which x and y differ (0 means x == y).
int excitation_degree(Config x, Config y);

/// Interaction matrix element <x|H|y> by the excitation-degree case rules.
/// Degree 0: sum of h plus pairwise antisymmetrized terms; degree 1 and 2:
/// the corresponding one- and two-body combinations (times parity in
/// fermionic mode); degree > 2: exactly zero.
double matrix_element(Config x, Config y, const IntegralTable& t, SignMode mode);

/// Brute-force <x|H|y> by explicit second-quantized algebra: applies
/// sum h_pq a+_p a_q + 1/2 sum <pq|rs> a+_p a+_q a_s a_r to the occupancy
/// bitmask of y with sign tracking. Ground truth for `fermionic` mode.
/// Refuses tables above 12 spin orbitals.
double second_quantized_oracle(Config x, Config y, const IntegralTable& t);

/// Full column H|y> of the second-quantized operator, as bitmask -> value.
std::map<Config, double> second_quantized_column(Config y, const IntegralTable& t);

struct MatrixElement {
    Rank row;
    Rank col; // row <= col
    double value;
};

/// Upper triangle (plus diagonal) of the interaction matrix in triplet form.
/// Every structurally-allowed entry (excitation degree <= 2) is present,
/// value zero or not, so the triplet pattern is the sparsity structure.
struct SparseCiMatrix {
    SpaceParams params;
    std::vector<MatrixElement> entries; // sorted by (row, col)
    double max_abs = 0.0;
};

inline constexpr std::uint64_t kDefaultDimensionCap = 20000;

SparseCiMatrix build_ci_matrix(const SpaceParams& p, const IntegralTable& t, SignMode mode,
                               std::uint64_t dim_cap = kDefaultDimensionCap);

/// Triplet text: a `# n_o n_e dimension` header line, then
/// `q_row q_col value` per entry with 17 significant digits.
void write_triplets(std::ostream& out, const SparseCiMatrix& m);

} // namespace cisim
