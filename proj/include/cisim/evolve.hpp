#pragma once

#include "cisim/coloring.hpp"
#include "cisim/slater.hpp"

#include <array>
#include <complex>
#include <cstdint>
#include <iosfwd>
#include <vector>

namespace cisim {

/// Complex amplitudes indexed by configuration rank.
struct StateVector {
    std::vector<std::complex<double>> amp;

    std::size_t dim() const { return amp.size(); }
    double norm() const;

    static StateVector zero(std::size_t dim);
    static StateVector basis(std::size_t dim, Rank q);
};

/// Apply exp(-i H_m dt) for a one-sparse term in place. Diagonal entries
/// phase their amplitude; each index pair (q1, q2, h) gets the 2x2 block
/// [[cos(|h|dt), -i e^{i pi s} sin(|h|dt)], [-i e^{-i pi s} sin(|h|dt), cos(|h|dt)]]
/// where h = e^{i pi s}|h|, s in {0,1}. Untouched ranks are unchanged.
void apply_one_sparse(const OneSparseTerm& term, double dt, StateVector& psi);

struct TwoByTwoUnitary {
    // row-major: m[0] m[1] / m[2] m[3]
    std::array<std::complex<double>, 4> m{};

    /// max |(U^H U - I)_jk|
    double unitarity_defect() const;
};

/// The closed-form 2x2 block applied by apply_one_sparse for element h.
TwoByTwoUnitary pair_block(double h, double dt);

/// Five-factor rotation product
/// Rz(-pi/2) Rz(-pi s) Ry(2|h|dt) Rz(pi s) Rz(pi/2), with R_a(t) = exp(-i t sigma_a / 2).
/// Equals pair_block up to a global phase; kept for cross-validation.
TwoByTwoUnitary rotation_sequence(double h_abs, int s, double dt);

/// max |U - e^{i phi} V| over entries, with phi chosen from the largest entry of V.
double distance_up_to_phase(const TwoByTwoUnitary& u, const TwoByTwoUnitary& v);

/// Splitting weight for the order-2k recursion: 1 / (4 - 4^{1/(2k-1)}), k >= 2.
double suzuki_coefficient(int level);

/// One composite step: order 1 applies the terms left to right; order 2 is
/// the symmetric half-step sweep (forward then reversed); order 2k recurses
/// with the five-factor splitting on the order 2k-2 step.
void apply_trotter_step(const std::vector<OneSparseTerm>& terms, double dt, int order,
                        StateVector& psi);

struct EvolutionResult {
    StateVector state;
    double norm_drift = 0.0; // max |norm - 1| observed after any step
};

EvolutionResult evolve(const std::vector<OneSparseTerm>& terms, double t, std::uint64_t steps,
                       int order, const StateVector& psi0);

inline constexpr std::size_t kDefaultDenseCap = 512;

/// exp(-i H t) psi0 through a dense Hermitian eigendecomposition, with the
/// residual ||H V - V Lambda||_max checked below 1e-10.
StateVector exact_reference(const SparseCiMatrix& H, double t, const StateVector& psi0,
                            std::size_t dense_cap = kDefaultDenseCap);

/// |<a|b>|
double fidelity(const StateVector& a, const StateVector& b);

/// Text lines `q re im`, 17 significant digits.
void write_state(std::ostream& out, const StateVector& psi);
StateVector read_state(std::istream& in, std::size_t expected_dim);

} // namespace cisim
