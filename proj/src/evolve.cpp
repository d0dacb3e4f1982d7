#include "cisim/evolve.hpp"

#include "cisim/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace cisim {

namespace {

using cplx = std::complex<double>;
constexpr cplx kImag{0.0, 1.0};

} // namespace

double StateVector::norm() const {
    double s = 0.0;
    for (const cplx& a : amp) s += std::norm(a);
    return std::sqrt(s);
}

StateVector StateVector::zero(std::size_t dim) {
    StateVector v;
    v.amp.assign(dim, cplx{0.0, 0.0});
    return v;
}

StateVector StateVector::basis(std::size_t dim, Rank q) {
    if (q >= dim) throw std::invalid_argument("basis rank outside state dimension");
    StateVector v = zero(dim);
    v.amp[q] = 1.0;
    return v;
}

void apply_one_sparse(const OneSparseTerm& term, double dt, StateVector& psi) {
    const std::size_t dim = psi.dim();
    for (const auto& [q, v] : term.fixed) {
        if (q >= dim) throw std::invalid_argument("term rank outside state dimension");
        psi.amp[q] *= std::exp(-kImag * v * dt);
    }
    for (const auto& [q1, q2, h] : term.pairs) {
        if (q1 >= dim || q2 >= dim)
            throw std::invalid_argument("term rank outside state dimension");
        const double mag = std::abs(h);
        if (mag == 0.0) continue;
        const double sign = h < 0 ? -1.0 : 1.0; // e^{i pi s}
        const double c = std::cos(mag * dt);
        const cplx off = -kImag * sign * std::sin(mag * dt);
        const cplx a = psi.amp[q1], b = psi.amp[q2];
        psi.amp[q1] = c * a + off * b;
        psi.amp[q2] = off * a + c * b;
    }
}

double TwoByTwoUnitary::unitarity_defect() const {
    // U^H U - I
    double worst = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            cplx s = std::conj(m[i]) * m[j] + std::conj(m[2 + i]) * m[2 + j];
            if (i == j) s -= 1.0;
            worst = std::max(worst, std::abs(s));
        }
    return worst;
}

namespace {

TwoByTwoUnitary multiply(const TwoByTwoUnitary& a, const TwoByTwoUnitary& b) {
    TwoByTwoUnitary r;
    r.m[0] = a.m[0] * b.m[0] + a.m[1] * b.m[2];
    r.m[1] = a.m[0] * b.m[1] + a.m[1] * b.m[3];
    r.m[2] = a.m[2] * b.m[0] + a.m[3] * b.m[2];
    r.m[3] = a.m[2] * b.m[1] + a.m[3] * b.m[3];
    return r;
}

TwoByTwoUnitary rot_z(double theta) {
    TwoByTwoUnitary r;
    r.m[0] = std::exp(-kImag * theta / 2.0);
    r.m[3] = std::exp(kImag * theta / 2.0);
    return r;
}

TwoByTwoUnitary rot_y(double theta) {
    TwoByTwoUnitary r;
    const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
    r.m[0] = c;
    r.m[1] = -s;
    r.m[2] = s;
    r.m[3] = c;
    return r;
}

} // namespace

TwoByTwoUnitary pair_block(double h, double dt) {
    const double mag = std::abs(h);
    const double sign = h < 0 ? -1.0 : 1.0;
    TwoByTwoUnitary r;
    r.m[0] = r.m[3] = std::cos(mag * dt);
    r.m[1] = r.m[2] = -kImag * sign * std::sin(mag * dt);
    return r;
}

TwoByTwoUnitary rotation_sequence(double h_abs, int s, double dt) {
    if (h_abs < 0) throw std::invalid_argument("rotation_sequence: |h| must be nonnegative");
    if (s != 0 && s != 1) throw std::invalid_argument("rotation_sequence: s must be 0 or 1");
    const double pi = std::acos(-1.0);
    TwoByTwoUnitary u = rot_z(-pi / 2.0);
    u = multiply(u, rot_z(-pi * s));
    u = multiply(u, rot_y(2.0 * h_abs * dt));
    u = multiply(u, rot_z(pi * s));
    u = multiply(u, rot_z(pi / 2.0));
    return u;
}

double distance_up_to_phase(const TwoByTwoUnitary& u, const TwoByTwoUnitary& v) {
    std::size_t k = 0;
    for (std::size_t i = 1; i < 4; ++i)
        if (std::abs(v.m[i]) > std::abs(v.m[k])) k = i;
    if (std::abs(v.m[k]) == 0.0) throw std::invalid_argument("zero matrix has no phase");
    const cplx phase = u.m[k] / v.m[k];
    double worst = 0.0;
    for (std::size_t i = 0; i < 4; ++i) worst = std::max(worst, std::abs(u.m[i] - phase * v.m[i]));
    return worst;
}

double suzuki_coefficient(int level) {
    if (level < 2) throw std::invalid_argument("suzuki_coefficient: level must be >= 2");
    return 1.0 / (4.0 - std::pow(4.0, 1.0 / (2.0 * level - 1.0)));
}

void apply_trotter_step(const std::vector<OneSparseTerm>& terms, double dt, int order,
                        StateVector& psi) {
    if (order == 1) {
        for (const OneSparseTerm& t : terms) apply_one_sparse(t, dt, psi);
        return;
    }
    if (order == 2) {
        for (const OneSparseTerm& t : terms) apply_one_sparse(t, dt / 2.0, psi);
        for (auto it = terms.rbegin(); it != terms.rend(); ++it)
            apply_one_sparse(*it, dt / 2.0, psi);
        return;
    }
    if (order < 1 || order % 2 != 0)
        throw std::invalid_argument("trotter order must be 1 or an even integer");
    const double s = suzuki_coefficient(order / 2);
    apply_trotter_step(terms, s * dt, order - 2, psi);
    apply_trotter_step(terms, s * dt, order - 2, psi);
    apply_trotter_step(terms, (1.0 - 4.0 * s) * dt, order - 2, psi);
    apply_trotter_step(terms, s * dt, order - 2, psi);
    apply_trotter_step(terms, s * dt, order - 2, psi);
}

EvolutionResult evolve(const std::vector<OneSparseTerm>& terms, double t, std::uint64_t steps,
                       int order, const StateVector& psi0) {
    if (steps < 1) throw std::invalid_argument("evolve: steps must be >= 1");
    EvolutionResult r{psi0, 0.0};
    const double dt = t / static_cast<double>(steps);
    for (std::uint64_t k = 0; k < steps; ++k) {
        apply_trotter_step(terms, dt, order, r.state);
        r.norm_drift = std::max(r.norm_drift, std::abs(r.state.norm() - 1.0));
    }
    return r;
}

StateVector exact_reference(const SparseCiMatrix& H, double t, const StateVector& psi0,
                            std::size_t dense_cap) {
    const std::uint64_t dim = dimension(H.params);
    if (dim > dense_cap)
        throw cap_error("dimension " + std::to_string(dim) + " exceeds dense reference cap " +
                        std::to_string(dense_cap));
    if (psi0.dim() != dim) throw std::invalid_argument("state dimension mismatch");

    const auto n = static_cast<Eigen::Index>(dim);
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
    for (const MatrixElement& e : H.entries) {
        if (e.row >= dim || e.col >= dim)
            throw std::invalid_argument("matrix entry outside the dimension");
        h(static_cast<Eigen::Index>(e.row), static_cast<Eigen::Index>(e.col)) = e.value;
        h(static_cast<Eigen::Index>(e.col), static_cast<Eigen::Index>(e.row)) = e.value;
    }

    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
    if (solver.info() != Eigen::Success)
        throw verification_error("eigendecomposition failed to converge");
    const Eigen::MatrixXd& vec = solver.eigenvectors();
    const Eigen::VectorXd& val = solver.eigenvalues();
    const double residual =
        (h * vec - vec * val.asDiagonal()).cwiseAbs().maxCoeff();
    if (residual >= 1e-10)
        throw verification_error("eigendecomposition residual " + std::to_string(residual) +
                                 " above 1e-10");

    Eigen::VectorXcd psi(n);
    for (Eigen::Index i = 0; i < n; ++i) psi(i) = psi0.amp[static_cast<std::size_t>(i)];
    const Eigen::VectorXcd modal = vec.transpose() * psi;
    Eigen::VectorXcd phased(n);
    for (Eigen::Index i = 0; i < n; ++i) phased(i) = std::exp(-kImag * val(i) * t) * modal(i);
    const Eigen::VectorXcd out = vec * phased;

    StateVector result = StateVector::zero(dim);
    for (Eigen::Index i = 0; i < n; ++i) result.amp[static_cast<std::size_t>(i)] = out(i);
    return result;
}

double fidelity(const StateVector& a, const StateVector& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("fidelity: dimension mismatch");
    cplx s{0.0, 0.0};
    for (std::size_t i = 0; i < a.dim(); ++i) s += std::conj(a.amp[i]) * b.amp[i];
    return std::abs(s);
}

void write_state(std::ostream& out, const StateVector& psi) {
    char buf[96];
    for (std::size_t q = 0; q < psi.dim(); ++q) {
        std::snprintf(buf, sizeof buf, "%zu %.17g %.17g", q, psi.amp[q].real(), psi.amp[q].imag());
        out << buf << '\n';
    }
}

StateVector read_state(std::istream& in, std::size_t expected_dim) {
    StateVector psi = StateVector::zero(expected_dim);
    std::vector<bool> seen(expected_dim, false);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
        std::istringstream ss(line);
        std::size_t q;
        double re, im;
        if (!(ss >> q >> re >> im)) throw parse_error(lineno, "expected `q re im`");
        if (q >= expected_dim)
            throw parse_error(lineno, "rank " + std::to_string(q) + " outside dimension " +
                                          std::to_string(expected_dim));
        if (seen[q]) throw parse_error(lineno, "duplicate rank " + std::to_string(q));
        seen[q] = true;
        psi.amp[q] = cplx{re, im};
    }
    return psi;
}

} // namespace cisim
