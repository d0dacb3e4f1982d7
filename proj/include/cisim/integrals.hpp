#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>

namespace cisim {

enum class Spin { alpha, beta };

/// Interleaved spin-orbital numbering: spatial orbital i (1-based) maps to
/// spin orbitals 2i-1 (alpha) and 2i (beta).
int spin_orbital(int spatial, Spin s);
int spatial_of(int so);
Spin spin_of(int so);
bool same_spin(int p, int q);

/// One- and two-electron integrals over spin orbitals, in Hartree.
///
/// Two-electron values use physicist convention <pq|rs> (bra electron 1 = p,
/// bra electron 2 = q, ket electron 1 = r, ket electron 2 = s). Storage is
/// sparse, keyed by the canonical representative of the real-orbital 8-fold
/// symmetry group; unset entries read as zero. Entries coupling mismatched
/// spin channels are identically zero and cannot be stored.
class IntegralTable {
  public:
    explicit IntegralTable(int n_spin_orbitals);

    int n_spin_orbitals() const { return n_so_; }
    double core_energy() const { return core_; }
    void set_core_energy(double e) { core_ = e; }

    /// h_pq; symmetric in (p, q), zero across spin channels.
    double one_electron(int p, int q) const;

    /// <pq|rs>, honoring symmetry and spin selection; unset entries are 0.
    double two_electron(int p, int q, int r, int s) const;

    /// <pq|rs> - <pq|sr>.
    double antisymmetrized(int p, int q, int r, int s) const;

    /// Store h_pq. Returns false if a conflicting value (difference beyond
    /// `tol`) was already present; the stored value is left unchanged then.
    bool set_one_electron(int p, int q, double v, double tol = kConflictTol);

    /// Store a two-electron value given in chemist convention (ij|kl) over
    /// spin orbitals (i,j share electron 1, k,l electron 2). Spin channels
    /// must match within each electron pair.
    bool set_two_electron_chemist(int i, int j, int k, int l, double v,
                                  double tol = kConflictTol);

    /// Re-derive every stored entry through the public accessors and check
    /// range, spin selection, and canonical keying. Throws verification_error.
    void audit() const;

    std::size_t stored_one_body() const { return one_body_.size(); }
    std::size_t stored_two_body() const { return two_body_.size(); }

    static constexpr double kConflictTol = 1e-12;

  private:
    int n_so_;
    double core_ = 0.0;
    std::map<std::uint32_t, double> one_body_;  // key: canonical (p <= q)
    std::map<std::uint64_t, double> two_body_;  // key: canonical chemist quadruple

    void check_index(int p) const;
};

/// Header fields and table parsed from an FCIDUMP-style stream. NORB spatial
/// orbitals expand to 2*NORB spin orbitals.
struct FcidumpResult {
    IntegralTable table;
    int n_electrons;
    int ms2;
};

/// Parse the FCIDUMP text convention: a header naming NORB, NELEC, MS2
/// (terminated by &END or /), then lines `value i j k l` with spatial-orbital
/// chemist two-body entries, `value i j 0 0` one-body entries, and
/// `value 0 0 0 0` the core energy. Throws parse_error with line numbers.
FcidumpResult parse_fcidump(std::istream& in);

enum class SyntheticKind { diagonal_one_body, random_symmetric };

/// Deterministic test fixtures. `diagonal_one_body` sets h_pp = p and nothing
/// else; `random_symmetric` fills spatial integrals uniformly in [-1, 1) from
/// the seed and expands them over spin channels, so every table invariant
/// holds by construction.
IntegralTable synthetic_table(SyntheticKind kind, std::uint64_t seed, int n_so);

SyntheticKind synthetic_kind_from_name(const std::string& name);

} // namespace cisim
