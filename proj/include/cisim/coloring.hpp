#pragma once

#include "cisim/config_space.hpp"
#include "cisim/slater.hpp"

#include <array>
#include <compare>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cisim {

enum class ColorScheme { descriptor, pair_label };

ColorScheme scheme_from_name(const std::string& name);
std::string scheme_name(ColorScheme s);

/// An edge color of the interaction graph. Either the shared diagonal color,
/// a ranked label pair (i, j) within an excitation class, or the orbital
/// exchange descriptor of the edge (which orbitals flip occupancy).
struct EdgeColor {
    enum class Kind : std::uint8_t { diagonal, pair_label, single_descriptor, double_descriptor };

    // Field order fixes the canonical color ordering: diagonal first, then
    // label pairs by (class, i, j), then descriptors by orbital tuple.
    Kind kind = Kind::diagonal;
    std::uint8_t cls = 0;                // pair_label: excitation class 1 or 2
    std::uint64_t e_low_high = 0;        // pair_label: label read from the lower node
    std::uint64_t e_high_low = 0;        // pair_label: label read from the higher node
    std::array<std::uint8_t, 4> orbs{};  // descriptors: exchanged orbitals

    friend auto operator<=>(const EdgeColor&, const EdgeColor&) = default;

    static EdgeColor diagonal();
    static EdgeColor pair(int cls, std::uint64_t e_low_high, std::uint64_t e_high_low);
    static EdgeColor single(int a, int b);
    static EdgeColor pair_exchange(std::pair<int, int> one, std::pair<int, int> two);

    std::string to_string() const;
};

/// Ranked labels of an edge (x, y), x < y: e_xy counts the class-neighbors of
/// x that are <= y, e_yx the class-neighbors of y that are <= x.
struct PairLabels {
    std::uint64_t e_xy = 0;
    std::uint64_t e_yx = 0;
    friend bool operator==(const PairLabels&, const PairLabels&) = default;
};

/// Counting definition, by exhaustive neighbor enumeration. Normative.
PairLabels pair_labels_oracle(Config x, Config y, const SpaceParams& p);

struct FormulaLabels {
    std::uint64_t e_xy = 0;
    std::uint64_t e_yx = 0;
    bool agrees_with_oracle = false;
};

/// Closed-form label evaluation from the per-orbital counting sums (R1/R2
/// plus boundary terms). Kept verbatim as a cross-check of the counting
/// definition; disagreements are reported, never silently consumed.
FormulaLabels pair_labels_formula(Config x, Config y, const SpaceParams& p);

/// Color of edge (x, y), x < y, using the oracle label pair.
EdgeColor pair_label_color(Config x, Config y, const SpaceParams& p);

/// Color of edge (x, y) by exchanged orbital values; symmetric in (x, y).
EdgeColor descriptor_color(Config x, Config y);

/// The unique y such that edge (x, y) carries color m, x itself for the
/// diagonal color, or nullopt when no such edge exists. Throws
/// verification_error if two candidates exist (improper coloring).
std::optional<Config> col_oracle(Config x, const EdgeColor& m, const SpaceParams& p);

struct PropernessViolation {
    Rank node;
    EdgeColor color;
    Rank neighbor1;
    Rank neighbor2;
};

struct FormulaMismatch {
    Config x;
    Config y;
    PairLabels formula;
    PairLabels oracle;
};

struct ColoringReport {
    std::string scheme;
    std::uint64_t nodes = 0;
    std::uint64_t edges = 0;
    std::uint64_t total_colors = 0; // distinct colors incl. diagonal
    // distinct incident colors (incl. diagonal) -> number of nodes
    std::map<std::uint64_t, std::uint64_t> incident_color_counts;
    std::vector<PropernessViolation> violations;       // sorted by (node, color)
    std::vector<FormulaMismatch> formula_mismatches;   // pair-label scheme only

    bool proper() const { return violations.empty(); }
};

/// Exhaustively check that no node has two incident edges of equal color.
/// The per-node scan covers edges sharing the lower, middle, or upper node,
/// which includes the trio case (x,y),(y,z) for x < y < z. For the
/// pair-label scheme every edge's closed-form labels are also compared
/// against the counting oracle and mismatches reported.
ColoringReport verify_properness(const SpaceParams& p, ColorScheme scheme,
                                 std::uint64_t dim_cap = kDefaultDimensionCap);

/// One color class of the decomposition: disjoint index pairs with values,
/// or (for the diagonal color) fixed points with values.
struct OneSparseTerm {
    EdgeColor color;
    std::vector<std::pair<Rank, double>> fixed;
    std::vector<std::tuple<Rank, Rank, double>> pairs; // q1 < q2
};

/// Partition the structural entries of H into one-sparse terms by edge
/// color. Sum over terms reproduces H entrywise exactly. Colors without
/// structural support are dropped. Throws verification_error if any color
/// class re-uses a rank (the coloring was not proper).
std::vector<OneSparseTerm> decompose(const SparseCiMatrix& H, ColorScheme scheme);

/// Edge list `q_low q_high class color_id` with a legend mapping color ids.
void write_coloring(std::ostream& out, const SpaceParams& p, ColorScheme scheme,
                    std::uint64_t dim_cap = kDefaultDimensionCap);

/// Key/value serialization of a report.
void write_report(std::ostream& out, const ColoringReport& r);

} // namespace cisim
