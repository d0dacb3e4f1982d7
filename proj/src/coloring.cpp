#include "cisim/coloring.hpp"

#include "cisim/errors.hpp"

#include <algorithm>
#include <bit>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace cisim {

ColorScheme scheme_from_name(const std::string& name) {
    if (name == "descriptor") return ColorScheme::descriptor;
    if (name == "pairlabel") return ColorScheme::pair_label;
    throw std::invalid_argument("unknown coloring scheme '" + name +
                                "' (expected descriptor or pairlabel)");
}

std::string scheme_name(ColorScheme s) {
    return s == ColorScheme::descriptor ? "descriptor" : "pairlabel";
}

EdgeColor EdgeColor::diagonal() { return EdgeColor{}; }

EdgeColor EdgeColor::pair(int cls, std::uint64_t e_low_high, std::uint64_t e_high_low) {
    if (cls != 1 && cls != 2) throw std::invalid_argument("pair label class must be 1 or 2");
    EdgeColor c;
    c.kind = Kind::pair_label;
    c.cls = static_cast<std::uint8_t>(cls);
    c.e_low_high = e_low_high;
    c.e_high_low = e_high_low;
    return c;
}

EdgeColor EdgeColor::single(int a, int b) {
    if (a == b || a < 1 || b < 1) throw std::invalid_argument("descriptor orbitals must be distinct positives");
    if (a > b) std::swap(a, b);
    EdgeColor c;
    c.kind = Kind::single_descriptor;
    c.orbs = {static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b), 0, 0};
    return c;
}

EdgeColor EdgeColor::pair_exchange(std::pair<int, int> one, std::pair<int, int> two) {
    if (one.first > one.second) std::swap(one.first, one.second);
    if (two.first > two.second) std::swap(two.first, two.second);
    if (one.first > two.first) std::swap(one, two);
    const int o[4] = {one.first, one.second, two.first, two.second};
    for (int a = 0; a < 4; ++a) {
        if (o[a] < 1) throw std::invalid_argument("descriptor orbitals must be positive");
        for (int b = a + 1; b < 4; ++b)
            if (o[a] == o[b]) throw std::invalid_argument("descriptor pairs must be disjoint");
    }
    EdgeColor c;
    c.kind = Kind::double_descriptor;
    c.orbs = {static_cast<std::uint8_t>(one.first), static_cast<std::uint8_t>(one.second),
              static_cast<std::uint8_t>(two.first), static_cast<std::uint8_t>(two.second)};
    return c;
}

std::string EdgeColor::to_string() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::diagonal:
            os << "diagonal";
            break;
        case Kind::pair_label:
            os << "pair(class=" << int(cls) << ",e=(" << e_low_high << ',' << e_high_low << "))";
            break;
        case Kind::single_descriptor:
            os << "single(" << int(orbs[0]) << ',' << int(orbs[1]) << ')';
            break;
        case Kind::double_descriptor:
            os << "double((" << int(orbs[0]) << ',' << int(orbs[1]) << "),(" << int(orbs[2]) << ','
               << int(orbs[3]) << "))";
            break;
    }
    return os.str();
}

namespace {

void require_edge(Config x, Config y, const char* who) {
    const int degree = excitation_degree(x, y);
    if (degree < 1 || degree > 2)
        throw std::invalid_argument(std::string(who) + ": excitation degree " +
                                    std::to_string(degree) + " is not an edge");
    if (x >= y) throw std::invalid_argument(std::string(who) + ": requires x < y");
}

// Occupied orbitals of x strictly above orbital i.
std::vector<int> occupied_above(Config x, int i) {
    std::vector<int> out;
    for (Config rest = x >> i; rest; rest &= rest - 1)
        out.push_back(std::countr_zero(rest) + i + 1);
    return out;
}

} // namespace

PairLabels pair_labels_oracle(Config x, Config y, const SpaceParams& p) {
    require_edge(x, y, "pair_labels_oracle");
    const int cls = excitation_degree(x, y);
    const std::vector<Config> nx = neighbors(x, cls, p);
    const std::vector<Config> ny = neighbors(y, cls, p);
    PairLabels l;
    l.e_xy = static_cast<std::uint64_t>(std::upper_bound(nx.begin(), nx.end(), y) - nx.begin());
    l.e_yx = static_cast<std::uint64_t>(std::upper_bound(ny.begin(), ny.end(), x) - ny.begin());
    return l;
}

FormulaLabels pair_labels_formula(Config x, Config y, const SpaceParams& p) {
    require_edge(x, y, "pair_labels_formula");
    const int cls = excitation_degree(x, y);
    FormulaLabels f;

    if (cls == 1) {
        const int d = std::countr_zero(x & ~y) + 1;
        const int u = std::countr_zero(y & ~x) + 1;
        std::uint64_t r1 = 0;
        for (int i : occupied_above(x, u)) r1 += static_cast<std::uint64_t>(n_excl(x, i));
        f.e_xy = r1 + static_cast<std::uint64_t>(n_incl(x, u)) * static_cast<std::uint64_t>(n_excl(x, u)) + 1;
        f.e_yx = r1 + static_cast<std::uint64_t>(n_excl(x, d)) + 1;
    } else {
        const std::vector<int> removed = orbital_list(x & ~y); // d_l < d_h
        const std::vector<int> added = orbital_list(y & ~x);   // u_l < u_h
        const int d_l = removed[0], d_h = removed[1];
        const int u_h = added[1];
        std::uint64_t r2 = 0;
        for (int i : occupied_above(x, u_h))
            r2 += static_cast<std::uint64_t>(n_incl(x, i)) * binomial(n_excl(x, i), 2);
        f.e_xy = r2 + binomial(n_incl(x, u_h), 2) * binomial(n_excl(x, u_h), 2) + 1;
        f.e_yx = r2 + binomial(n_excl(x, d_h), 2) + static_cast<std::uint64_t>(n_excl(x, d_l)) + 1;
    }

    const PairLabels oracle = pair_labels_oracle(x, y, p);
    f.agrees_with_oracle = (f.e_xy == oracle.e_xy && f.e_yx == oracle.e_yx);
    return f;
}

EdgeColor pair_label_color(Config x, Config y, const SpaceParams& p) {
    require_edge(x, y, "pair_label_color");
    const PairLabels l = pair_labels_oracle(x, y, p);
    return EdgeColor::pair(excitation_degree(x, y), l.e_xy, l.e_yx);
}

EdgeColor descriptor_color(Config x, Config y) {
    const int degree = excitation_degree(x, y);
    if (degree == 1) {
        const int a = std::countr_zero(x ^ y) + 1;
        const Config rest = (x ^ y) & ((x ^ y) - 1);
        const int b = std::countr_zero(rest) + 1;
        return EdgeColor::single(a, b);
    }
    if (degree == 2) {
        const std::vector<int> in_x = orbital_list(x & ~y);
        const std::vector<int> in_y = orbital_list(y & ~x);
        return EdgeColor::pair_exchange({in_x[0], in_x[1]}, {in_y[0], in_y[1]});
    }
    throw std::invalid_argument("descriptor_color: excitation degree " + std::to_string(degree) +
                                " is not an edge");
}

namespace {

Config toggle(Config x, int orbital) { return x ^ (Config{1} << (orbital - 1)); }

bool occupied(Config x, int orbital) { return (x >> (orbital - 1)) & 1; }

} // namespace

std::optional<Config> col_oracle(Config x, const EdgeColor& m, const SpaceParams& p) {
    if (!is_valid_config(x, p)) throw std::invalid_argument("col_oracle: invalid configuration");

    switch (m.kind) {
        case EdgeColor::Kind::diagonal:
            return x;

        case EdgeColor::Kind::single_descriptor: {
            const int a = m.orbs[0], b = m.orbs[1];
            if (b > p.n_orbitals) throw std::invalid_argument("descriptor orbital beyond space");
            if (occupied(x, a) == occupied(x, b)) return std::nullopt;
            return toggle(toggle(x, a), b);
        }

        case EdgeColor::Kind::double_descriptor: {
            const int a = m.orbs[0], b = m.orbs[1], c = m.orbs[2], d = m.orbs[3];
            if (std::max({a, b, c, d}) > p.n_orbitals)
                throw std::invalid_argument("descriptor orbital beyond space");
            const bool one_full = occupied(x, a) && occupied(x, b);
            const bool one_empty = !occupied(x, a) && !occupied(x, b);
            const bool two_full = occupied(x, c) && occupied(x, d);
            const bool two_empty = !occupied(x, c) && !occupied(x, d);
            if ((one_full && two_empty) || (one_empty && two_full))
                return toggle(toggle(toggle(toggle(x, a), b), c), d);
            return std::nullopt;
        }

        case EdgeColor::Kind::pair_label: {
            std::optional<Config> found;
            for (Config y : neighbors(x, m.cls, p)) {
                const Config lo = std::min(x, y), hi = std::max(x, y);
                const PairLabels l = pair_labels_oracle(lo, hi, p);
                if (l.e_xy == m.e_low_high && l.e_yx == m.e_high_low) {
                    if (found)
                        throw verification_error(
                            "color " + m.to_string() + " is not one-sparse at configuration " +
                            std::to_string(x) + ": candidates " + std::to_string(*found) + " and " +
                            std::to_string(y));
                    found = y;
                }
            }
            return found;
        }
    }
    throw std::logic_error("unreachable color kind");
}

namespace {

// Sorted class-neighbor lists for every node, indexed by rank.
struct NeighborCache {
    std::vector<Config> configs;
    std::vector<std::vector<Config>> by_class[2]; // [0]: degree 1, [1]: degree 2

    NeighborCache(const SpaceParams& p, std::uint64_t dim) {
        configs.resize(dim);
        by_class[0].resize(dim);
        by_class[1].resize(dim);
        for (Rank q = 0; q < dim; ++q) {
            configs[q] = unrank(q, p);
            by_class[0][q] = neighbors(configs[q], 1, p);
            by_class[1][q] = neighbors(configs[q], 2, p);
        }
    }

    std::uint64_t count_leq(Rank q, int cls, Config bound) const {
        const auto& v = by_class[cls - 1][q];
        return static_cast<std::uint64_t>(std::upper_bound(v.begin(), v.end(), bound) - v.begin());
    }
};

EdgeColor edge_color(const NeighborCache& cache, ColorScheme scheme, Rank q_lo, Rank q_hi,
                     int cls) {
    const Config lo = cache.configs[q_lo], hi = cache.configs[q_hi];
    if (scheme == ColorScheme::descriptor) return descriptor_color(lo, hi);
    return EdgeColor::pair(cls, cache.count_leq(q_lo, cls, hi), cache.count_leq(q_hi, cls, lo));
}

} // namespace

ColoringReport verify_properness(const SpaceParams& p, ColorScheme scheme, std::uint64_t dim_cap) {
    const std::uint64_t dim = dimension(p);
    if (dim > dim_cap)
        throw cap_error("dimension " + std::to_string(dim) + " exceeds cap " +
                        std::to_string(dim_cap));

    ColoringReport report;
    report.scheme = scheme_name(scheme);
    report.nodes = dim;

    const NeighborCache cache(p, dim);
    std::vector<EdgeColor> all_colors;
    all_colors.push_back(EdgeColor::diagonal());

    for (Rank q = 0; q < dim; ++q) {
        // (color, neighbor rank) for every incident edge
        std::vector<std::pair<EdgeColor, Rank>> incident;
        for (int cls : {1, 2})
            for (Config y : cache.by_class[cls - 1][q]) {
                const Rank qy = rank_of(y, p);
                const Rank q_lo = std::min(q, qy), q_hi = std::max(q, qy);
                incident.emplace_back(edge_color(cache, scheme, q_lo, q_hi, cls), qy);
                if (qy > q) ++report.edges;
            }
        std::sort(incident.begin(), incident.end());
        std::uint64_t distinct = incident.empty() ? 0 : 1;
        for (std::size_t i = 1; i < incident.size(); ++i) {
            if (incident[i].first == incident[i - 1].first)
                report.violations.push_back(
                    {q, incident[i].first, incident[i - 1].second, incident[i].second});
            else
                ++distinct;
        }
        report.incident_color_counts[distinct + 1] += 1; // + the diagonal color
        for (const auto& [c, qy] : incident)
            if (qy > q) all_colors.push_back(c);
    }

    std::sort(all_colors.begin(), all_colors.end());
    all_colors.erase(std::unique(all_colors.begin(), all_colors.end()), all_colors.end());
    report.total_colors = all_colors.size();

    std::sort(report.violations.begin(), report.violations.end(),
              [](const PropernessViolation& a, const PropernessViolation& b) {
                  if (a.node != b.node) return a.node < b.node;
                  return a.color < b.color;
              });

    if (scheme == ColorScheme::pair_label) {
        for (Rank q = 0; q < dim; ++q) {
            const Config x = cache.configs[q];
            for (int cls : {1, 2})
                for (Config y : cache.by_class[cls - 1][q]) {
                    if (y < x) continue;
                    const FormulaLabels f = pair_labels_formula(x, y, p);
                    if (!f.agrees_with_oracle)
                        report.formula_mismatches.push_back(
                            {x, y, {f.e_xy, f.e_yx}, pair_labels_oracle(x, y, p)});
                }
        }
    }
    return report;
}

std::vector<OneSparseTerm> decompose(const SparseCiMatrix& H, ColorScheme scheme) {
    const SpaceParams& p = H.params;
    const std::uint64_t dim = dimension(p);
    const NeighborCache cache(p, dim);

    std::map<EdgeColor, OneSparseTerm> terms;
    for (const MatrixElement& e : H.entries) {
        if (e.row > e.col || e.col >= dim)
            throw std::invalid_argument("matrix entry (" + std::to_string(e.row) + "," +
                                        std::to_string(e.col) + ") outside the upper triangle");
        if (e.row == e.col) {
            OneSparseTerm& t = terms[EdgeColor::diagonal()];
            t.color = EdgeColor::diagonal();
            t.fixed.emplace_back(e.row, e.value);
        } else {
            const Config x = cache.configs[e.row], y = cache.configs[e.col];
            const int cls = excitation_degree(x, y);
            const EdgeColor c = edge_color(cache, scheme, e.row, e.col, cls);
            OneSparseTerm& t = terms[c];
            t.color = c;
            t.pairs.emplace_back(e.row, e.col, e.value);
        }
    }

    std::vector<OneSparseTerm> out;
    out.reserve(terms.size());
    for (auto& [color, term] : terms) {
        std::vector<Rank> used;
        for (const auto& [q, v] : term.fixed) used.push_back(q);
        for (const auto& [q1, q2, v] : term.pairs) {
            used.push_back(q1);
            used.push_back(q2);
        }
        std::sort(used.begin(), used.end());
        if (std::adjacent_find(used.begin(), used.end()) != used.end())
            throw verification_error("decomposition of color " + color.to_string() +
                                     " is not one-sparse (a rank appears twice)");
        out.push_back(std::move(term));
    }
    return out;
}

void write_coloring(std::ostream& out, const SpaceParams& p, ColorScheme scheme,
                    std::uint64_t dim_cap) {
    const std::uint64_t dim = dimension(p);
    if (dim > dim_cap)
        throw cap_error("dimension " + std::to_string(dim) + " exceeds cap " +
                        std::to_string(dim_cap));
    const NeighborCache cache(p, dim);

    struct Edge {
        Rank lo, hi;
        int cls;
        EdgeColor color;
    };
    std::vector<Edge> edges;
    std::map<EdgeColor, std::uint64_t> ids;
    ids[EdgeColor::diagonal()] = 0;
    for (Rank q = 0; q < dim; ++q) {
        edges.push_back({q, q, 0, EdgeColor::diagonal()});
        for (int cls : {1, 2})
            for (Config y : cache.by_class[cls - 1][q]) {
                if (y < cache.configs[q]) continue;
                const Rank qy = rank_of(y, p);
                const EdgeColor c = edge_color(cache, scheme, q, qy, cls);
                ids.emplace(c, 0);
                edges.push_back({q, qy, cls, c});
            }
    }
    std::uint64_t next = 0;
    for (auto& [color, id] : ids) id = next++; // canonical color order

    out << "# scheme " << scheme_name(scheme) << '\n';
    for (const auto& [color, id] : ids)
        out << "# color " << id << ' ' << color.to_string() << '\n';
    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
        if (a.lo != b.lo) return a.lo < b.lo;
        return a.hi < b.hi;
    });
    for (const Edge& e : edges)
        out << e.lo << ' ' << e.hi << ' ' << e.cls << ' ' << ids[e.color] << '\n';
}

void write_report(std::ostream& out, const ColoringReport& r) {
    out << "scheme: " << r.scheme << '\n';
    out << "nodes: " << r.nodes << '\n';
    out << "edges: " << r.edges << '\n';
    out << "total_colors: " << r.total_colors << '\n';
    out << "proper: " << (r.proper() ? "true" : "false") << '\n';
    out << "violations: " << r.violations.size() << '\n';
    out << "formula_mismatches: " << r.formula_mismatches.size() << '\n';
    for (const auto& [count, nodes] : r.incident_color_counts)
        out << "nodes_with_incident_colors[" << count << "]: " << nodes << '\n';
    for (std::size_t i = 0; i < r.violations.size(); ++i) {
        const PropernessViolation& v = r.violations[i];
        out << "violation[" << i << "]: node=" << v.node << " color=" << v.color.to_string()
            << " neighbors=" << v.neighbor1 << ',' << v.neighbor2 << '\n';
    }
    for (std::size_t i = 0; i < r.formula_mismatches.size(); ++i) {
        const FormulaMismatch& m = r.formula_mismatches[i];
        out << "mismatch[" << i << "]: x=" << m.x << " y=" << m.y << " formula=(" << m.formula.e_xy
            << ',' << m.formula.e_yx << ") oracle=(" << m.oracle.e_xy << ',' << m.oracle.e_yx
            << ")\n";
    }
}

} // namespace cisim
