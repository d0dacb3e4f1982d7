#include "cisim/integrals.hpp"

#include "cisim/errors.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <random>
#include <regex>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace cisim {

int spin_orbital(int spatial, Spin s) {
    return 2 * spatial - (s == Spin::alpha ? 1 : 0);
}

int spatial_of(int so) { return (so + 1) / 2; }

Spin spin_of(int so) { return (so % 2 == 1) ? Spin::alpha : Spin::beta; }

bool same_spin(int p, int q) { return (p % 2) == (q % 2); }

namespace {

std::uint32_t one_body_key(int p, int q) {
    if (p > q) std::swap(p, q);
    return static_cast<std::uint32_t>(p) << 8 | static_cast<std::uint32_t>(q);
}

// Canonical representative of a chemist quadruple (ij|kl) under the
// real-orbital 8-fold group: descending within each pair, larger pair first.
std::uint64_t chemist_key(int i, int j, int k, int l) {
    int a = std::max(i, j), b = std::min(i, j);
    int c = std::max(k, l), d = std::min(k, l);
    if (a < c || (a == c && b < d)) {
        std::swap(a, c);
        std::swap(b, d);
    }
    return static_cast<std::uint64_t>(a) << 24 | static_cast<std::uint64_t>(b) << 16 |
           static_cast<std::uint64_t>(c) << 8 | static_cast<std::uint64_t>(d);
}

} // namespace

IntegralTable::IntegralTable(int n_spin_orbitals) : n_so_(n_spin_orbitals) {
    if (n_so_ < 1 || n_so_ > 126)
        throw std::invalid_argument("IntegralTable: n_spin_orbitals must be in [1, 126]");
}

void IntegralTable::check_index(int p) const {
    if (p < 1 || p > n_so_)
        throw std::out_of_range("spin-orbital index " + std::to_string(p) +
                                " outside [1, " + std::to_string(n_so_) + "]");
}

double IntegralTable::one_electron(int p, int q) const {
    check_index(p);
    check_index(q);
    if (!same_spin(p, q)) return 0.0;
    const auto it = one_body_.find(one_body_key(p, q));
    return it == one_body_.end() ? 0.0 : it->second;
}

double IntegralTable::two_electron(int p, int q, int r, int s) const {
    check_index(p);
    check_index(q);
    check_index(r);
    check_index(s);
    if (!same_spin(p, r) || !same_spin(q, s)) return 0.0;
    // physicist <pq|rs> = chemist (pr|qs)
    const auto it = two_body_.find(chemist_key(p, r, q, s));
    return it == two_body_.end() ? 0.0 : it->second;
}

double IntegralTable::antisymmetrized(int p, int q, int r, int s) const {
    return two_electron(p, q, r, s) - two_electron(p, q, s, r);
}

bool IntegralTable::set_one_electron(int p, int q, double v, double tol) {
    check_index(p);
    check_index(q);
    if (!same_spin(p, q))
        throw std::invalid_argument("one-electron entry across spin channels is identically zero");
    const auto [it, inserted] = one_body_.emplace(one_body_key(p, q), v);
    if (!inserted && std::abs(it->second - v) > tol) return false;
    return true;
}

bool IntegralTable::set_two_electron_chemist(int i, int j, int k, int l, double v, double tol) {
    check_index(i);
    check_index(j);
    check_index(k);
    check_index(l);
    if (!same_spin(i, j) || !same_spin(k, l))
        throw std::invalid_argument("chemist pair couples spin channels; entry is identically zero");
    const auto [it, inserted] = two_body_.emplace(chemist_key(i, j, k, l), v);
    if (!inserted && std::abs(it->second - v) > tol) return false;
    return true;
}

void IntegralTable::audit() const {
    for (const auto& [key, v] : one_body_) {
        const int p = static_cast<int>(key >> 8);
        const int q = static_cast<int>(key & 0xff);
        if (p < 1 || q < p || q > n_so_)
            throw verification_error("one-body key out of canonical range");
        if (!same_spin(p, q))
            throw verification_error("stored one-body entry couples spin channels");
        if (one_electron(p, q) != v || one_electron(q, p) != v)
            throw verification_error("one-body symmetry lookup mismatch");
    }
    for (const auto& [key, v] : two_body_) {
        const int a = static_cast<int>(key >> 24 & 0xff);
        const int b = static_cast<int>(key >> 16 & 0xff);
        const int c = static_cast<int>(key >> 8 & 0xff);
        const int d = static_cast<int>(key & 0xff);
        if (a < b || c < d || a < c || (a == c && b < d))
            throw verification_error("two-body key not canonical");
        if (a > n_so_ || c > n_so_ || b < 1 || d < 1)
            throw verification_error("two-body key out of range");
        if (!same_spin(a, b) || !same_spin(c, d))
            throw verification_error("stored two-body entry couples spin channels");
        // all eight physicist images of chemist (ab|cd) must read back exactly
        const int quads[8][4] = {{a, c, b, d}, {b, c, a, d}, {a, d, b, c}, {b, d, a, c},
                                 {c, a, d, b}, {d, a, c, b}, {c, b, d, a}, {d, b, c, a}};
        for (const auto& t : quads)
            if (two_electron(t[0], t[1], t[2], t[3]) != v)
                throw verification_error("two-body symmetry lookup mismatch");
    }
}

namespace {

bool is_blank(const std::string& s) {
    return s.find_first_not_of(" \t\r\n") == std::string::npos;
}

bool is_header_end(const std::string& s) {
    std::string t;
    for (char ch : s)
        if (!std::isspace(static_cast<unsigned char>(ch))) t += static_cast<char>(std::toupper(ch));
    return t == "/" || t == "&END" || t == "$END" ||
           (t.size() >= 4 && t.substr(t.size() - 4) == "&END") ||
           (!t.empty() && t.back() == '/');
}

int header_int(const std::string& header, const std::string& key, std::size_t line) {
    const std::regex re(key + R"(\s*=\s*(-?[0-9]+))", std::regex::icase);
    std::smatch m;
    if (!std::regex_search(header, m, re))
        throw parse_error(line, "header missing " + key);
    return std::stoi(m[1]);
}

// Fortran floats may carry D exponents.
double parse_value(std::string tok, std::size_t line) {
    for (char& ch : tok)
        if (ch == 'D' || ch == 'd') ch = 'E';
    std::size_t pos = 0;
    double v = 0;
    try {
        v = std::stod(tok, &pos);
    } catch (const std::exception&) {
        throw parse_error(line, "non-numeric value field '" + tok + "'");
    }
    if (pos != tok.size()) throw parse_error(line, "non-numeric value field '" + tok + "'");
    return v;
}

int parse_index(const std::string& tok, std::size_t line) {
    std::size_t pos = 0;
    int v = 0;
    try {
        v = std::stoi(tok, &pos);
    } catch (const std::exception&) {
        throw parse_error(line, "non-numeric index field '" + tok + "'");
    }
    if (pos != tok.size()) throw parse_error(line, "non-numeric index field '" + tok + "'");
    return v;
}

} // namespace

FcidumpResult parse_fcidump(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;

    std::string header;
    bool header_done = false;
    while (!header_done) {
        if (!std::getline(in, line))
            throw parse_error(lineno, "unterminated header (no &END or / sentinel)");
        ++lineno;
        if (is_blank(line)) continue;
        header += line;
        header += ' ';
        if (is_header_end(line)) header_done = true;
    }

    const int norb = header_int(header, "NORB", lineno);
    const int nelec = header_int(header, "NELEC", lineno);
    const int ms2 = header_int(header, "MS2", lineno);
    (void)ms2; // required in the header but not used for space construction
    if (norb < 1 || norb > 63) throw parse_error(lineno, "NORB outside [1, 63]");
    if (nelec < 0 || nelec > 2 * norb) throw parse_error(lineno, "NELEC outside [0, 2*NORB]");

    IntegralTable table(2 * norb);
    bool core_seen = false;

    while (std::getline(in, line)) {
        ++lineno;
        if (is_blank(line)) continue;
        std::istringstream ss(line);
        std::vector<std::string> tok;
        for (std::string t; ss >> t;) tok.push_back(t);
        if (tok.size() != 5)
            throw parse_error(lineno, "expected `value i j k l`, got " +
                                          std::to_string(tok.size()) + " fields");
        const double v = parse_value(tok[0], lineno);
        int idx[4];
        for (int n = 0; n < 4; ++n) {
            idx[n] = parse_index(tok[n + 1], lineno);
            if (idx[n] < 0 || idx[n] > norb)
                throw parse_error(lineno, "orbital index " + std::to_string(idx[n]) +
                                              " outside [0, NORB=" + std::to_string(norb) + "]");
        }
        const auto [i, j, k, l] = std::tuple{idx[0], idx[1], idx[2], idx[3]};

        if (i == 0 && j == 0 && k == 0 && l == 0) {
            if (core_seen && std::abs(table.core_energy() - v) > IntegralTable::kConflictTol)
                throw parse_error(lineno, "conflicting core energy values");
            table.set_core_energy(v);
            core_seen = true;
        } else if (i > 0 && j > 0 && k == 0 && l == 0) {
            for (Spin s : {Spin::alpha, Spin::beta})
                if (!table.set_one_electron(spin_orbital(i, s), spin_orbital(j, s), v))
                    throw parse_error(lineno, "conflicting duplicate one-body entry (" +
                                                  std::to_string(i) + "," + std::to_string(j) + ")");
        } else if (i > 0 && j > 0 && k > 0 && l > 0) {
            for (Spin s1 : {Spin::alpha, Spin::beta})
                for (Spin s2 : {Spin::alpha, Spin::beta})
                    if (!table.set_two_electron_chemist(spin_orbital(i, s1), spin_orbital(j, s1),
                                                        spin_orbital(k, s2), spin_orbital(l, s2), v))
                        throw parse_error(lineno, "conflicting duplicate two-body entry (" +
                                                      std::to_string(i) + "," + std::to_string(j) + "|" +
                                                      std::to_string(k) + "," + std::to_string(l) + ")");
        } else {
            throw parse_error(lineno, "unsupported index pattern " + std::to_string(i) + " " +
                                          std::to_string(j) + " " + std::to_string(k) + " " +
                                          std::to_string(l));
        }
    }

    return FcidumpResult{std::move(table), nelec, ms2};
}

namespace {

// Deterministic uniform draw in [-1, 1); independent of library distributions.
double uniform_pm1(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0;
}

bool chemist_canonical_spatial(int i, int j, int k, int l) {
    return i >= j && k >= l && (i > k || (i == k && j >= l));
}

} // namespace

IntegralTable synthetic_table(SyntheticKind kind, std::uint64_t seed, int n_so) {
    if (n_so < 2 || n_so % 2 != 0)
        throw std::invalid_argument("synthetic_table: n_so must be even and >= 2");
    IntegralTable table(n_so);

    if (kind == SyntheticKind::diagonal_one_body) {
        for (int p = 1; p <= n_so; ++p)
            table.set_one_electron(p, p, static_cast<double>(p));
        return table;
    }

    const int n_sp = n_so / 2;
    std::mt19937_64 rng(seed);
    for (int i = 1; i <= n_sp; ++i)
        for (int j = i; j <= n_sp; ++j) {
            const double v = uniform_pm1(rng);
            for (Spin s : {Spin::alpha, Spin::beta})
                table.set_one_electron(spin_orbital(i, s), spin_orbital(j, s), v);
        }
    for (int i = 1; i <= n_sp; ++i)
        for (int j = 1; j <= n_sp; ++j)
            for (int k = 1; k <= n_sp; ++k)
                for (int l = 1; l <= n_sp; ++l) {
                    if (!chemist_canonical_spatial(i, j, k, l)) continue;
                    const double v = uniform_pm1(rng);
                    for (Spin s1 : {Spin::alpha, Spin::beta})
                        for (Spin s2 : {Spin::alpha, Spin::beta})
                            table.set_two_electron_chemist(spin_orbital(i, s1), spin_orbital(j, s1),
                                                           spin_orbital(k, s2), spin_orbital(l, s2), v);
                }
    return table;
}

SyntheticKind synthetic_kind_from_name(const std::string& name) {
    if (name == "diagonal") return SyntheticKind::diagonal_one_body;
    if (name == "random") return SyntheticKind::random_symmetric;
    throw std::invalid_argument("unknown synthetic table kind '" + name +
                                "' (expected diagonal or random)");
}

} // namespace cisim
