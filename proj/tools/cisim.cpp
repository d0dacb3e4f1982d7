// Command-line driver: inspect configuration spaces, build and export
// interaction matrices, validate edge colorings, and run product-formula
// time evolution against the dense reference.

#include "cisim/coloring.hpp"
#include "cisim/config_space.hpp"
#include "cisim/errors.hpp"
#include "cisim/evolve.hpp"
#include "cisim/integrals.hpp"
#include "cisim/slater.hpp"
#include "cisim/version.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitCap = 3;
constexpr int kExitVerification = 4;

struct Options {
    int orbitals = 0;  // spin orbitals; 0 = take from FCIDUMP header
    int electrons = -1;
    std::string fcidump;
    std::string synthetic;
    std::uint64_t seed = 0;
    std::string scheme = "descriptor";
    std::string sign_mode = "fermionic";
    std::string format = "triplet";
    std::string output;
    std::string initial;
    std::string state_file;
    double time = 0.0;
    std::uint64_t steps = 1;
    int order = 1;
    std::uint64_t cap = cisim::kDefaultDimensionCap;
    std::uint64_t dense_cap = cisim::kDefaultDenseCap;
    std::uint64_t evolve_cap = 1000000;
    bool strict_formulas = false;
};

// Collected output is written atomically (temp file + rename) or to stdout.
class Report {
  public:
    std::ostringstream body;

    void kv(const std::string& key, const std::string& value) {
        body << key << ": " << value << '\n';
    }
    template <typename T>
    void kv(const std::string& key, T value) {
        body << key << ": " << value << '\n';
    }

    void deliver(const std::string& path) const {
        if (path.empty()) {
            std::cout << body.str();
            return;
        }
        const std::string tmp = path + ".tmp";
        {
            std::ofstream out(tmp);
            if (!out) throw std::runtime_error("cannot open " + tmp + " for writing");
            out << body.str();
        }
        std::filesystem::rename(tmp, path);
    }
};

void emit_preamble(Report& r, const std::string& command, const Options& o) {
    r.kv("version", cisim::kVersion);
    r.kv("command", command);
    if (o.orbitals > 0) r.kv("config.orbitals", o.orbitals);
    if (o.electrons >= 0) r.kv("config.electrons", o.electrons);
    if (!o.fcidump.empty()) r.kv("config.fcidump", o.fcidump);
    if (!o.synthetic.empty()) {
        r.kv("config.synthetic", o.synthetic);
        r.kv("config.seed", o.seed);
    }
    r.kv("config.scheme", o.scheme);
    r.kv("config.sign_mode", o.sign_mode);
    r.kv("config.cap", o.cap);
}

// Resolve (n_o, n_e) and the table from either --fcidump or --synthetic.
// Explicit --orbitals/--electrons must agree with an FCIDUMP header.
struct Problem {
    cisim::SpaceParams params;
    cisim::IntegralTable table;
};

Problem resolve_problem(const Options& o) {
    if (!o.fcidump.empty() && !o.synthetic.empty())
        throw std::invalid_argument("--fcidump and --synthetic are mutually exclusive");

    if (!o.fcidump.empty()) {
        std::ifstream in(o.fcidump);
        if (!in) throw cisim::parse_error("cannot open FCIDUMP file " + o.fcidump);
        cisim::FcidumpResult f = cisim::parse_fcidump(in);
        const int n_o = f.table.n_spin_orbitals();
        if (o.orbitals != 0 && o.orbitals != n_o)
            throw std::invalid_argument("--orbitals " + std::to_string(o.orbitals) +
                                        " contradicts FCIDUMP header (2*NORB = " +
                                        std::to_string(n_o) + ")");
        if (o.electrons >= 0 && o.electrons != f.n_electrons)
            throw std::invalid_argument("--electrons " + std::to_string(o.electrons) +
                                        " contradicts FCIDUMP header (NELEC = " +
                                        std::to_string(f.n_electrons) + ")");
        return Problem{cisim::SpaceParams(n_o, f.n_electrons), std::move(f.table)};
    }

    if (o.orbitals <= 0 || o.electrons < 0)
        throw std::invalid_argument("--orbitals and --electrons are required without --fcidump");
    cisim::SpaceParams p(o.orbitals, o.electrons);
    if (!o.synthetic.empty())
        return Problem{p, cisim::synthetic_table(cisim::synthetic_kind_from_name(o.synthetic),
                                                 o.seed, o.orbitals)};
    throw std::invalid_argument("an integral source (--fcidump or --synthetic) is required");
}

int cmd_info(const Options& o) {
    cisim::SpaceParams p(o.orbitals, o.electrons);
    const int ne = p.n_electrons, nv = p.n_orbitals - p.n_electrons;
    Report r;
    emit_preamble(r, "info", o);
    r.kv("n_orbitals", p.n_orbitals);
    r.kv("n_electrons", p.n_electrons);
    r.kv("dimension", cisim::dimension(p));
    r.kv("sparsity", cisim::sparsity(p));
    r.kv("single_excitation_neighbors", static_cast<std::uint64_t>(ne) * nv);
    r.kv("double_excitation_neighbors", cisim::binomial(ne, 2) * cisim::binomial(nv, 2));
    const bool singles = ne >= 1 && nv >= 1;
    const bool doubles = ne >= 2 && nv >= 2;
    const std::uint64_t single_colors = singles ? cisim::binomial(p.n_orbitals, 2) : 0;
    const std::uint64_t double_colors = doubles ? 3 * cisim::binomial(p.n_orbitals, 4) : 0;
    r.kv("descriptor_single_colors", single_colors);
    r.kv("descriptor_double_colors", double_colors);
    r.kv("descriptor_total_colors", single_colors + double_colors + 1);
    r.deliver(o.output);
    return 0;
}

int cmd_matrix(const Options& o) {
    const Problem prob = resolve_problem(o);
    const cisim::SparseCiMatrix m = cisim::build_ci_matrix(
        prob.params, prob.table, cisim::sign_mode_from_name(o.sign_mode), o.cap);
    Report r;
    if (o.format == "triplet") {
        std::ostringstream out;
        cisim::write_triplets(out, m);
        r.body << out.str();
    } else if (o.format == "report") {
        emit_preamble(r, "matrix", o);
        r.kv("dimension", cisim::dimension(prob.params));
        r.kv("entries", m.entries.size());
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", m.max_abs);
        r.kv("max_abs", buf);
        r.kv("core_energy", prob.table.core_energy());
    } else {
        throw std::invalid_argument("unknown --format '" + o.format + "'");
    }
    r.deliver(o.output);
    return 0;
}

int cmd_color(const Options& o) {
    cisim::SpaceParams p(o.orbitals, o.electrons);
    Report r;
    std::ostringstream out;
    cisim::write_coloring(out, p, cisim::scheme_from_name(o.scheme), o.cap);
    r.body << out.str();
    r.deliver(o.output);
    return 0;
}

int cmd_verify_labels(const Options& o) {
    cisim::SpaceParams p(o.orbitals, o.electrons);
    const cisim::ColoringReport report =
        cisim::verify_properness(p, cisim::scheme_from_name(o.scheme), o.cap);
    Report r;
    emit_preamble(r, "verify-labels", o);
    std::ostringstream out;
    cisim::write_report(out, report);
    r.body << out.str();
    r.deliver(o.output);
    if (!report.proper()) return kExitVerification;
    if (o.strict_formulas && !report.formula_mismatches.empty()) return kExitVerification;
    return 0;
}

cisim::StateVector initial_state(const Options& o, const cisim::SpaceParams& p,
                                 std::uint64_t dim) {
    if (!o.initial.empty() && !o.state_file.empty())
        throw std::invalid_argument("--initial and --state-file are mutually exclusive");
    if (!o.state_file.empty()) {
        std::ifstream in(o.state_file);
        if (!in) throw cisim::parse_error("cannot open state file " + o.state_file);
        cisim::StateVector psi = cisim::read_state(in, dim);
        const double n = psi.norm();
        if (std::abs(n - 1.0) > 1e-9)
            throw cisim::verification_error("initial state norm " + std::to_string(n) +
                                            " is not 1");
        return psi;
    }
    if (!o.initial.empty()) {
        std::vector<int> orbitals;
        std::istringstream ss(o.initial);
        for (std::string tok; std::getline(ss, tok, ',');) {
            try {
                orbitals.push_back(std::stoi(tok));
            } catch (const std::exception&) {
                throw std::invalid_argument("bad orbital '" + tok + "' in --initial");
            }
        }
        const cisim::Config x = cisim::encode(orbitals, p);
        return cisim::StateVector::basis(dim, cisim::rank_of(x, p));
    }
    return cisim::StateVector::basis(dim, 0);
}

int cmd_evolve(const Options& o) {
    const Problem prob = resolve_problem(o);
    const std::uint64_t dim = cisim::dimension(prob.params);
    if (dim > o.evolve_cap)
        throw cisim::cap_error("dimension " + std::to_string(dim) +
                               " exceeds evolution cap " + std::to_string(o.evolve_cap));

    const cisim::SparseCiMatrix m = cisim::build_ci_matrix(
        prob.params, prob.table, cisim::sign_mode_from_name(o.sign_mode), o.cap);
    const std::vector<cisim::OneSparseTerm> terms =
        cisim::decompose(m, cisim::scheme_from_name(o.scheme));
    const cisim::StateVector psi0 = initial_state(o, prob.params, dim);
    const cisim::EvolutionResult res = cisim::evolve(terms, o.time, o.steps, o.order, psi0);

    Report r;
    emit_preamble(r, "evolve", o);
    r.kv("dimension", dim);
    r.kv("terms", terms.size());
    r.kv("time", o.time);
    r.kv("steps", o.steps);
    r.kv("order", o.order);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", res.norm_drift);
    r.kv("norm_drift", buf);
    if (dim <= o.dense_cap) {
        const cisim::StateVector ref = cisim::exact_reference(m, o.time, psi0, o.dense_cap);
        std::snprintf(buf, sizeof buf, "%.12f", cisim::fidelity(res.state, ref));
        r.kv("fidelity_vs_reference", buf);
    }

    if (!o.output.empty()) {
        std::ostringstream out;
        cisim::write_state(out, res.state);
        const std::string tmp = o.output + ".tmp";
        {
            std::ofstream f(tmp);
            if (!f) throw std::runtime_error("cannot open " + tmp + " for writing");
            f << out.str();
        }
        std::filesystem::rename(tmp, o.output);
        r.kv("state_file", o.output);
    }
    r.deliver("");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Configuration-interaction matrix construction, one-sparse decomposition, "
                 "and product-formula time evolution"};
    app.require_subcommand(1);
    Options o;

    auto add_space = [&](CLI::App* cmd, bool required) {
        auto* orb = cmd->add_option("--orbitals", o.orbitals, "number of spin orbitals");
        auto* ele = cmd->add_option("--electrons", o.electrons, "number of electrons");
        if (required) {
            orb->required();
            ele->required();
        }
    };
    auto add_source = [&](CLI::App* cmd) {
        cmd->add_option("--fcidump", o.fcidump, "FCIDUMP integral file");
        cmd->add_option("--synthetic", o.synthetic, "synthetic table kind: diagonal | random");
        cmd->add_option("--seed", o.seed, "seed for synthetic random tables");
        cmd->add_option("--sign-mode", o.sign_mode, "fermionic | plain");
        cmd->add_option("--cap", o.cap, "dimension cap for matrix construction");
    };

    CLI::App* info = app.add_subcommand("info", "space dimension, sparsity, color counts");
    add_space(info, true);
    info->add_option("--output", o.output, "write the report to a file");

    CLI::App* matrix = app.add_subcommand("matrix", "build and export the interaction matrix");
    add_space(matrix, false);
    add_source(matrix);
    matrix->add_option("--format", o.format, "triplet | report");
    matrix->add_option("--output", o.output, "output path (default stdout)");

    CLI::App* color = app.add_subcommand("color", "export the edge coloring of a space");
    add_space(color, true);
    color->add_option("--scheme", o.scheme, "descriptor | pairlabel");
    color->add_option("--cap", o.cap, "dimension cap");
    color->add_option("--output", o.output, "output path (default stdout)");

    CLI::App* verify = app.add_subcommand("verify-labels", "check coloring properness and labels");
    add_space(verify, true);
    verify->add_option("--scheme", o.scheme, "descriptor | pairlabel");
    verify->add_option("--cap", o.cap, "dimension cap");
    verify->add_flag("--strict-formulas", o.strict_formulas,
                     "fail when closed-form labels disagree with the counting oracle");
    verify->add_option("--output", o.output, "write the report to a file");

    CLI::App* evolve = app.add_subcommand("evolve", "product-formula time evolution");
    add_space(evolve, false);
    add_source(evolve);
    evolve->add_option("--scheme", o.scheme, "descriptor | pairlabel");
    evolve->add_option("--time", o.time, "total evolution time (atomic units)");
    evolve->add_option("--steps", o.steps, "number of composite steps");
    evolve->add_option("--order", o.order, "product formula order: 1, 2, 4, 6, ...");
    evolve->add_option("--initial", o.initial, "occupied orbitals of the initial basis state, e.g. 1,2");
    evolve->add_option("--state-file", o.state_file, "initial state file (lines `q re im`)");
    evolve->add_option("--output", o.output, "final state output path");
    evolve->add_option("--dense-cap", o.dense_cap, "max dimension for the dense reference");
    evolve->add_option("--evolve-cap", o.evolve_cap, "max state dimension for evolution");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (info->parsed()) return cmd_info(o);
        if (matrix->parsed()) return cmd_matrix(o);
        if (color->parsed()) return cmd_color(o);
        if (verify->parsed()) return cmd_verify_labels(o);
        if (evolve->parsed()) return cmd_evolve(o);
        std::cerr << "no subcommand given\n";
        return kExitUsage;
    } catch (const cisim::cap_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitCap;
    } catch (const cisim::verification_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitVerification;
    } catch (const cisim::parse_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
