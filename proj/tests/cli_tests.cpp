// End-to-end checks of the command-line surface: flag validation, exit
// codes, file formats, and cross-command consistency.
//
// Usage: cisim_cli_tests <path-to-cisim-cli>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

namespace {

std::string g_cli;
int g_failures = 0;

#define CHECK_MSG(cond, msg)                                                          \
    do {                                                                              \
        if (!(cond)) {                                                               \
            std::cerr << "[FAIL] " << __FILE__ << ":" << __LINE__ << " " << msg      \
                      << "\n";                                                        \
            ++g_failures;                                                             \
        }                                                                             \
    } while (0)

struct CmdResult {
    int exit_code;
    std::string output;
};

CmdResult run(const std::string& args) {
    const std::string cmd = g_cli + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) {
        std::cerr << "popen failed\n";
        std::exit(1);
    }
    std::string out;
    char buf[4096];
    while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string value_of(const std::string& output, const std::string& key) {
    std::istringstream in(output);
    for (std::string line; std::getline(in, line);)
        if (line.rfind(key + ": ", 0) == 0) return line.substr(key.size() + 2);
    return "<missing>";
}

std::filesystem::path write_temp(const std::string& name, const std::string& content) {
    const auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream(path) << content;
    return path;
}

const char* kH2Fcidump =
    "&FCI NORB=2,NELEC=2,MS2=0,\n"
    " ORBSYM=1,1,\n"
    " ISYM=1,\n"
    "&END\n"
    " 0.67448877 1 1 1 1\n"
    " 0.6634680 2 2 1 1\n"
    " 0.6973979 2 2 2 2\n"
    " 0.18128881 2 1 2 1\n"
    " -1.25247730 1 1 0 0\n"
    " -0.47594871 2 2 0 0\n"
    " 0.71510434 0 0 0 0\n";

void test_info() {
    const CmdResult r = run("info --orbitals 4 --electrons 2");
    CHECK_MSG(r.exit_code == 0, "info exit " << r.exit_code);
    CHECK_MSG(value_of(r.output, "dimension") == "6", "dimension");
    CHECK_MSG(value_of(r.output, "sparsity") == "6", "sparsity");
    CHECK_MSG(value_of(r.output, "descriptor_total_colors") == "10", "color count");
    CHECK_MSG(value_of(r.output, "version") != "<missing>", "version present");

    CHECK_MSG(run("info --orbitals 4").exit_code == 2, "missing flag should exit 2");
    CHECK_MSG(run("info --orbitals 0 --electrons 0").exit_code == 2, "n_o = 0 should exit 2");
    CHECK_MSG(run("nonsense").exit_code == 2, "unknown subcommand should exit 2");
}

void test_matrix() {
    const CmdResult r =
        run("matrix --synthetic diagonal --orbitals 4 --electrons 2 --format triplet");
    CHECK_MSG(r.exit_code == 0, "matrix exit " << r.exit_code);
    std::istringstream lines(r.output);
    std::string header;
    std::getline(lines, header);
    CHECK_MSG(header == "# 4 2 6", "triplet header, got '" << header << "'");
    std::size_t n = 0;
    for (std::string l; std::getline(lines, l);) ++n;
    CHECK_MSG(n == 21, "6 diagonal + 15 edge entries, got " << n);

    const CmdResult rep =
        run("matrix --synthetic random --seed 9 --orbitals 4 --electrons 2 --format report");
    CHECK_MSG(rep.exit_code == 0, "matrix report exit");
    CHECK_MSG(value_of(rep.output, "entries") == "21", "report entries");
    const CmdResult rep2 =
        run("matrix --synthetic random --seed 9 --orbitals 4 --electrons 2 --format report");
    CHECK_MSG(rep.output == rep2.output, "deterministic given seed");

    CHECK_MSG(run("matrix --orbitals 4 --electrons 2").exit_code == 2,
              "missing integral source should exit 2");
    CHECK_MSG(run("matrix --synthetic bogus --orbitals 4 --electrons 2").exit_code == 2,
              "unknown synthetic kind should exit 2");
    CHECK_MSG(run("matrix --synthetic diagonal --orbitals 18 --electrons 9 --cap 10")
                      .exit_code == 3,
              "cap should exit 3");
}

void test_fcidump_flow() {
    const auto path = write_temp("cisim_cli_h2.fcidump", kH2Fcidump);

    const CmdResult m = run("matrix --fcidump " + path.string() + " --format report");
    CHECK_MSG(m.exit_code == 0, "fcidump matrix exit " << m.exit_code);
    CHECK_MSG(value_of(m.output, "dimension") == "6", "2 spatial orbitals -> D(4,2) = 6");
    CHECK_MSG(value_of(m.output, "core_energy") == "0.715104", "core energy parsed");

    CHECK_MSG(run("matrix --fcidump " + path.string() + " --electrons 3").exit_code == 2,
              "contradicting --electrons should exit 2");
    CHECK_MSG(run("matrix --fcidump " + path.string() + " --orbitals 2").exit_code == 2,
              "contradicting --orbitals should exit 2");
    CHECK_MSG(run("matrix --fcidump " + path.string() + " --synthetic diagonal").exit_code == 2,
              "two integral sources should exit 2");
    CHECK_MSG(run("matrix --fcidump /no/such/file.fcidump").exit_code == 2,
              "missing file should exit 2");

    const CmdResult ev = run("evolve --fcidump " + path.string() +
                             " --time 1.0 --steps 400 --order 2 --initial 1,2");
    CHECK_MSG(ev.exit_code == 0, "fcidump evolve exit " << ev.exit_code);
    const std::string fid = value_of(ev.output, "fidelity_vs_reference");
    CHECK_MSG(fid.rfind("0.9999", 0) == 0 || fid.rfind("1.0000", 0) == 0,
              "H2-style instance evolves close to the reference, fidelity " << fid);

    std::filesystem::remove(path);
}

void test_verify_labels() {
    const CmdResult desc = run("verify-labels --orbitals 8 --electrons 4 --scheme descriptor");
    CHECK_MSG(desc.exit_code == 0, "descriptor verify exit " << desc.exit_code);
    CHECK_MSG(value_of(desc.output, "proper") == "true", "descriptor proper");
    CHECK_MSG(value_of(desc.output, "violations") == "0", "descriptor violations");

    const CmdResult pair = run("verify-labels --orbitals 4 --electrons 2 --scheme pairlabel");
    CHECK_MSG(pair.exit_code == 0, "pairlabel verify exit " << pair.exit_code);
    CHECK_MSG(value_of(pair.output, "proper") == "true", "pairlabel proper");
    CHECK_MSG(value_of(pair.output, "formula_mismatches") == "5", "mismatch count at (4,2)");
    CHECK_MSG(pair.output.find("mismatch[0]: x=3 y=6 formula=(1,1) oracle=(2,1)") !=
                  std::string::npos,
              "first mismatch line");

    const CmdResult strict =
        run("verify-labels --orbitals 4 --electrons 2 --scheme pairlabel --strict-formulas");
    CHECK_MSG(strict.exit_code == 4, "strict formulas should exit 4, got " << strict.exit_code);

    const CmdResult strict_ok =
        run("verify-labels --orbitals 4 --electrons 1 --scheme pairlabel --strict-formulas");
    CHECK_MSG(strict_ok.exit_code == 0,
              "no mismatch at (4,1) under strict mode, got " << strict_ok.exit_code);

    CHECK_MSG(run("verify-labels --orbitals 12 --electrons 6 --scheme pairlabel --cap 100")
                      .exit_code == 3,
              "verify cap should exit 3");
}

void test_color_export() {
    const CmdResult r = run("color --orbitals 4 --electrons 2 --scheme descriptor");
    CHECK_MSG(r.exit_code == 0, "color exit " << r.exit_code);
    CHECK_MSG(r.output.find("# color 0 diagonal") != std::string::npos, "legend");
    std::istringstream in(r.output);
    std::size_t edge_lines = 0;
    for (std::string line; std::getline(in, line);)
        if (!line.empty() && line[0] != '#') ++edge_lines;
    CHECK_MSG(edge_lines == 21, "6 self-loops + 15 edges, got " << edge_lines);
}

void test_evolve() {
    const CmdResult zero = run(
        "evolve --synthetic random --seed 4 --orbitals 4 --electrons 2 --time 0 --steps 1 "
        "--order 2 --initial 1,4");
    CHECK_MSG(zero.exit_code == 0, "evolve t=0 exit " << zero.exit_code);
    CHECK_MSG(value_of(zero.output, "fidelity_vs_reference").rfind("1.0000000000", 0) == 0,
              "t = 0 leaves the state unchanged");

    const auto state_path = std::filesystem::temp_directory_path() / "cisim_cli_state.txt";
    const CmdResult ev = run(
        "evolve --synthetic random --seed 4 --orbitals 4 --electrons 2 --time 0 --steps 3 "
        "--order 1 --initial 1,4 --output " + state_path.string());
    CHECK_MSG(ev.exit_code == 0, "evolve with output exit " << ev.exit_code);
    {
        std::ifstream in(state_path);
        std::string all((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        CHECK_MSG(all.find("3 1 0") != std::string::npos ||
                      all.find("3 1 -0") != std::string::npos,
                  "basis state {1,4} has rank 3; state file:\n" << all);
    }

    // state file round trip: t = 0 evolve from the written state reproduces it
    const CmdResult round = run(
        "evolve --synthetic random --seed 4 --orbitals 4 --electrons 2 --time 0 --steps 1 "
        "--order 1 --state-file " + state_path.string());
    CHECK_MSG(round.exit_code == 0, "state file input exit " << round.exit_code);

    CHECK_MSG(run("evolve --synthetic random --seed 4 --orbitals 4 --electrons 2 --time 1 "
                  "--steps 2 --order 3 --initial 1,2")
                      .exit_code == 2,
              "odd order should exit 2");
    CHECK_MSG(run("evolve --synthetic random --orbitals 4 --electrons 2 --time 1 --steps 2 "
                  "--order 2 --initial 1,7")
                      .exit_code == 2,
              "orbital outside the space should exit 2");

    // error shrinks about 4x when steps double at order 2
    auto infidelity = [&](std::uint64_t steps) {
        const CmdResult r = run(
            "evolve --synthetic random --seed 12 --orbitals 6 --electrons 3 --time 1.0 "
            "--order 2 --initial 1,2,3 --steps " + std::to_string(steps));
        CHECK_MSG(r.exit_code == 0, "evolve exit " << r.exit_code);
        return 1.0 - std::stod(value_of(r.output, "fidelity_vs_reference"));
    };
    const double e8 = infidelity(8), e16 = infidelity(16);
    // infidelity ~ error^2: quartering error means ~16x smaller infidelity
    CHECK_MSG(e8 / e16 > 9.0 && e8 / e16 < 25.0,
              "infidelity ratio " << e8 / e16 << " not near 16");

    std::filesystem::remove(state_path);
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: cisim_cli_tests <path-to-cisim-cli>\n";
        return 2;
    }
    g_cli = argv[1];

    test_info();
    test_matrix();
    test_fcidump_flow();
    test_verify_labels();
    test_color_export();
    test_evolve();

    if (g_failures == 0) {
        std::cout << "cli_tests: all checks passed\n";
        return 0;
    }
    std::cerr << "cli_tests: " << g_failures << " check(s) failed\n";
    return 1;
}
