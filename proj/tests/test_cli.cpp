#include <doctest.h>

#include <cstdlib>
#include <sys/wait.h>
#include <unistd.h>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

std::string cli_path() {
    const char* p = std::getenv("LGAS_CLI");
    REQUIRE_MESSAGE(p != nullptr, "LGAS_CLI must point at the lgas binary");
    return p;
}

int run_cli(const std::string& args) {
    const std::string cmd = cli_path() + " " + args + " >/dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream oss;
    oss << in.rdbuf();
    return oss.str();
}

std::vector<std::string> lines_of(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string line;
    while (std::getline(ss, line)) out.push_back(line);
    return out;
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("lgas_cli_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter++));
        fs::create_directories(path);
    }
    ~TempDir() { std::error_code ec; fs::remove_all(path, ec); }
    static int counter;
};
int TempDir::counter = 0;

} // namespace

TEST_CASE("thresholds subcommand") {
    TempDir dir;
    CHECK(run_cli("thresholds --out " + dir.path.string()) == 0);
    const auto rows = lines_of(slurp(dir.path / "thresholds.csv"));
    REQUIRE(rows.size() == 18);  // header + 17
    CHECK(rows[0] == "d,beta_c,beta_s,beta_0,ordering,C_d,C_d_prime");
    // d = 2 row: beta_c = 4, beta_s = 2 pi, beta_0 < 4
    CHECK(rows[2].substr(0, 4) == "2,4,");
    CHECK(rows[2].find("6.283185307179586") != std::string::npos);
    CHECK(rows[2].find("beta_s > beta_c") != std::string::npos);
    // invalid dimension is a usage error
    CHECK(run_cli("thresholds --dmin 0") == 1);
    CHECK(run_cli("thresholds --dmax 19") == 1);
}

TEST_CASE("solve subcommand and exit codes") {
    TempDir dir;
    // short stable run
    CHECK(run_cli("solve --dim 2 --beta 2 --grid 32 --dt 1e-3 --tmax 0.05 "
                  "--init cosine --eps 0.05 --out " + dir.path.string()) == 0);
    const auto diag = lines_of(slurp(dir.path / "diagnostics.csv"));
    REQUIRE(diag.size() >= 3);
    CHECK(diag[0].substr(0, 44) == "t,mass,free_energy,dissipation,fisher,l1_dist");
    CHECK(fs::exists(dir.path / "final.lgas"));

    // blow-up: concentrated bump below the critical temperature -> exit 2
    TempDir dir2;
    CHECK(run_cli("solve --dim 2 --beta 10 --grid 256 --dt 1e-4 --tmax 0.5 "
                  "--init bump --lambda 0.2 --out " + dir2.path.string()) == 2);
    CHECK(fs::exists(dir2.path / "diagnostics.csv"));  // partial outputs

    // bad usage
    CHECK(run_cli("solve --init nosuch") == 1);
    CHECK(run_cli("nosuchcommand") == 1);
}

TEST_CASE("particles subcommand: determinism and Brownian report") {
    TempDir a, b;
    const std::string common =
        "particles --dim 2 --beta 2 --grid 32 --dt 2e-3 --tmax 0.04 "
        "--n-particles 64 --eta 1e-3 --seed 77 --out ";
    CHECK(run_cli(common + a.path.string()) == 0);
    CHECK(run_cli(common + b.path.string()) == 0);
    CHECK(slurp(a.path / "chaos.csv") == slurp(b.path / "chaos.csv"));
    CHECK(slurp(a.path / "particles.csv") == slurp(b.path / "particles.csv"));
    const auto rows = lines_of(slurp(a.path / "particles.csv"));
    CHECK(rows[0] == "i,x1,x2");
    CHECK(rows.size() == 65);
    const auto ens = lines_of(slurp(a.path / "ensemble.csv"));
    CHECK(ens[0] == "t,pair_energy,F_N_vs_reference,chaos_distance");

    TempDir c;
    CHECK(run_cli("particles --dim 2 --beta 4 --dt 1e-6 --tmax 0.003 "
                  "--n-particles 1 --n-mc 300 --out " + c.path.string()) == 0);
    const auto brow = lines_of(slurp(c.path / "brownian.csv"));
    REQUIRE(brow.size() == 2);
    CHECK(brow[0] ==
          "trials,steps,measured_variance,expected_variance,rel_error");
}

TEST_CASE("steady subcommand") {
    TempDir dir;
    CHECK(run_cli("steady --dim 2 --beta 2 --grid 32 --tol 1e-10 --out " +
                  dir.path.string()) == 0);
    const auto rows = lines_of(slurp(dir.path / "steady.csv"));
    REQUIRE(rows.size() == 2);
    CHECK(rows[1].substr(0, 4) == "2,1,");  // beta=2, converged
    CHECK(fs::exists(dir.path / "steady.lgas"));

    // starved iteration cap: non-convergence is exit 3
    TempDir dir2;
    CHECK(run_cli("steady --dim 2 --beta 8 --grid 32 --tol 1e-12 --max-iter 3 "
                  "--out " + dir2.path.string()) == 3);
}

TEST_CASE("mlhls subcommand") {
    TempDir dir;
    CHECK(run_cli("mlhls --dim 2 --beta 8 --grid 32 --n-list 64,256 --out " +
                  dir.path.string()) == 0);
    const auto rows = lines_of(slurp(dir.path / "mlhls.csv"));
    REQUIRE(rows.size() == 3);
    CHECK(rows[0] == "N,lhs,rhs,gap,N0");

    // no valid mu_min below the thresholds: rejected with exit 1
    TempDir dir2;
    CHECK(run_cli("mlhls --dim 2 --beta 1 --grid 32 --out " + dir2.path.string()) == 1);
}

TEST_CASE("config file with command-line override") {
    TempDir dir;
    const fs::path cfg = dir.path / "run.cfg";
    {
        std::ofstream out(cfg);
        out << "dim=2\nbeta=2\ngrid=32\ndt=1e-3\ntmax=0.02\ninit=cosine\neps=0.05\n";
        out << "out=" << (dir.path / "from_config").string() << "\n";
    }
    CHECK(run_cli("solve --config " + cfg.string()) == 0);
    CHECK(fs::exists(dir.path / "from_config" / "diagnostics.csv"));

    // flag overrides the config value
    CHECK(run_cli("solve --config " + cfg.string() + " --out " +
                  (dir.path / "override").string()) == 0);
    CHECK(fs::exists(dir.path / "override" / "diagnostics.csv"));
}
