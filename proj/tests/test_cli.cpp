#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace {

std::string cli_path() {
    const char* path = std::getenv("GOSSIPLOC_CLI");
    REQUIRE_MESSAGE(path != nullptr, "GOSSIPLOC_CLI must point at the CLI binary");
    return path;
}

int run_command(const std::string& args) {
    const int status = std::system((cli_path() + " " + args + " > /dev/null 2>&1").c_str());
    return WEXITSTATUS(status);
}

fs::path temp_dir() {
    const fs::path dir = fs::temp_directory_path() / "gossiploc_cli_test";
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("rigidity verdicts map to exit codes") {
    const fs::path dir = temp_dir();
    const fs::path rigid = dir / "rigid.json";
    const fs::path loose = dir / "loose.json";

    CHECK(run_command("gen-scenario --kind fig1a -o " + rigid.string()) == 0);
    CHECK(run_command("gen-scenario --kind fig1b -o " + loose.string()) == 0);
    CHECK(run_command("rigidity " + rigid.string() + " --out " + dir.string()) == 0);
    CHECK(run_command("rigidity " + loose.string() + " --out " + dir.string()) == 2);
}

TEST_CASE("malformed scenario files exit with code 1") {
    const fs::path dir = temp_dir();
    const fs::path bad = dir / "bad.json";
    std::ofstream(bad) << "{ this is not json";
    CHECK(run_command("rigidity " + bad.string()) == 1);
    CHECK(run_command("rigidity " + (dir / "missing.json").string()) == 1);
}

TEST_CASE("scaled mesh generation reports the grid size") {
    const fs::path dir = temp_dir();
    const fs::path mesh = dir / "mesh81.json";
    CHECK(run_command("gen-scenario --kind sinc-mesh-scaled --half-width 2 --spacing 0.5 -o " +
                      mesh.string()) == 0);
    const std::string doc = slurp(mesh);
    CHECK(doc.find("\"dimension\": 3") != std::string::npos);
}

TEST_CASE("spectral subcommand writes a report") {
    const fs::path dir = temp_dir();
    const fs::path scen = dir / "quad.json";
    CHECK(run_command("gen-scenario --kind fig1a -o " + scen.string()) == 0);
    CHECK(run_command("spectral " + scen.string() + " --eps 0.1 --out " + dir.string()) == 0);
    const std::string report = slurp(dir / "spectral_report.json");
    CHECK(report.find("rho_EWtW") != std::string::npos);
    CHECK(report.find("\"alpha_admissible\": true") != std::string::npos);
}

TEST_CASE("simulate emits trace, summary and snapshots") {
    const fs::path dir = temp_dir() / "sim";
    fs::create_directories(dir);
    const fs::path scen = temp_dir() / "quad_sim.json";
    CHECK(run_command("gen-scenario --kind fig1a -o " + scen.string()) == 0);
    CHECK(run_command("simulate " + scen.string() + " --slots 800 --seed 5 --out " +
                      dir.string()) == 0);
    CHECK(fs::exists(dir / "trace.csv"));
    CHECK(fs::exists(dir / "trace_meta.json"));
    CHECK(fs::exists(dir / "summary.json"));
    CHECK(fs::exists(dir / "snapshot_k0.csv"));
    CHECK(fs::exists(dir / "snapshot_k800.csv"));
}

TEST_CASE("montecarlo requires a sane trial count") {
    const fs::path dir = temp_dir();
    const fs::path scen = dir / "quad_mc.json";
    CHECK(run_command("gen-scenario --kind fig1a -o " + scen.string()) == 0);
    CHECK(run_command("montecarlo " + scen.string() + " --trials 10 --out " + dir.string()) == 1);
}
