#include <doctest.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code;
    std::string out;
};

Outcome sh(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + " '" CHURATE_CLI_PATH "' " + args + " 2>&1";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    while (std::fgets(buf.data(), buf.size(), p)) out += buf.data();
    const int status = pclose(p);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    return {std::istreambuf_iterator<char>(in), {}};
}

fs::path scratch(const char* name) {
    const auto dir = fs::temp_directory_path() / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("list") {
    const auto r = sh("list");
    CHECK(r.code == 0);
    for (const char* n : {"fig7a", "fig7d", "fig8", "fig9c", "fig10", "fig11"})
        CHECK(r.out.find(n) != std::string::npos);
}

TEST_CASE("run writes csv and metadata") {
    const auto dir = scratch("churate_cli_run");
    const auto r = sh("run --scenario fig10 --out '" + dir.string() + "' --seed 3 --rel-tol 1e-9 --jobs 2");
    CHECK(r.code == 0);
    const std::string csv = slurp(dir / "fig10.csv");
    CHECK(csv.rfind("lambda_over_a,power_w,mode,fraction\n", 0) == 0);
    CHECK(slurp(dir / "fig10.json").find("\"seed\": 3") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("environment overrides") {
    const auto dir = scratch("churate_cli_env");
    const auto r = sh("run --quiet", "CHURATE_SCENARIO=fig9b CHURATE_OUT='" + dir.string() + "' CHURATE_JOBS=1");
    CHECK(r.code == 0);
    CHECK(fs::exists(dir / "fig9b.csv"));
    CHECK(r.out.empty());
    fs::remove_all(dir);
}

TEST_CASE("config overlay") {
    const auto dir = scratch("churate_cli_cfg");
    {
        std::ofstream cfg(dir / "short.json");
        cfg << R"({"scenario": "fig8", "name": "fig8_short", "sweep": [6, 8], "series": [0.4]})";
    }
    const auto r = sh("run -c '" + (dir / "short.json").string() + "' -o '" + dir.string() + "'");
    CHECK(r.code == 0);
    const std::string csv = slurp(dir / "fig8_short.csv");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 2 * 2);
    fs::remove_all(dir);
}

TEST_CASE("configuration errors exit with code 2") {
    const auto dir = scratch("churate_cli_bad");
    CHECK(sh("run --scenario fig99 --out '" + dir.string() + "'").code == 2);
    CHECK(sh("run").code == 2);
    CHECK(sh("frobnicate").code == 2);
    {
        std::ofstream cfg(dir / "empty.json");
        cfg << R"({"scenario": "fig8", "sweep": []})";
    }
    CHECK(sh("run -c '" + (dir / "empty.json").string() + "' -o '" + dir.string() + "'").code == 2);
    {
        std::ofstream cfg(dir / "broken.json");
        cfg << "{ not json";
    }
    CHECK(sh("run -c '" + (dir / "broken.json").string() + "' -o '" + dir.string() + "'").code == 2);
    fs::remove_all(dir);
}

TEST_CASE("output errors exit with code 3") {
    CHECK(sh("run --scenario fig9a --out /proc/churate_denied").code == 3);
}

TEST_CASE("solve") {
    const auto r = sh("solve --fc 6e8 --bw-over-fc 0.2 --power 4 --lambda-over-a 15 --kkt");
    CHECK(r.code == 0);
    CHECK(r.out.find("\"regime\": \"interior\"") != std::string::npos);
    CHECK(r.out.find("\"pass\": false") == std::string::npos);
}
