#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "doctest.h"

namespace {

const std::string cli = ISOTK_CLI_PATH;

int run(const std::string& args, const std::string& out_file) {
    const std::string cmd = "'" + cli + "' " + args + " > '" + out_file + "' 2>/dev/null";
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("profile emits the cone closed form") {
    const int rc = run(
        "profile --space '{\"type\":\"cone\",\"theta\":0.5,\"dim\":2}' "
        "--vmin 0.1 --vmax 10 --samples 64",
        "/tmp/cli_profile.csv");
    CHECK(rc == 0);
    const std::string text = slurp("/tmp/cli_profile.csv");
    CHECK(text.rfind("v,I\n", 0) == 0);
    // parse a row and check I = 2 (pi/2)^{1/2} v^{1/2}
    std::istringstream ss(text);
    std::string line;
    std::getline(ss, line);  // header
    int rows = 0;
    while (std::getline(ss, line)) {
        const auto comma = line.find(',');
        REQUIRE(comma != std::string::npos);
        const double v = std::stod(line.substr(0, comma));
        const double I = std::stod(line.substr(comma + 1));
        CHECK(I == doctest::Approx(2.0 * std::sqrt(M_PI / 2.0) * std::sqrt(v)).epsilon(1e-12));
        ++rows;
    }
    CHECK(rows == 64);
}

TEST_CASE("profile output round-trips through verify") {
    REQUIRE(run(
        "profile --space '{\"type\":\"cone\",\"theta\":0.5,\"dim\":2}' "
        "--vmin 0.1 --vmax 10 --samples 200 --out /tmp/cli_cone.csv",
        "/tmp/cli_ignore.txt") == 0);
    const int rc = run("verify --curve /tmp/cli_cone.csv --N 2 --K 0 --avr 0.5 --tol 1e-8",
                       "/tmp/cli_verify.json");
    CHECK(rc == 0);
    const std::string rep = slurp("/tmp/cli_verify.json");
    CHECK(rep.find("\"pass\": true") != std::string::npos);
    CHECK(rep.find("\"tolerance\"") != std::string::npos);
}

TEST_CASE("verify fails with exit 1 on a tampered curve") {
    REQUIRE(run(
        "profile --space '{\"type\":\"cone\",\"theta\":0.5,\"dim\":2}' "
        "--vmin 0.1 --vmax 10 --samples 50 --out /tmp/cli_bad.csv",
        "/tmp/cli_ignore.txt") == 0);
    // shrink one value below the sharp bound
    std::ifstream in("/tmp/cli_bad.csv");
    std::ostringstream edited;
    std::string line;
    int i = 0;
    while (std::getline(in, line)) {
        if (i == 25) {
            const auto comma = line.find(',');
            edited << line.substr(0, comma) << ","
                   << 0.5 * std::stod(line.substr(comma + 1)) << "\n";
        } else {
            edited << line << "\n";
        }
        ++i;
    }
    std::ofstream("/tmp/cli_bad.csv") << edited.str();
    CHECK(run("verify --curve /tmp/cli_bad.csv --N 2 --K 0 --avr 0.5", "/tmp/cli_bad.json") == 1);
}

TEST_CASE("epsreg calibration example") {
    CHECK(run("epsreg --N 2 --epsilon 0.19", "/tmp/cli_eps.csv") == 0);
    const std::string text = slurp("/tmp/cli_eps.csv");
    std::istringstream ss(text);
    std::string header, row;
    std::getline(ss, header);
    REQUIRE(std::getline(ss, row));
    const auto c1 = row.find(','), c2 = row.find(',', c1 + 1);
    CHECK(std::stod(row.substr(c1 + 1, c2 - c1 - 1)) == doctest::Approx(0.35449).epsilon(1e-4));
    CHECK(std::stod(row.substr(c2 + 1)) == doctest::Approx(0.81).epsilon(1e-10));
}

TEST_CASE("deterministic byte-identical output") {
    const std::string args =
        "profile --space '{\"type\":\"cone\",\"theta\":0.37,\"dim\":3}' "
        "--vmin 0.5 --vmax 20 --samples 97";
    REQUIRE(run(args, "/tmp/cli_det_a.csv") == 0);
    REQUIRE(run(args, "/tmp/cli_det_b.csv") == 0);
    CHECK(slurp("/tmp/cli_det_a.csv") == slurp("/tmp/cli_det_b.csv"));
    CHECK(!slurp("/tmp/cli_det_a.csv").empty());
}

TEST_CASE("usage errors exit 2") {
    CHECK(run("frobnicate", "/tmp/cli_err.txt") == 2);
    CHECK(run("profile", "/tmp/cli_err.txt") == 2);  // missing --space
    CHECK(run("profile --space 'not json'", "/tmp/cli_err.txt") == 2);
    CHECK(run("verify --curve /tmp/definitely_missing.csv --N 2", "/tmp/cli_err.txt") == 2);
    CHECK(run("epsreg --N 2", "/tmp/cli_err.txt") == 2);
}

TEST_CASE("barriers and spectral subcommands") {
    // unit disc: rigid certificate
    CHECK(run("barriers --N 2 --perimeter 6.283185307179586 --volume 3.141592653589793 "
              "--avr 1.0",
              "/tmp/cli_bar.json") == 0);
    const std::string bar = slurp("/tmp/cli_bar.json");
    CHECK(bar.find("\"rigidity_check\": true") != std::string::npos);

    CHECK(run("spectral --N 1 --p 2 --volume 2", "/tmp/cli_spec.json") == 0);
    const std::string body = slurp("/tmp/cli_spec.json");
    const auto pos = body.find("\"model_eigenvalue\":");
    REQUIRE(pos != std::string::npos);
    CHECK(std::stod(body.substr(pos + 19)) ==
          doctest::Approx(M_PI * M_PI / 4.0).epsilon(1e-4));
}

TEST_CASE("rearrange subcommand") {
    std::ofstream("/tmp/cli_u.csv") << "node,value,weight\n0,1,1\n1,2,1\n2,3,1\n";
    CHECK(run("rearrange --u /tmp/cli_u.csv --N 2", "/tmp/cli_ustar.csv") == 0);
    const std::string text = slurp("/tmp/cli_ustar.csv");
    CHECK(text.rfind("x,u_star", 0) == 0);
    CHECK(text.find("3") != std::string::npos);
}
