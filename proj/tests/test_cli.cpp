#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

std::string cli_path() {
    const char* p = std::getenv("HODGE_DTN_CLI");
    REQUIRE_MESSAGE(p != nullptr, "HODGE_DTN_CLI must point at the binary");
    return p;
}

int run(const std::string& args) {
    std::string cmd = cli_path() + " " + args + " > /dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

}  // namespace

TEST_CASE("gen writes a loadable mesh") {
    CHECK(run("gen annulus2d --resolution 3 --out /tmp/cli_ann.mesh") == 0);
    std::string text = slurp("/tmp/cli_ann.mesh");
    CHECK(text.find("dim 2") != std::string::npos);
    CHECK(text.find("vertices") != std::string::npos);
    CHECK(text.find("cells") != std::string::npos);
}

TEST_CASE("analyze succeeds and is deterministic without timings") {
    REQUIRE(run("gen annulus2d --resolution 3 --out /tmp/cli_ann.mesh") == 0);
    CHECK(run("analyze /tmp/cli_ann.mesh --identities --no-timings "
              "--out /tmp/cli_a.json") == 0);
    CHECK(run("analyze /tmp/cli_ann.mesh --identities --no-timings "
              "--out /tmp/cli_b.json") == 0);
    std::string a = slurp("/tmp/cli_a.json"), b = slurp("/tmp/cli_b.json");
    CHECK(a.size() > 0);
    CHECK(a == b);  // byte-identical reports
    CHECK(a.find("\"schema\": 1") != std::string::npos);
    CHECK(a.find("sign_table") != std::string::npos);
    CHECK(a.find("\"timings_ms\"") == std::string::npos);
}

TEST_CASE("analyze honors the degree range flag") {
    REQUIRE(run("gen disk2d --resolution 4 --out /tmp/cli_disk.mesh") == 0);
    CHECK(run("analyze /tmp/cli_disk.mesh --degrees 0..0 --no-timings "
              "--out /tmp/cli_d0.json") == 0);
    std::string j = slurp("/tmp/cli_d0.json");
    CHECK(j.find("\"k\": 0") != std::string::npos);
    CHECK(j.find("\"k\": 1") == std::string::npos);
}

TEST_CASE("oracle subcommand passes its own gate") {
    CHECK(run("oracle --out /tmp/cli_oracle.json") == 0);
    std::string j = slurp("/tmp/cli_oracle.json");
    CHECK(j.find("disk_dtn_modes") != std::string::npos);
}

TEST_CASE("export writes the dense matrix text format") {
    REQUIRE(run("gen annulus2d --resolution 3 --out /tmp/cli_ann.mesh") == 0);
    CHECK(run("export /tmp/cli_ann.mesh Phi0 --out /tmp/cli_phi0.mat") == 0);
    std::ifstream in("/tmp/cli_phi0.mat");
    int rows = 0, cols = 0;
    in >> rows >> cols;
    CHECK(rows > 0);
    CHECK(rows == cols);
    double x;
    int count = 0;
    while (in >> x) ++count;
    CHECK(count == rows * cols);
}

TEST_CASE("input errors exit with code 2") {
    CHECK(run("analyze /tmp/definitely_missing.mesh") == 2);
    CHECK(run("gen klein_bottle --out /tmp/cli_x.mesh") == 2);
    write_file("/tmp/cli_bad.mesh", "dim 2\nvertices 1\n0 0\ncells 1\n0 0 0\n");
    CHECK(run("analyze /tmp/cli_bad.mesh") == 2);
    // non-manifold: three triangles on one edge
    write_file("/tmp/cli_nonmanifold.mesh",
               "dim 2\nvertices 5\n0 0\n1 0\n0 1\n0 -1\n-1 0\n"
               "cells 3\n0 1 2\n0 1 3\n0 1 4\n");
    CHECK(run("analyze /tmp/cli_nonmanifold.mesh") == 2);
    REQUIRE(run("gen annulus2d --resolution 3 --out /tmp/cli_ann.mesh") == 0);
    CHECK(run("export /tmp/cli_ann.mesh NoSuchOperator9 --out /tmp/x.mat") ==
          2);
}

TEST_CASE("threshold failures exit with code 1") {
    REQUIRE(run("gen annulus2d --resolution 3 --out /tmp/cli_ann.mesh") == 0);
    // an absurd gap threshold makes every rank decision ambiguous
    CHECK(run("analyze /tmp/cli_ann.mesh --rank-threshold 1e30 "
              "--no-timings --out /tmp/cli_amb.json") == 1);
}
