#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "kgraph/cli.hpp"

using kgraph::cli::run;

namespace {

std::string samples_dir() { return std::string(KGRAPH_SAMPLES_DIR); }

struct RunResult {
    int code;
    std::string out, err;
};

RunResult invoke(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run(std::move(args), out, err);
    return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& text) {
    std::string path = "/tmp/kgraph_cli_test_" + name;
    std::ofstream f(path);
    f << text;
    return path;
}

}  // namespace

TEST_CASE("delay subcommand on the loop sample") {
    auto r = invoke({"delay", samples_dir() + "/loop.graph", "--n", "3", "--depth", "3",
                     "--verify-min"});
    CAPTURE(r.out, r.err);
    CHECK(r.code == 0);
    CHECK(r.out.find("3 vertices") != std::string::npos);
    CHECK(r.out.find("[ok]") != std::string::npos);
    CHECK(r.out.find("delayed-min") != std::string::npos);
}

TEST_CASE("defect subcommand prints exact values") {
    auto r = invoke({"defect", "--a", "0,0", "--b", "0,0", "--n", "4,4"});
    CHECK(r.code == 0);
    CHECK(r.out.find("defect(a=(0,0), b=(0,0), n=(4,4)) = 0") != std::string::npos);
    CHECK(r.out.find("exact 1/3") != std::string::npos);
    CHECK(r.out.find("ok: defect <= bound") != std::string::npos);
}

TEST_CASE("kappa subcommand validates m") {
    auto bad = invoke({"kappa", "--m", "0"});
    CHECK(bad.code == 2);
    auto good = invoke({"kappa", "--m", "4"});
    CHECK(good.code == 0);
    CHECK(good.out.find("1/3") != std::string::npos);
    CHECK(good.out.find("window-sum") != std::string::npos);
}

TEST_CASE("check-axioms on samples") {
    for (const char* f : {"loop.graph", "cycle3.graph", "twovertex.graph", "btree.graph"}) {
        auto r = invoke({"check-axioms", samples_dir() + "/" + f, "--depth", "4"});
        CAPTURE(f, r.out);
        CHECK(r.code == 0);
    }
    for (const char* f : {"grid.skel", "flip.skel"}) {
        auto r = invoke({"check-axioms", samples_dir() + "/" + f, "--depth", "4,4"});
        CAPTURE(f, r.out);
        CHECK(r.code == 0);
    }
}

TEST_CASE("usage and IO errors exit 2") {
    CHECK(invoke({"check-axioms", "/nonexistent.graph", "--depth", "4"}).code == 2);
    CHECK(invoke({"bogus-subcommand"}).code == 2);
    CHECK(invoke({"check-axioms", samples_dir() + "/loop.graph", "--depth", "4,4"}).code == 2);
    CHECK(invoke({"check-axioms", samples_dir() + "/loop.graph", "--depth", "x"}).code == 2);
    auto bad_syntax = write_temp("syntax.graph", "vertex v\nedgy e v v\n");
    CHECK(invoke({"check-axioms", bad_syntax, "--depth", "3"}).code == 2);
}

TEST_CASE("corrupted inputs exit 1 with a witness") {
    auto mutated = write_temp("mutated.skel",
                              "vertex v\nblue f1 v v\nblue f2 v v\nred g v v\n"
                              "square f1 g g f1\nsquare f2 g g f1\n");
    auto r = invoke({"check-axioms", mutated, "--depth", "2,2"});
    CHECK(r.code == 1);
    CHECK(r.out.find("witness") != std::string::npos);
    CHECK(r.out.find("bijectivity") != std::string::npos);

    auto sink = write_temp("sink.graph", "vertex a\nvertex b\nedge e a b\n");
    auto r2 = invoke({"check-axioms", sink, "--depth", "3"});
    CHECK(r2.code == 1);
    CHECK(r2.out.find("sink") != std::string::npos);
}

TEST_CASE("tck, iota, jmap subcommands") {
    CHECK(invoke({"tck", samples_dir() + "/loop.graph", "--depth", "6", "--margin", "2"}).code ==
          0);
    CHECK(invoke({"iota", samples_dir() + "/loop.graph", "--n", "3", "--depth", "6", "--margin",
                  "2"})
              .code == 0);
    CHECK(invoke({"jmap", samples_dir() + "/loop.graph", "--n", "3"}).code == 0);
    CHECK(invoke({"tck", samples_dir() + "/grid.skel", "--depth", "4,4", "--margin", "2,2"})
              .code == 0);
}

TEST_CASE("sweep writes a CSV file") {
    std::string out_path = "/tmp/kgraph_cli_test_sweep.csv";
    auto r = invoke({"sweep", "--a", "0,0", "--b", "1,0", "--n-list", "4,4;8,8", "--out",
                     out_path});
    CHECK(r.code == 0);
    std::ifstream f(out_path);
    std::string header;
    std::getline(f, header);
    CHECK(header.find("n1,n2,a1,a2,b1,b2,defect,bound,ok") == 0);
    std::string row;
    int rows = 0;
    while (std::getline(f, row)) ++rows;
    CHECK(rows == 2);
    std::remove(out_path.c_str());
}

TEST_CASE("dump emits manifest plus triples") {
    auto r = invoke({"dump", samples_dir() + "/loop.graph", "--depth", "3", "--mu", "e"});
    CHECK(r.code == 0);
    CHECK(r.out.find("index,label,degree") == 0);
    CHECK(r.out.find("operator t_{e}") != std::string::npos);
    CHECK(invoke({"dump", samples_dir() + "/loop.graph", "--depth", "3", "--mu", "zz"}).code == 2);
}

TEST_CASE("all subcommand is deterministic") {
    std::string csv1 = "/tmp/kgraph_cli_test_all1.csv";
    std::string csv2 = "/tmp/kgraph_cli_test_all2.csv";
    auto r1 = invoke({"all", samples_dir() + "/loop.graph", "--out", csv1});
    auto r2 = invoke({"all", samples_dir() + "/loop.graph", "--out", csv2});
    CHECK(r1.code == 0);
    CHECK(r1.out == r2.out);
    std::ifstream f1(csv1), f2(csv2);
    std::stringstream b1, b2;
    b1 << f1.rdbuf();
    b2 << f2.rdbuf();
    CHECK(b1.str() == b2.str());
    CHECK(b1.str().find("check,instance,n,bound,passed,witness") == 0);
    std::remove(csv1.c_str());
    std::remove(csv2.c_str());
}
