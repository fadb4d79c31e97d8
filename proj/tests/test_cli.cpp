#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "opendef/cli.hpp"

using namespace opendef;

namespace {

struct CliResult {
    int code = 0;
    std::string out;
    std::string err;
};

CliResult run_cli(const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    CliResult r;
    r.code = run(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string write_file(const std::string& name, const std::string& text) {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "opendef_cli_test";
    fs::create_directories(dir);
    fs::path path = dir / name;
    std::ofstream f(path, std::ios::binary);
    f << text;
    return path.string();
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

const char* kK3 =
    "vocab E 2\n"
    "domain 3\n"
    "rel E 0 1\n"
    "rel E 0 2\n"
    "rel E 1 0\n"
    "rel E 1 2\n"
    "rel E 2 0\n"
    "rel E 2 1\n"
    "target 2\n"
    "tup 0 1\n";

const char* kP3 =
    "vocab E 2\n"
    "domain 3\n"
    "rel E 0 1\n"
    "rel E 1 0\n"
    "rel E 1 2\n"
    "rel E 2 1\n"
    "target 2\n"
    "tup 0 1\n"
    "tup 1 0\n"
    "tup 1 2\n"
    "tup 2 1\n";

// every edge of the path has the same diagram, so the four disjuncts agree
const std::string kP3Delta = [] {
    const std::string piece = "(~E(x1,x1)&E(x1,x2)&E(x2,x1)&~E(x2,x2))&x1!=x2";
    return piece + "|" + piece + "|" + piece + "|" + piece;
}();

}  // namespace

TEST_CASE("decide prints the verdict and a witness line") {
    std::string k3 = write_file("k3.inst", kK3);
    CliResult r = run_cli({"decide", k3});
    CHECK(r.code == 0);
    CHECK(r.out == "NOT_DEFINABLE\nwitness: 0 1 -> 0 2 ; map: 0>0, 1>2\n");
    CHECK(r.err.empty());

    std::string p3 = write_file("p3.inst", kP3);
    CliResult ok = run_cli({"decide", p3});
    CHECK(ok.code == 0);
    CHECK(ok.out == "DEFINABLE\n");
}

TEST_CASE("decide oracle flag switches to the reference scan") {
    std::string k3 = write_file("k3.inst", kK3);
    CliResult r = run_cli({"decide", "--oracle", k3});
    CHECK(r.code == 0);
    CHECK(r.out == "NOT_DEFINABLE\nwitness: 0 1 -> 1 0 ; map: 0>1, 1>0\n");
}

TEST_CASE("decide thread count does not change the output") {
    std::string k3 = write_file("k3.inst", kK3);
    CliResult seq = run_cli({"decide", k3, "--threads", "1"});
    CliResult par = run_cli({"decide", k3, "--threads", "4"});
    CHECK(seq.code == 0);
    CHECK(par.code == 0);
    CHECK(par.out == seq.out);
    CHECK(run_cli({"decide", k3, "--threads", "0"}).code == 2);
}

TEST_CASE("witness prints the counterexample or NONE") {
    CHECK(run_cli({"witness", write_file("k3.inst", kK3)}).out ==
          "witness: 0 1 -> 0 2 ; map: 0>0, 1>2\n");
    CHECK(run_cli({"witness", write_file("p3.inst", kP3)}).out == "NONE\n");
}

TEST_CASE("synth prints a defining formula or the counterexample") {
    CliResult ok = run_cli({"synth", write_file("p3.inst", kP3)});
    CHECK(ok.code == 0);
    CHECK(ok.out == kP3Delta + "\n");
    CHECK(run_cli({"synth", write_file("p3.inst", kP3), "--no-verify"}).out ==
          kP3Delta + "\n");

    CliResult bad = run_cli({"synth", write_file("k3.inst", kK3)});
    CHECK(bad.code == 0);
    CHECK(bad.out == "NOT_DEFINABLE\nwitness: 0 1 -> 0 2 ; map: 0>0, 1>2\n");
}

TEST_CASE("mc takes the sentence from the flag or the file") {
    std::string mcfile = write_file("k3mc.txt",
                                    "vocab E 2\n"
                                    "domain 3\n"
                                    "rel E 0 1\nrel E 0 2\nrel E 1 0\n"
                                    "rel E 1 2\nrel E 2 0\nrel E 2 1\n"
                                    "exists x1,x2 . E(x1,x2)&x1!=x2\n");
    CliResult file_sentence = run_cli({"mc", mcfile});
    CHECK(file_sentence.code == 0);
    CHECK(file_sentence.out == "SAT\nassignment: 0 1\n");

    CliResult flag = run_cli({"mc", mcfile, "--sentence", "exists x1 . E(x1,x1)"});
    CHECK(flag.code == 0);
    CHECK(flag.out == "UNSAT\n");

    CliResult missing = run_cli({"mc", write_file("k3.inst", kK3)});
    CHECK(missing.code == 2);
    CHECK(missing.err == "error: mc: no --sentence given and the file has no sentence line\n");

    CliResult garbled = run_cli({"mc", mcfile, "--sentence", "forall x1 . x1=x1"});
    CHECK(garbled.code == 2);
    CHECK(garbled.err == "error: sentence must start with 'exists'\n");
}

TEST_CASE("stats prints the size measures") {
    CliResult r = run_cli({"stats", write_file("k3.inst", kK3)});
    CHECK(r.code == 0);
    CHECK(r.out ==
          "size_vocab: 3.000\n"
          "size_structure: 26.774\n"
          "size_instance: 45.606\n"
          "kappa: 2\n");
}

TEST_CASE("reduce mc emits the structure plus the sentence") {
    CliResult r = run_cli({"reduce", "mc", write_file("k3.inst", kK3)});
    CHECK(r.code == 0);
    CHECK(r.out ==
          "vocab E 2\n"
          "domain 3\n"
          "rel E 0 1\n"
          "rel E 0 2\n"
          "rel E 1 0\n"
          "rel E 1 2\n"
          "rel E 2 0\n"
          "rel E 2 1\n"
          "exists x1,x2,x3,x4 . (x1!=x3|x2!=x4)"
          "&((~E(x1,x1)&E(x1,x2)&E(x2,x1)&~E(x2,x2))&x1!=x2)"
          "&((~E(x3,x3)&E(x3,x4)&E(x4,x3)&~E(x4,x4))&x3!=x4)\n");
}

TEST_CASE("gadget reductions carry provenance comments") {
    std::string p3 = write_file("p3.inst", kP3);
    CliResult path = run_cli({"reduce", "induced-path", p3, "-k", "2"});
    CHECK(path.code == 0);
    CHECK(path.out ==
          "# reduction: induced-path\n"
          "# k: 2\n"
          "# fresh: -1>3 1>4\n"
          "vocab E 2\n"
          "domain 5\n"
          "rel E 0 1\n"
          "rel E 1 0\n"
          "rel E 1 2\n"
          "rel E 2 1\n"
          "rel E 3 4\n"
          "rel E 4 3\n"
          "target 2\n"
          "tup 3 4\n"
          "tup 4 3\n");

    CliResult clique = run_cli({"reduce", "clique", p3, "-k", "3"});
    CHECK(clique.code == 0);
    CHECK(clique.out ==
          "# reduction: clique\n"
          "# k: 3\n"
          "# fresh: 1>3 2>4 3>5\n"
          "# kappa: 18\n"
          "vocab E 2\n"
          "domain 6\n"
          "rel E 0 1\n"
          "rel E 1 0\n"
          "rel E 1 2\n"
          "rel E 2 1\n"
          "rel E 3 4\n"
          "rel E 3 5\n"
          "rel E 4 3\n"
          "rel E 4 5\n"
          "rel E 5 3\n"
          "rel E 5 4\n"
          "target 3\n"
          "tup 3 4 5\n"
          "tup 3 5 4\n"
          "tup 4 3 5\n"
          "tup 4 5 3\n"
          "tup 5 3 4\n"
          "tup 5 4 3\n");

    // a bare graph file, no target section, is a valid reduction input
    std::string bare = write_file("bare.graph",
                                  "vocab E 2\ndomain 2\nrel E 0 1\nrel E 1 0\n");
    CHECK(run_cli({"reduce", "clique", bare, "-k", "2"}).code == 0);
}

TEST_CASE("output redirection writes the identical text to a file") {
    std::string p3 = write_file("p3.inst", kP3);
    CliResult direct = run_cli({"reduce", "induced-path", p3, "-k", "3"});
    std::string outfile = write_file("gadget.out", "");
    CliResult filed = run_cli({"reduce", "induced-path", p3, "-k", "3", "-o", outfile});
    CHECK(filed.code == 0);
    CHECK(filed.out.empty());
    CHECK(read_file(outfile) == direct.out);
}

TEST_CASE("gen hard emits the documented family member") {
    CliResult r = run_cli({"gen", "hard", "-n", "3"});
    CHECK(r.code == 0);
    CHECK(r.out ==
          "# matrix family member n=3\n"
          "# element blocks: a=0.. b=n.. c=2n.. pad=3n..; target is the base matrix\n"
          "vocab R 3\n"
          "domain 12\n"
          "rel R 0 1 2\n"
          "rel R 0 9 9\n"
          "rel R 1 9 9\n"
          "rel R 2 9 9\n"
          "rel R 3 4 5\n"
          "rel R 3 6 10\n"
          "rel R 3 11 6\n"
          "rel R 4 7 10\n"
          "rel R 4 11 7\n"
          "rel R 5 8 10\n"
          "rel R 5 11 8\n"
          "rel R 6 7 8\n"
          "target 9\n"
          "tup 0 9 9 1 9 9 2 9 9\n");

    CliResult bad = run_cli({"gen", "hard", "-n", "2"});
    CHECK(bad.code == 2);
    CHECK(bad.err == "error: hard family: n must be at least 3\n");
}

TEST_CASE("generated hard instances round-trip through decide") {
    std::string hard = write_file("h3.inst", "");
    CHECK(run_cli({"gen", "hard", "-n", "3", "-o", hard}).code == 0);
    CliResult r = run_cli({"decide", hard});
    CHECK(r.code == 0);
    CHECK(r.out == "DEFINABLE\n");

    // the reference scan over a 12-element domain at arity 9 is over budget
    CliResult oracle = run_cli({"decide", "--oracle", hard});
    CHECK(oracle.code == 3);
    CHECK(oracle.err == "error: naive slice: map count exceeds budget of 50000000\n");
}

TEST_CASE("check-family reports the frozen n=3 measurements") {
    CliResult r = run_cli({"check-family", "-n", "3"});
    CHECK(r.code == 0);
    CHECK(r.out ==
          "n: 3\n"
          "alpha-variant: rows\n"
          "domain-size: 12\n"
          "relation-tuples: 12\n"
          "target-arity: 9\n"
          "kappa: 9\n"
          "alpha-literals: 4\n"
          "beta-literals: 8\n"
          "matrix-family-size: 9\n"
          "alpha-satisfiers: 14\n"
          "alpha-satisfiers-beyond-family: 5\n"
          "check-alpha-at-base: pass\n"
          "check-beta-at-base: pass\n"
          "check-alpha-beta-defines-target: fail\n"
          "alpha-beta-satisfiers: 2\n"
          "extra-alpha-beta-satisfier: 3 4 5 4 7 10 5 11 8\n"
          "check-decide-definable: pass\n"
          "check-drop-one-admits-matrix: pass\n"
          "check-unique-forward-atom-diff: pass\n"
          "check-unique-symmetric-atom-diff: fail\n"
          "symmetric-rel-diff-max: 100\n"
          "eq-diff-min: 12\n"
          "eq-diff-max: 14\n"
          "check-eq-diff-nonempty: pass\n"
          "probe-literals: 7\n"
          "probe-satisfiers: 1\n"
          "check-probe-defines-target: pass\n");

    CliResult cols = run_cli({"check-family", "-n", "3", "--alpha", "columns"});
    CHECK(cols.code == 0);
    CHECK(cols.out.find("alpha-variant: columns\n") != std::string::npos);
    CHECK(cols.out.find("alpha-satisfiers: 1728\n") != std::string::npos);
    CHECK(cols.out.find("check-alpha-at-base: fail\n") != std::string::npos);

    CHECK(run_cli({"check-family", "-n", "3", "--alpha", "diagonals"}).code == 2);

    CliResult over = run_cli({"check-family", "-n", "5"});
    CHECK(over.code == 3);
    CHECK(over.err == "error: family check: scan size exceeds budget of 10000000\n");
}

TEST_CASE("usage and input errors exit with code 2") {
    CHECK(run_cli({}).code == 2);
    CHECK(run_cli({"frobnicate"}).code == 2);
    CHECK(run_cli({"decide"}).code == 2);

    CliResult help = run_cli({"--help"});
    CHECK(help.code == 0);
    CHECK(help.out.find("open definability toolkit") != std::string::npos);

    CliResult missing = run_cli({"decide", "/nonexistent/path.inst"});
    CHECK(missing.code == 2);
    CHECK(missing.err == "error: cannot open file: /nonexistent/path.inst\n");

    std::string bad = write_file("bad.inst",
                                 "vocab E 2\ndomain 3\nrel E 9 9\ntarget 1\ntup 0\n");
    CliResult parse = run_cli({"decide", bad});
    CHECK(parse.code == 2);
    CHECK(parse.err == "error: line 3: element out of range: 9\n");
}

TEST_CASE("repeated invocations are byte-identical") {
    std::string p3 = write_file("p3.inst", kP3);
    CliResult first_family = run_cli({"check-family", "-n", "3"});
    CliResult first_synth = run_cli({"synth", p3});
    for (int i = 0; i < 2; ++i) {
        CHECK(run_cli({"check-family", "-n", "3"}).out == first_family.out);
        CHECK(run_cli({"synth", p3}).out == first_synth.out);
    }
}
