// Copyright the pheig authors.
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "pheig/io.hpp"
#include "support.hpp"

using namespace pheig;
using pheig::testing::run_command;

namespace {

const std::string kCli = PHEIG_CLI_PATH;

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = pheig::testing::temp_dir(::testing::UnitTest::GetInstance()->current_test_info()->name());
    }
    void TearDown() override { std::filesystem::remove_all(dir_); }

    pheig::testing::CommandResult run(const std::string& args) { return run_command(kCli + " " + args); }
    std::string path(const std::string& f) const { return dir_ + "/" + f; }

    std::string dir_;
};

size_t count_lines(const std::string& s, const std::string& prefix) {
    std::istringstream in(s);
    std::string line;
    size_t n = 0;
    while (std::getline(in, line))
        if (line.rfind(prefix, 0) == 0) ++n;
    return n;
}

} // namespace

TEST_F(Cli, Version) {
    auto r = run("--version");
    EXPECT_EQ(r.status, 0);
    EXPECT_NE(r.output.find(PHEIG_VERSION), std::string::npos);
}

TEST_F(Cli, GenerateIsDeterministic) {
    ASSERT_EQ(run("generate --m 4 --seed 7 --format both --out-dir " + path("g1")).status, 0);
    ASSERT_EQ(run("generate --m 4 --seed 7 --format both --out-dir " + path("g2")).status, 0);
    for (const char* f : {"A.mtx", "B.mtx", "H.pchb"})
        EXPECT_EQ(io::read_file(path("g1/") + f), io::read_file(path("g2/") + f)) << f;
    const std::string man = io::read_file(path("g1/manifest.json"));
    const std::string digest = io::hex64(io::hamiltonian_digest(io::read_pchb(path("g1/H.pchb"))));
    EXPECT_NE(man.find(digest), std::string::npos);
    EXPECT_NE(man.find("\"definiteness\": \"definite\""), std::string::npos);
    EXPECT_NE(io::read_file(path("g1/A.mtx")).find("% manifest: manifest.json"), std::string::npos);
}

TEST_F(Cli, GeneratedDefiniteReloadsAsDefinite) {
    ASSERT_EQ(run("generate --m 6 --seed 3 --coupling-ratio 0.5 --out-dir " + path("g")).status, 0);
    BseHamiltonian h(io::read_matrix_market(path("g/A.mtx")), io::read_matrix_market(path("g/B.mtx")));
    EXPECT_EQ(is_definite(h), Definiteness::definite);
}

TEST_F(Cli, GenerateRejectsInfeasibleCoupling) {
    EXPECT_EQ(run("generate --m 4 --coupling-ratio 1.5 --mode definite --out-dir " + path("g")).status, 2);
    EXPECT_EQ(run("generate --m 4 --mode sideways --out-dir " + path("g")).status, 2);
}

TEST_F(Cli, SolveWritesOutputs) {
    ASSERT_EQ(run("generate --m 32 --seed 4 --format pchb --out-dir " + path("g")).status, 0);
    auto r = run("solve --input " + path("g/H.pchb") + " --seed 4 --nev 3 --reproducible --out-dir " + path("s"));
    ASSERT_EQ(r.status, 0) << r.output;
    auto csv = io::parse_eigenvalue_csv(io::read_file(path("s/eigenvalues.csv")));
    ASSERT_EQ(csv.lambdas.size(), 3u);
    EXPECT_LT(csv.lambdas[0], 0.0);
    std::vector<double> vals;
    Matrix v;
    io::read_vectors(path("s/eigenvectors.bin"), vals, v);
    EXPECT_EQ(vals, csv.lambdas);
    EXPECT_EQ(v.rows(), 64u);
    EXPECT_EQ(count_lines(io::read_file(path("s/trace.csv")), "iter,"), 1u);
    bool conv = false;
    for (auto& [k, val] : csv.meta)
        if (k == "converged") conv = val == "true";
    EXPECT_TRUE(conv);

    auto ver = run("verify --input " + path("g/H.pchb") + " --solution " + path("s"));
    EXPECT_EQ(ver.status, 0);
    EXPECT_EQ(ver.output.find("FAIL"), std::string::npos) << ver.output;
}

TEST_F(Cli, LargestOrderIsMirrored) {
    ASSERT_EQ(run("generate --m 16 --seed 2 --format pchb --out-dir " + path("g")).status, 0);
    const std::string in = " --input " + path("g/H.pchb");
    ASSERT_EQ(run("solve" + in + " --nev 2 --out-dir " + path("lo")).status, 0);
    ASSERT_EQ(run("solve" + in + " --nev 2 --largest --out-dir " + path("hi")).status, 0);
    auto lo = io::parse_eigenvalue_csv(io::read_file(path("lo/eigenvalues.csv")));
    auto hi = io::parse_eigenvalue_csv(io::read_file(path("hi/eigenvalues.csv")));
    ASSERT_EQ(hi.lambdas.size(), 2u);
    EXPECT_EQ(hi.lambdas[0], -lo.lambdas[0]);
    EXPECT_GT(hi.lambdas[0], hi.lambdas[1]);
}

TEST_F(Cli, OddDegreeIsRoundedWithWarning) {
    ASSERT_EQ(run("generate --m 16 --seed 1 --format pchb --out-dir " + path("g")).status, 0);
    auto r = run("solve --input " + path("g/H.pchb") + " --nev 2 --deg 13 --out-dir " + path("s"));
    ASSERT_EQ(r.status, 0) << r.output;
    EXPECT_NE(r.output.find("warning"), std::string::npos);
    EXPECT_NE(io::read_file(path("s/eigenvalues.csv")).find("# deg: 14"), std::string::npos);
}

TEST_F(Cli, ExitCodes) {
    ASSERT_EQ(run("generate --m 8 --format pchb --out-dir " + path("d")).status, 0);
    ASSERT_EQ(run("generate --m 8 --mode indefinite --coupling-ratio 2 --format pchb --out-dir " + path("i")).status, 0);
    EXPECT_EQ(run("solve --input " + path("d/H.pchb") + " --nev 6 --nex 3 --out-dir " + path("s")).status, 2);
    EXPECT_EQ(run("solve --nev 1 --a " + path("missing.mtx") + " --b " + path("missing.mtx")).status, 3);
    EXPECT_EQ(run("solve --input " + path("i/H.pchb") + " --nev 1 --out-dir " + path("s")).status, 2);
    EXPECT_EQ(run("solve --input " + path("d/H.pchb")).status, 2);
    EXPECT_EQ(run("solve --nev 1 --out-dir " + path("s")).status, 2);
    EXPECT_EQ(run("frobnicate").status, 2);
}

TEST_F(Cli, OracleOnTwoByTwo) {
    io::write_file(path("A.mtx"), "%%MatrixMarket matrix array complex general\n1 1\n2 0\n");
    io::write_file(path("B.mtx"), "%%MatrixMarket matrix array complex general\n1 1\n0.5 0\n");
    auto r = run("oracle --a " + path("A.mtx") + " --b " + path("B.mtx") + " --out-dir " + path("o"));
    ASSERT_EQ(r.status, 0) << r.output;
    auto csv = io::parse_eigenvalue_csv(io::read_file(path("o/eigenvalues.csv")));
    ASSERT_EQ(csv.lambdas.size(), 2u);
    EXPECT_NEAR(csv.lambdas[0], -1.9364916731037085, 1e-15);
    EXPECT_NEAR(csv.lambdas[1], 1.9364916731037085, 1e-15);
    EXPECT_EQ(run("oracle --m 8 --cap 8 --out-dir " + path("o2")).status, 2);
}

TEST_F(Cli, VerifyReportsCorruptedInput) {
    io::write_file(path("A.mtx"), "%%MatrixMarket matrix array complex general\n2 2\n2 0\n0 0\n0 0\n2 0\n");
    io::write_file(path("B.mtx"), "%%MatrixMarket matrix array complex general\n2 2\n0 0\n0.1 0\n0.3 0\n0 0\n");
    auto r = run("verify --a " + path("A.mtx") + " --b " + path("B.mtx"));
    EXPECT_EQ(r.status, 0);
    EXPECT_NE(r.output.find("FAIL"), std::string::npos) << r.output;
}

TEST_F(Cli, BenchRowsAndSummary) {
    auto r = run("bench --m 24 --seed 1 --nev 2 --reps 5 --out-dir " + path("b"));
    ASSERT_EQ(r.status, 0) << r.output;
    const std::string csv = io::read_file(path("b/bench.csv"));
    size_t rows = 0;
    for (int i = 0; i < 5; ++i) rows += count_lines(csv, std::to_string(i) + ",");
    EXPECT_EQ(rows, 5u);
    EXPECT_EQ(count_lines(csv, "min,"), 1u);
    EXPECT_EQ(count_lines(csv, "avg,"), 1u);
    EXPECT_EQ(count_lines(csv, "max,"), 1u);
}

TEST_F(Cli, ConfigFile) {
    io::write_file(path("run.ini"), "[generate]\nm=3\nseed=5\n");
    auto r = run("--config " + path("run.ini") + " generate --out-dir " + path("g"));
    ASSERT_EQ(r.status, 0) << r.output;
    EXPECT_EQ(io::read_matrix_market(path("g/A.mtx")).rows(), 3u);
}
