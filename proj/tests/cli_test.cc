// Copyright 2026 The qecopt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// End-to-end checks of the command-line tool through a shell.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

struct Outcome {
    int code = -1;
    std::string out;
};

Outcome run(const std::string &args, const fs::path &cwd) {
    std::string cmd = "cd '" + cwd.string() + "' && '" QECOPT_CLI_PATH "' " + args + " 2>&1";
    Outcome r;
    FILE *pipe = popen(cmd.c_str(), "r");
    if (pipe == nullptr) return r;
    char buf[4096];
    std::size_t n = 0;
    while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

void write(const fs::path &path, const std::string &text) {
    std::ofstream(path) << text;
}

std::string slurp(const fs::path &path) {
    std::ifstream in(path);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

class Cli : public ::testing::Test {
   protected:
    static void SetUpTestSuite() {
        dir_ = fs::temp_directory_path() / "qecopt_cli_test";
        fs::remove_all(dir_);
        fs::create_directories(dir_);
        Outcome r = run("export corpus", dir_);
        ASSERT_EQ(r.code, 0) << r.out;
    }
    static void TearDownTestSuite() {
        fs::remove_all(dir_);
    }
    static fs::path corpus() {
        return dir_ / "corpus";
    }
    static fs::path dir_;
};

fs::path Cli::dir_;

TEST_F(Cli, ExportedCorpusVerifies) {
    std::ifstream index(corpus() / "contracts.txt");
    std::string line;
    int checked = 0;
    while (std::getline(index, line)) {
        Outcome r = run("verify " + line, corpus());
        EXPECT_EQ(r.code, 0) << line << "\n" << r.out;
        EXPECT_EQ(r.out.rfind("PASS ", 0), 0u) << r.out;
        checked++;
    }
    EXPECT_GE(checked, 20);
}

TEST_F(Cli, VerifyStabilizerSequence) {
    Outcome r = run("verify five_qubit_stabilizer_1.seq --code five_qubit --stabilizer 1", corpus());
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("pass=true"), std::string::npos);
    r = run("verify five_qubit_stabilizer_1.seq --code five_qubit --stabilizer 2", corpus());
    EXPECT_EQ(r.code, 1) << r.out;
}

TEST_F(Cli, TruncatedSequenceFails) {
    std::string text = slurp(corpus() / "three_bitflip_syndrome.seq");
    // Drop the last unitary pulse (the line before the final measurement).
    std::size_t last = text.rfind("\nM 4");
    std::size_t prev = text.rfind('\n', last - 1);
    write(dir_ / "truncated.seq", text.substr(0, prev) + text.substr(last));
    Outcome r = run("verify truncated.seq --code three_bitflip --contract syndrome", dir_);
    EXPECT_EQ(r.code, 1) << r.out;
    EXPECT_EQ(r.out.rfind("FAIL ", 0), 0u) << r.out;
}

TEST_F(Cli, MalformedInputIsUsageError) {
    write(dir_ / "bad.seq", "qubits 6\nz 9 pi\n");
    Outcome r = run("verify bad.seq --code five_qubit --stabilizer 1", dir_);
    EXPECT_EQ(r.code, 2) << r.out;
    EXPECT_NE(r.out.find("line 2"), std::string::npos) << r.out;
    EXPECT_EQ(run("verify missing.seq --code steane", dir_).code, 2);
    EXPECT_EQ(run("frobnicate", dir_).code, 2);
    EXPECT_EQ(run("", dir_).code, 2);
}

TEST_F(Cli, CountAllStabilizers) {
    Outcome r = run("count five_qubit_all_stabilizers.seq", corpus());
    ASSERT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("unitaries=30\n"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("entangling=8\n"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("entangling_angle_sum_exact=2 pi\n"), std::string::npos) << r.out;
}

TEST_F(Cli, CountSteaneStabilizer) {
    Outcome r = run("count steane_stabilizer_1.seq", corpus());
    ASSERT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("entangling=4\n"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("entangling_angle_sum_exact=1/2 pi\n"), std::string::npos) << r.out;
}

TEST_F(Cli, Render) {
    Outcome r = run("render three_bitflip_syndrome.seq --cells 4", corpus());
    ASSERT_EQ(r.code, 0) << r.out;
    EXPECT_EQ(r.out.rfind("q1  -", 0), 0u) << r.out;
    EXPECT_NE(r.out.find("\nq4  -"), std::string::npos);
    EXPECT_NE(r.out.find("[M]"), std::string::npos);
    EXPECT_EQ(run("render three_bitflip_syndrome.seq --cells 0", corpus()).code, 2);
}

TEST_F(Cli, GradCheck) {
    Outcome r = run("gradcheck", dir_);
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("pass=true"), std::string::npos);
    write(dir_ / "bug.cfg", "inject_sign_bug = true\ntrials = 6\n");
    r = run("gradcheck bug.cfg", dir_);
    EXPECT_EQ(r.code, 1) << r.out;
    write(dir_ / "typo.cfg", "trails = 6\n");
    EXPECT_EQ(run("gradcheck typo.cfg", dir_).code, 2);
}

TEST_F(Cli, OptimizeWithoutSweepsDoesNotConverge) {
    write(dir_ / "none.cfg",
          "contract = syndrome\ncode = three_bitflip\nsegments = 2\nfixed = X2 pi/4; X2 pi/4\n"
          "max_sweeps = 0\nout = none.seq\n");
    Outcome r = run("optimize none.cfg", dir_);
    EXPECT_EQ(r.code, 1) << r.out;
    EXPECT_NE(r.out.find("converged=false"), std::string::npos) << r.out;
    EXPECT_TRUE(fs::exists(dir_ / "none.seq"));
    EXPECT_TRUE(fs::exists(dir_ / "none.seq.trace"));
}

TEST_F(Cli, OptimizeStatePrepIsReproducible) {
    write(dir_ / "prep.cfg",
          "# two-qubit Bell-type preparation\ncontract = state_prep\ntarget = bell.state\n"
          "kinds = X Y X2 z\ninitial_length = 8\nmax_sweeps = 120\nrestarts = 3\nthreads = 1\n");
    write(dir_ / "bell.state", "0.7071067811865476\n0\n0\n0.7071067811865476\n");
    Outcome a = run("optimize prep.cfg --seed 5 --out a.seq", dir_);
    ASSERT_EQ(a.code, 0) << a.out;
    Outcome b = run("optimize prep.cfg --seed 5 --out b.seq", dir_);
    ASSERT_EQ(b.code, 0) << b.out;
    EXPECT_EQ(slurp(dir_ / "a.seq"), slurp(dir_ / "b.seq"));
    EXPECT_EQ(slurp(dir_ / "a.seq.trace"), slurp(dir_ / "b.seq.trace"));
    Outcome v = run("verify a.seq --target bell.state --tol 1e-6", dir_);
    EXPECT_EQ(v.code, 0) << v.out;
}

TEST_F(Cli, OptimizeRejectsUnknownKeys) {
    write(dir_ / "typo.opt", "contract = syndrome\ncode = three_bitflip\nmax_sweep = 3\n");
    Outcome r = run("optimize typo.opt", dir_);
    EXPECT_EQ(r.code, 2) << r.out;
    EXPECT_NE(r.out.find("max_sweep"), std::string::npos) << r.out;
}

}  // namespace
