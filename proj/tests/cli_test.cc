// Copyright 2026 The ncsim Authors
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

#include "cli.h"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ncsim/io.h"

using namespace ncsim;

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult run(std::vector<std::string> args) {
    args.insert(args.begin(), "ncsim");
    std::ostringstream out;
    std::ostringstream err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string write_temp(const std::string &name, const std::string &text) {
    auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream(path, std::ios::binary) << text;
    return path.string();
}

const char *kCircuit = "qubits 2\nh 0\nnoise t() 0\ncnot 0 1\nmeasure_pauli +ZZ -> 0\n";

}  // namespace

TEST(cli, csv_field_quoting) {
    EXPECT_EQ(csv_field("+ZZ"), "+ZZ");
    EXPECT_EQ(csv_field("+XX,+ZZ"), "\"+XX,+ZZ\"");
    EXPECT_EQ(csv_field("a\"b"), "\"a\"\"b\"");
    EXPECT_EQ(csv_field("a\nb"), "\"a\nb\"");
}

TEST(cli, exit_codes) {
    EXPECT_EQ(run({}).code, kExitUsage);
    EXPECT_EQ(run({"frobnicate"}).code, kExitUsage);
    EXPECT_EQ(run({"run"}).code, kExitUsage);
    EXPECT_EQ(run({"rotation-demo", "--shots", "1"}).code, kExitUsage);
    CliResult missing = run({"run", "--circuit", "/nonexistent/circuit.txt"});
    EXPECT_EQ(missing.code, kExitRuntime);
    EXPECT_NE(missing.err.find("cannot open file"), std::string::npos);
    std::string bad = write_temp("ncsim_cli_bad.txt", "qubits 2\nh 5\n");
    CliResult parse = run({"run", "--circuit", bad});
    EXPECT_EQ(parse.code, kExitRuntime);
    EXPECT_NE(parse.err.find("line 2, column 3"), std::string::npos);
    EXPECT_EQ(run({"--help"}).code, kExitOk);
}

TEST(cli, decompose_t_gate) {
    CliResult r = run({"--json", "decompose", "--channel", "t"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_NE(r.out.find("\"one_norm\": 1.4142135623730951"), std::string::npos) << r.out;
    std::string path = write_temp("ncsim_cli_t.json", "");
    ASSERT_EQ(run({"decompose", "--channel", "t", "--out", path}).code, kExitOk);
    StabilizerDecomposition d = decomposition_from_json(read_file(path));
    EXPECT_NEAR(one_norm(d), std::sqrt(2.0), 1e-12);
}

TEST(cli, verify_small_circuit) {
    std::string path = write_temp("ncsim_cli_circuit.txt", kCircuit);
    CliResult r = run({"verify", "--circuit", path, "--shots", "4000"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_NE(r.out.find(",ok"), std::string::npos) << r.out;
}

TEST(cli, outputs_are_identical_across_workers) {
    std::string path = write_temp("ncsim_cli_circuit.txt", kCircuit);
    std::vector<std::vector<std::string>> commands{
        {"run", "--circuit", path, "--shots", "3000", "--noise", "amplitude_damping", "--param", "0.1"},
        {"rotation-demo", "--steps", "10", "--shots", "3000"},
        {"steane", "--noise", "depolarizing", "--strengths", "0.01,0.02", "--shots", "600"},
    };
    for (const auto &cmd : commands) {
        std::vector<std::string> one = cmd;
        one.insert(one.begin(), {"--workers", "1"});
        std::vector<std::string> four = cmd;
        four.insert(four.begin(), {"--workers", "4"});
        CliResult a = run(one);
        CliResult b = run(four);
        ASSERT_EQ(a.code, kExitOk) << a.err;
        EXPECT_EQ(a.out, b.out) << cmd[0];
        EXPECT_FALSE(a.out.empty());
    }
}
