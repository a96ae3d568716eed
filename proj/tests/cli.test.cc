// Copyright 2026 The qfound Authors
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

#include "qfound/cli.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "gtest/gtest.h"

#include "ks_oracle.test.h"
#include "oracle.test.h"
#include "qfound/sampling.h"

using namespace qfound;
using namespace qfound_test;

namespace {

struct Invocation {
    int code;
    std::string out;
    std::string err;
    json report() const {
        return json::parse(out);
    }
};

Invocation invoke(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path scratch_dir() {
    auto dir = std::filesystem::temp_directory_path() / "qfound_cli_test";
    std::filesystem::create_directories(dir);
    return dir;
}

std::string slurp(const std::filesystem::path &p) {
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

TEST(cli, help_and_usage_errors) {
    ASSERT_EQ(invoke({"--help"}).code, cli::kExitOk);
    ASSERT_EQ(invoke({}).code, cli::kExitUsage);
    ASSERT_EQ(invoke({"frobnicate"}).code, cli::kExitUsage);
    ASSERT_EQ(invoke({"epr", "--bogus", "1"}).code, cli::kExitUsage);
    ASSERT_EQ(invoke({"epr", "--trials", "abc"}).code, cli::kExitUsage);
    ASSERT_EQ(invoke({"bohm"}).code, cli::kExitUsage);
}

TEST(cli, epr_single_trial) {
    auto r = invoke({"epr", "--trials", "1", "--reproducible"});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    auto j = r.report();
    ASSERT_EQ(j.at("match_rate"), 1.0);
    ASSERT_EQ(j.at("command"), "epr");
    ASSERT_FALSE(j.contains("generated_at"));
}

TEST(cli, epr_marginals) {
    auto j = invoke({"epr", "--trials", "20000", "--seed", "3", "--reproducible"}).report();
    ASSERT_EQ(j.at("match_rate"), 1.0);
    ASSERT_EQ(j.at("ok"), true);
    for (const auto &side : {"alice", "bob"}) {
        for (const auto &[k, v] : j.at("summary").at("marginals").at(side).items()) {
            ASSERT_NEAR(v.get<double>(), 0.5, 5 * std::sqrt(0.25 / 40000));
        }
    }
}

TEST(cli, epr_random_observable) {
    auto r = invoke({"epr", "--observable", "random", "--dim", "3", "--trials", "500"});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    ASSERT_EQ(r.report().at("match_rate"), 1.0);
    ASSERT_EQ(r.report().at("summary").at("marginals").at("bob").size(), 3u);
}

TEST(cli, epr_bad_config) {
    ASSERT_EQ(invoke({"epr", "--trials", "0"}).code, cli::kExitUsage);
    ASSERT_EQ(invoke({"epr", "--dim", "3"}).code, cli::kExitUsage);
    ASSERT_EQ(invoke({"epr", "--observable", "spin"}).code, cli::kExitUsage);
}

TEST(cli, epr_csv) {
    auto path = scratch_dir() / "epr.csv";
    ASSERT_EQ(invoke({"epr", "--trials", "2", "--csv", path.string()}).code, cli::kExitOk);
    auto text = slurp(path);
    ASSERT_EQ(text.substr(0, text.find('\n')), "seed,observable,order,alice,bob");
    ASSERT_EQ(std::count(text.begin(), text.end(), '\n'), 5);
}

TEST(cli, partner_remark1) {
    auto j = invoke({"partner", "--reproducible"}).report();
    ASSERT_EQ(j.at("ok"), true);
    ASSERT_LE(j.at("diff_to_minus_operator").get<double>(), 1e-14);
    ASSERT_LT(j.at("residual").get<double>(), 1e-12);
}

TEST(cli, partner_identity_and_random) {
    auto id = invoke({"partner", "--fixture", "identity", "--dim", "3"}).report();
    ASSERT_LE(max_entry_diff(matrix_from_json(id.at("partner")), ComplexMatrix::identity(3)), 1e-14);
    auto r = invoke({"partner", "--fixture", "random", "--dim", "4", "--seed", "7"});
    ASSERT_EQ(r.code, cli::kExitOk);
    ASSERT_LT(r.report().at("residual").get<double>(), 1e-9);
}

TEST(cli, partner_operator_file) {
    auto dir = scratch_dir();
    auto op = (dir / "op.json").string();
    write_text_file(op, R"({"dim": 2, "re": [0, 1, 1, 0]})");
    auto j = invoke({"partner", "--operator", op}).report();
    ASSERT_EQ(j.at("ok"), true);
    // On the singlet the partner of sigma_x is -sigma_x.
    ASSERT_LE(j.at("diff_to_minus_operator").get<double>(), 1e-14);

    auto state = (dir / "state.json").string();
    write_text_file(state, state_to_json(make_max_entangled(standard_basis(2), standard_basis(2))).dump());
    j = invoke({"partner", "--operator", op, "--state", state}).report();
    ASSERT_LE(j.at("diff_to_operator").get<double>(), 1e-14);

    write_text_file(op, R"({"dim": 2, "re": [0, 1, -1, 0]})");
    ASSERT_EQ(invoke({"partner", "--operator", op}).code, cli::kExitUsage);
    write_text_file(op, R"({"dim": 2, "re": [0, 1]})");
    ASSERT_EQ(invoke({"partner", "--operator", op}).code, cli::kExitUsage);
    write_text_file(op, "nonsense");
    ASSERT_EQ(invoke({"partner", "--operator", op}).code, cli::kExitUsage);
    write_text_file(op, R"({"dim": 3, "re": [1, 0, 0, 0, 1, 0, 0, 0, 1]})");
    ASSERT_EQ(invoke({"partner", "--operator", op, "--state", state}).code, cli::kExitUsage);
}

TEST(cli, ks_builtin_sets) {
    auto p = invoke({"ks", "--set", "peres33"}).report();
    ASSERT_EQ(p.at("result"), "UNSAT");
    ASSERT_EQ(p.at("rays"), 33);
    ASSERT_EQ(p.at("certificate").at("unsat"), true);
    auto t = invoke({"ks", "--set", "coordinate-triad"}).report();
    ASSERT_EQ(t.at("result"), "SAT");
    auto colors = t.at("coloring").get<std::vector<int>>();
    ASSERT_EQ(std::count(colors.begin(), colors.end(), 0), 1);
}

TEST(cli, ks_file_matches_enumeration) {
    auto codes = peres_code_rays();
    std::vector<CodeRay> twelve(codes.begin() + 9, codes.begin() + 21);
    json rays = json::array();
    for (const auto &c : twelve) {
        auto v = to_unit(c);
        rays.push_back({v[0], v[1], v[2]});
    }
    auto path = (scratch_dir() / "rays12.json").string();
    write_text_file(path, json{{"rays", rays}}.dump());
    auto j = invoke({"ks", "--set", path}).report();
    auto s = exact_structure(twelve);
    ASSERT_TRUE(colorable_by_enumeration(s));
    ASSERT_GT(s.triples.size() + s.pair_count, 0u);
    ASSERT_EQ(j.at("result"), "SAT");
    Coloring c;
    for (int x : j.at("coloring").get<std::vector<int>>()) {
        c.assignment.push_back(static_cast<Color>(x));
    }
    ASSERT_TRUE(coloring_valid(s, c));
}

TEST(cli, ks_malformed_file) {
    auto path = (scratch_dir() / "bad_rays.json").string();
    write_text_file(path, R"({"rays": [[1, 0, 0], [1, 0]]})");
    ASSERT_EQ(invoke({"ks", "--set", path}).code, cli::kExitUsage);
    write_text_file(path, R"({"rays": [[1, 0, 0], [-2, 0, 0]]})");
    ASSERT_EQ(invoke({"ks", "--set", path}).code, cli::kExitUsage);
    ASSERT_EQ(invoke({"ks", "--set", "no-such-set"}).code, cli::kExitUsage);
}

TEST(cli, mermin) {
    auto r = invoke({"mermin"});
    ASSERT_EQ(r.code, cli::kExitOk);
    auto j = r.report();
    ASSERT_EQ(j.at("satisfying"), 0);
    ASSERT_EQ(j.at("assignments_checked"), 512);
    ASSERT_EQ(j.at("parity_product"), -1);
    ASSERT_EQ(j.at("products").size(), 6u);
}

TEST(cli, bohm_modes) {
    auto c = invoke({"bohm", "context", "--z0", "0.5"}).report();
    ASSERT_EQ(c.at("outcome_standard"), 1);
    ASSERT_EQ(c.at("outcome_reversed"), -1);
    auto p = invoke({"bohm", "pair", "--z0", "0.5", "--proc", "reversed"}).report();
    ASSERT_EQ(p.at("b_outcome"), 1);
    ASSERT_EQ(p.at("a_outcome"), -1);
    auto e = invoke({"bohm", "ensemble", "--n", "400", "--dt", "0.01"});
    ASSERT_EQ(e.code, cli::kExitOk);
    ASSERT_EQ(e.report().at("ensemble").at("n"), 400);
}

TEST(cli, bohm_traj_csv) {
    auto path = scratch_dir() / "traj.csv";
    auto r = invoke({"bohm", "traj", "--z0", "-0.3", "--record-every", "1000", "--csv", path.string()});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    auto m = r.report().at("trajectory");
    ASSERT_EQ(m.at("raw_sign"), -1);
    ASSERT_EQ(m.at("procedure"), "standard");
    auto text = slurp(path);
    ASSERT_EQ(text.substr(0, 4), "t,z\n");
    ASSERT_EQ(std::count(text.begin(), text.end(), '\n'), 8);
}

TEST(cli, bohm_invalid_params) {
    ASSERT_EQ(invoke({"bohm", "traj", "--dt", "0.5"}).code, cli::kExitUsage);
    ASSERT_EQ(invoke({"bohm", "traj", "--z0", "0"}).code, cli::kExitUsage);
    ASSERT_EQ(invoke({"bohm", "traj", "--proc", "sideways"}).code, cli::kExitUsage);
    ASSERT_EQ(invoke({"bohm", "ensemble", "--n", "0"}).code, cli::kExitUsage);
    ASSERT_EQ(invoke({"bohm", "traj", "--sigma", "-1"}).code, cli::kExitUsage);
}

TEST(cli, report_passes_and_fault_is_detected) {
    auto ok = invoke({"report", "--reproducible"});
    ASSERT_EQ(ok.code, cli::kExitOk) << ok.out;
    auto j = ok.report();
    ASSERT_EQ(j.at("conclusion").at("locality_untenable"), true);
    ASSERT_EQ(j.at("premises").size(), 4u);
    ASSERT_EQ(j.at("value_map_impossibility").size(), 3u);
    auto bad = invoke({"report", "--inject-fault", "--reproducible"});
    ASSERT_EQ(bad.code, cli::kExitContract);
    auto b = bad.report();
    ASSERT_EQ(b.at("ok"), false);
    ASSERT_EQ(b.at("premises")[0].at("match_rate"), 0.0);
}

TEST(cli, reproducible_output_is_byte_identical) {
    for (std::vector<std::string> args : {std::vector<std::string>{"epr", "--trials", "300", "--seed", "9"},
                                          {"report", "--seed", "4", "--trials", "2000"},
                                          {"partner", "--fixture", "random", "--seed", "2"}}) {
        args.push_back("--reproducible");
        ASSERT_EQ(invoke(args).out, invoke(args).out);
    }
    auto stamped = invoke({"mermin"}).report();
    ASSERT_TRUE(stamped.contains("generated_at"));
}

TEST(cli, seed_changes_output) {
    auto a = invoke({"epr", "--trials", "300", "--seed", "1", "--reproducible"}).out;
    auto b = invoke({"epr", "--trials", "300", "--seed", "2", "--reproducible"}).out;
    ASSERT_NE(a, b);
}

TEST(cli, out_file_matches_stdout) {
    auto path = scratch_dir() / "report.json";
    auto r = invoke({"mermin", "--reproducible", "--out", path.string()});
    ASSERT_EQ(slurp(path), r.out);
    ASSERT_EQ(invoke({"mermin", "--out", "/nonexistent/dir/x.json"}).code, cli::kExitUsage);
}

TEST(cli, config_echo) {
    auto j = invoke({"epr", "--trials", "3", "--seed", "5", "--reproducible"}).report();
    ASSERT_EQ(j.at("config").at("trials"), "3");
    ASSERT_EQ(j.at("config").at("seed"), "5");
}
