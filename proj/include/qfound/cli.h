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

#ifndef QFOUND_CLI_H
#define QFOUND_CLI_H

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "qfound/bohm.h"
#include "qfound/json_io.h"

namespace qfound::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitContract = 2;

/// Parsed invocation, echoed into every report under "config".
struct RunConfig {
    std::string command;
    std::map<std::string, std::string> params;
    std::optional<std::string> output_path;
    bool reproducible = false;
};

struct CommandResult {
    int exit_code = kExitOk;
    json report;
};

struct EprConfig {
    uint64_t trials = 10000;
    uint64_t seed = 0;
    size_t dim = 2;
    /// "sigma_z" (singlet, dim 2 only) or "random".
    std::string observable = "sigma_z";
    std::optional<std::string> csv_path;
};
CommandResult cmd_epr(const EprConfig &config);

struct PartnerConfig {
    /// "remark1", "identity" or "random"; ignored when operator_path is set.
    std::string fixture = "remark1";
    std::optional<std::string> operator_path;
    std::optional<std::string> state_path;
    size_t dim = 4;
    uint64_t seed = 0;
    double tol = 1e-9;
};
CommandResult cmd_partner(const PartnerConfig &config);

struct KsConfig {
    /// "peres33", "coordinate-triad", or a path to a ray-set JSON file.
    std::string set = "peres33";
};
CommandResult cmd_ks(const KsConfig &config);

struct MerminConfig {
    double tol = 1e-10;
};
CommandResult cmd_mermin(const MerminConfig &config);

struct BohmConfig {
    /// "traj", "context", "ensemble" or "pair".
    std::string mode = "context";
    double z0 = 0.5;
    std::optional<double> zb0;
    Procedure procedure = Procedure::Standard;
    uint64_t n = 10000;
    uint64_t seed = 0;
    PacketParams params;
    uint64_t record_every = 10;
    /// CSV `t,z` output; for context mode a prefix for two files.
    std::optional<std::string> csv_path;
};
CommandResult cmd_bohm(const BohmConfig &config);

struct ReportConfig {
    uint64_t seed = 0;
    uint64_t trials = 20000;
    double tol = 1e-9;
    /// Test hook: the singlet premise uses O itself instead of its partner.
    bool inject_faulty_partner = false;
};
CommandResult cmd_nonlocality_report(const ReportConfig &config);

/// Full command line entry point: parses, dispatches, prints the JSON report
/// to `out` (and to --out when given) and returns the exit code.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace qfound::cli

#endif
