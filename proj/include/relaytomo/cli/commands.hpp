// SPDX-License-Identifier: Apache-2.0
//
// relaytomo: information azimuth spectra and relay network tomography
// Copyright (C) 2026 The relaytomo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef RELAYTOMO_CLI_COMMANDS_HPP
#define RELAYTOMO_CLI_COMMANDS_HPP

#include <relaytomo/cli/config.hpp>

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

namespace relaytomo::cli
{

enum ExitCode : int
{
    exit_ok = 0,
    exit_failure = 1, // selftest check failed or unexpected error
    exit_config = 2,  // invalid configuration, arguments or input files
    exit_degenerate = 3
};

// Independent random streams derived from the scenario seed.
inline constexpr std::uint64_t relay_stream = 1;
inline constexpr std::uint64_t fading_stream = 2;

std::vector<geometry::Point> sample_relays(const ScenarioConfig &cfg);

// Each command writes into out_dir (created if needed) and returns the written file names.
std::vector<std::string> cmd_direct(const ScenarioConfig &cfg, const std::filesystem::path &out_dir);
std::vector<std::string> cmd_simulate(const ScenarioConfig &cfg, const std::filesystem::path &out_dir);
std::vector<std::string> cmd_invert(const ScenarioConfig &cfg, const std::filesystem::path &measurements,
                                    const std::optional<std::filesystem::path> &truth,
                                    const std::filesystem::path &out_dir);

// Runs the Monte Carlo oracle checks and prints one line per check; true when all pass.
bool cmd_selftest(const ScenarioConfig &cfg, std::ostream &out);

// Parses the command line and dispatches; returns the process exit code.
int run(int argc, char **argv, std::ostream &out, std::ostream &err);

} // namespace relaytomo::cli

#endif
