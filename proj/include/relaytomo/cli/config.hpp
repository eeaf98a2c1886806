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

#ifndef RELAYTOMO_CLI_CONFIG_HPP
#define RELAYTOMO_CLI_CONFIG_HPP

#include <relaytomo/channel.hpp>
#include <relaytomo/geometry.hpp>
#include <relaytomo/measurement.hpp>
#include <relaytomo/tomography.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace relaytomo::cli
{

// Invalid or inconsistent scenario configuration. `line` is 1-based, 0 when unknown.
class ConfigError : public std::runtime_error
{
  public:
    ConfigError(const std::string &source, std::size_t line, const std::string &what);
    std::size_t line() const noexcept { return line_; }

  private:
    std::size_t line_;
};

struct GeometryBlock
{
    geometry::Point source{100.0 * 1.7320508075688772, 0.0};
    geometry::Point destination{0.0, 0.0};
    geometry::Disc region{{50.0 * 1.7320508075688772, 50.0}, 40.0};
    std::vector<geometry::Point> nodes; // filled with default_nodes() when absent
};

struct ChannelBlock
{
    double snr_db = 30.0;
    double m = 1.0;
    double nu = -3.0;
    double p_out = 0.01;
};

struct GridBlock
{
    double d_aod_deg = 10.0;
    double d_aoa_deg = 10.0;
    double resolution_deg = 10.0; // measuring-node azimuth resolution
    double cell_side = 5.0;       // meters
};

struct ExperimentBlock
{
    std::size_t relays = 5;
    std::size_t observations = 10;
    std::uint64_t seed = 1;
    tomography::Mode mode = tomography::Mode::msprt;
    double epsilon = 0.01;
    std::size_t max_observations = 0;
    double aoa_tolerance_deg = 0.0;
    std::optional<double> capacity_tolerance;
};

// Units follow the file: degrees and dB here, radians and linear SNR in the library.
struct ScenarioConfig
{
    GeometryBlock geometry;
    ChannelBlock channel;
    GridBlock grid;
    ExperimentBlock experiment;

    geometry::Baseline baseline() const { return {geometry.source, geometry.destination}; }
    geometry::RelayRegion region() const { return geometry::RelayRegion(geometry.region); }
    channel::ChannelParams channel_params() const;
    measurement::MeasurementNetwork network() const;
    tomography::TomographyConfig tomography() const;

    // Throws ConfigError (line 0) when a cross-field constraint fails.
    void validate() const;
};

// Three nodes 55 m from the region centre at bearings -30, -150 and 90 degrees.
std::vector<geometry::Point> default_nodes(const geometry::Disc &region);

ScenarioConfig default_config();

// Missing keys take the defaults above. Unknown keys, wrong types and violated constraints raise
// ConfigError naming the offending line.
ScenarioConfig parse_config(const std::string &text, const std::string &source = "<config>");
ScenarioConfig load_config(const std::filesystem::path &path);

} // namespace relaytomo::cli

#endif
