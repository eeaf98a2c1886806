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

#ifndef RELAYTOMO_TOMOGRAPHY_HPP
#define RELAYTOMO_TOMOGRAPHY_HPP

#include <relaytomo/channel.hpp>
#include <relaytomo/geometry.hpp>
#include <relaytomo/measurement.hpp>

#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

// Relay network tomography: recover relay cells from exterior angle / capacity measurements.
namespace relaytomo::tomography
{

enum class Mode
{
    argmin, // least-squares capacity residual over the feasible cells
    msprt   // multi-hypothesis sequential test on the raw observations
};

enum class DecisionKind
{
    threshold,  // sequential test stopped on its error thresholds
    forced_map, // observations exhausted, maximum a posteriori cell
    argmin,
    unlocalized // no feasible cell
};

const char *to_string(Mode mode);
const char *to_string(DecisionKind kind);
Mode parse_mode(std::string_view text);
DecisionKind parse_decision_kind(std::string_view text);

struct MsprtConfig
{
    double epsilon = 0.01;              // pairwise error bound, used when `epsilon_matrix` is empty
    std::vector<double> epsilon_matrix; // optional W x W row-major over grid cells
    std::size_t max_observations = 0;   // 0: use every recorded observation
    std::vector<double> priors;         // over grid cells; empty means uniform

    void validate(std::size_t cell_count) const;
    double error_bound(std::size_t k1, std::size_t k2, std::size_t cell_count) const;
};

struct TomographyConfig
{
    double cell_side = 5.0;                    // meters
    double aoa_tolerance = 0.0;                // radians beyond half a bin; 0 means same bin
    std::optional<double> capacity_tolerance;  // bits/s/Hz; only flags results
    Mode mode = Mode::msprt;
    MsprtConfig msprt{};

    void validate() const;
};

struct LocalizationResult
{
    std::size_t relay = 0;
    std::optional<std::size_t> cell; // grid index, empty when unlocalized
    geometry::Point estimate{};      // cell center
    std::size_t candidates = 0;
    DecisionKind kind = DecisionKind::unlocalized;
    bool degenerate = false;         // every hypothesis had zero likelihood
    bool capacity_flagged = false;   // e2 above the configured capacity tolerance
    double e1 = 0.0;                 // l2 AOA residual at the estimate, radians
    double e2 = 0.0;                 // l2 capacity residual at the estimate, bits/s/Hz
    std::size_t stop_observation = 0;

    friend bool operator==(const LocalizationResult &, const LocalizationResult &) = default;
};

// Geometric bearing of every cell center from every node, with its quantisation bin.
class CellBearings
{
  public:
    CellBearings(const measurement::MeasurementNetwork &net, const geometry::CellGrid &grid);

    double angle(std::size_t node, std::size_t cell) const { return angles_[node * cells_ + cell]; }
    long bin(std::size_t node, std::size_t cell) const { return bins_[node * cells_ + cell]; }
    std::size_t cell_count() const { return cells_; }

  private:
    std::size_t cells_;
    std::vector<double> angles_;
    std::vector<long> bins_;
};

// Cells consistent with every AOA recorded for the relay, ascending. With aoa_tolerance == 0 a
// cell must fall in the measured bin at every receiving node; otherwise its bearing must lie
// within half a bin plus the tolerance of the measured angle. Empty when nothing was recorded
// or the constraints contradict each other.
std::vector<std::size_t> feasible_cells(const measurement::MeasurementSet &set, std::size_t relay,
                                        const CellBearings &bearings, double resolution,
                                        double aoa_tolerance = 0.0);
std::vector<std::size_t> feasible_cells(const measurement::MeasurementSet &set, std::size_t relay,
                                        const measurement::MeasurementNetwork &net, const geometry::CellGrid &grid,
                                        double aoa_tolerance = 0.0);

// Candidate minimising the l2 distance between recorded and predicted outage capacities.
LocalizationResult localize_argmin(std::span<const std::size_t> candidates, const measurement::MeasurementSet &set,
                                   std::size_t relay, const measurement::MeasurementNetwork &net,
                                   const geometry::CellGrid &grid, const channel::ChannelParams &params);

// Sequential test over the candidates using the raw capacity observations.
LocalizationResult msprt_localize(std::span<const std::size_t> candidates, const measurement::MeasurementSet &set,
                                  std::size_t relay, const measurement::MeasurementNetwork &net,
                                  const geometry::CellGrid &grid, const channel::ChannelParams &params,
                                  const MsprtConfig &cfg);

// One result per relay of the set, in relay order.
std::vector<LocalizationResult> localize_all(const measurement::MeasurementSet &set,
                                             const measurement::MeasurementNetwork &net,
                                             const geometry::CellGrid &grid, const channel::ChannelParams &params,
                                             const TomographyConfig &cfg);

// Fraction of relays whose estimate lies within `radius` of the truth; unlocalized relays count
// as misses.
double score_within(std::span<const LocalizationResult> results, std::span<const geometry::Point> truth,
                    double radius);

void write_report(std::ostream &out, std::span<const LocalizationResult> results);
std::vector<LocalizationResult> read_report(std::istream &in);

} // namespace relaytomo::tomography

#endif
