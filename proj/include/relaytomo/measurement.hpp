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

#ifndef RELAYTOMO_MEASUREMENT_HPP
#define RELAYTOMO_MEASUREMENT_HPP

#include <relaytomo/channel.hpp>
#include <relaytomo/geometry.hpp>
#include <relaytomo/numerics.hpp>

#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace relaytomo::measurement
{

struct QuantizedAngle
{
    long index = 0;
    double angle = 0.0; // index * d_theta, radians
};

// Nearest multiple of d_theta; ties round away from zero.
QuantizedAngle quantize_angle(double theta, double d_theta);

// Empirical p_out-quantile: the element at ceil(p_out * n) - 1 of the sorted samples, clamped to
// [0, n - 1]. Throws DomainError on an empty sample.
double estimate_outage_capacity(std::span<const double> samples, double p_out);

struct OrderedPair
{
    std::size_t from = 0; // transmitting node q1
    std::size_t to = 0;   // receiving node q2
    friend bool operator==(const OrderedPair &, const OrderedPair &) = default;
};

// (0,1), (0,2), ..., (1,0), (1,2), ..., (Q-1, Q-2): Q(Q-1) rows.
std::vector<OrderedPair> ordered_pairs(std::size_t node_count);

// Exterior probing nodes. Every node measures angles from its own ray towards the region
// centroid, counter-clockwise positive, with a common resolution.
class MeasurementNetwork
{
  public:
    MeasurementNetwork(std::vector<geometry::Point> nodes, double resolution, geometry::RelayRegion region);

    const std::vector<geometry::Point> &nodes() const { return nodes_; }
    std::size_t size() const { return nodes_.size(); }
    double resolution() const { return resolution_; }
    const geometry::RelayRegion &region() const { return region_; }

    // Angle of the direction node q -> p.
    double bearing(std::size_t q, geometry::Point p) const;
    // Scan range of node q in quantisation indices: floor(min / res) .. ceil(max / res).
    std::pair<long, long> scan_range(std::size_t q) const;

  private:
    std::vector<geometry::Point> nodes_;
    double resolution_;
    geometry::RelayRegion region_;
};

// Everything recorded for one pipeline N_q1 -> R_l -> N_q2.
struct PathRecord
{
    std::size_t pair = 0; // row in ordered_pairs(Q)
    std::size_t relay = 0;
    long aoa_index = 0;            // quantised AOA at q2
    double capacity_estimate = 0.; // empirical outage capacity
    std::vector<double> raw;       // instantaneous capacities, one per observation
};

class MeasurementSet
{
  public:
    MeasurementSet(std::size_t node_count, std::size_t relay_count, std::size_t observations,
                   double resolution_deg);

    std::size_t node_count() const { return node_count_; }
    std::size_t relay_count() const { return relay_count_; }
    std::size_t observations() const { return observations_; }
    double resolution_deg() const { return resolution_deg_; }
    double resolution() const { return geometry::deg_to_rad(resolution_deg_); }
    const std::vector<OrderedPair> &pairs() const { return pairs_; }
    std::size_t pair_row(OrderedPair p) const;

    // Records in (pair, relay) order.
    const std::vector<PathRecord> &records() const { return records_; }
    // Replaces any record already present for the same (pair, relay).
    void insert(PathRecord record);

    const PathRecord *find(std::size_t pair, std::size_t relay) const;
    std::optional<double> aoa(std::size_t pair, std::size_t relay) const;
    // AOD at q1 of pair (q1, q2): by reciprocity the AOA recorded on (q2, q1).
    std::optional<double> aod(std::size_t pair, std::size_t relay) const;

    std::vector<const PathRecord *> records_for_relay(std::size_t relay) const;
    // Instantaneous capacities of observation o across the relay's observed pairs, pair order.
    std::vector<double> observation_vector(std::size_t relay, std::size_t o) const;

    friend bool operator==(const MeasurementSet &, const MeasurementSet &);

  private:
    std::size_t node_count_;
    std::size_t relay_count_;
    std::size_t observations_;
    double resolution_deg_;
    std::vector<OrderedPair> pairs_;
    std::vector<PathRecord> records_;
};

bool operator==(const PathRecord &a, const PathRecord &b);

// Probes every ordered pair for every relay. Reciprocal pairs (q1, q2) and (q2, q1) share their
// fading draws, taken from a stream split off `rng` by (relay, unordered pair).
MeasurementSet simulate_measurements(const MeasurementNetwork &net, std::span<const geometry::Point> relays,
                                     const channel::ChannelParams &params, std::size_t observations,
                                     const numerics::RngStream &rng);

// Line-oriented text format; see docs/file-formats.md.
void write_measurements(std::ostream &out, const MeasurementSet &set);
MeasurementSet read_measurements(std::istream &in);

} // namespace relaytomo::measurement

#endif
