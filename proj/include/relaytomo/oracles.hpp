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

#ifndef RELAYTOMO_ORACLES_HPP
#define RELAYTOMO_ORACLES_HPP

#include <relaytomo/channel.hpp>
#include <relaytomo/geometry.hpp>

#include <cstdint>

// Monte Carlo reference computations. They draw with their own generators and recompute angles
// and capacities from first principles so that they share no code path with the quantities they
// check, apart from the region and channel descriptions.
namespace relaytomo::oracles
{

// Empirical p_out-quantile of n two-hop decode-and-forward capacities.
double mc_outage_quantile(const channel::HopPair &hops, const channel::ChannelParams &params, std::size_t n,
                          std::uint64_t seed);

// Fraction of n sampled capacities strictly below i.
double mc_outage_fraction(const channel::HopPair &hops, const channel::ChannelParams &params, double i,
                          std::size_t n, std::uint64_t seed);

struct HistogramReport
{
    std::size_t bins_per_axis = 0;
    std::size_t samples = 0;
    std::size_t nonempty_cells = 0; // observed or predicted mass > 0
    std::size_t within = 0;         // |observed - predicted| <= z * standard error
    double fraction_within = 0.0;
    double predicted_total = 0.0; // sum of predicted cell probabilities
    double worst_z = 0.0;
};

// Histogram of (AOD, AOA) for n relays drawn uniformly in the region, on a bins x bins grid over
// the angular bounding box of the region, against the cell probabilities of the joint density.
HistogramReport angle_histogram_check(const geometry::RelayRegion &region, const geometry::Baseline &baseline,
                                      std::size_t bins, std::size_t n, std::uint64_t seed, double z = 3.0);

} // namespace relaytomo::oracles

#endif
