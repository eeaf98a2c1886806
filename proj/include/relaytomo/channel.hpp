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

#ifndef RELAYTOMO_CHANNEL_HPP
#define RELAYTOMO_CHANNEL_HPP

#include <relaytomo/numerics.hpp>

namespace relaytomo::channel
{

inline double snr_from_db(double snr_db) { return std::pow(10.0, snr_db / 10.0); }

// Link budget and fading statistics shared by every hop. The mean power gain of a hop of
// length d is d^nu (nu is signed as written, e.g. -3).
struct ChannelParams
{
    double snr = 1000.0; // linear P / (B N0)
    double m = 1.0;      // Nakagami shape
    double nu = -3.0;    // path-loss exponent
    double p_out = 0.01; // target outage probability

    void validate() const;
};

struct HopPair
{
    double d_sr = 0.0; // source -> relay, meters
    double d_rd = 0.0; // relay -> destination, meters

    void validate() const;
};

// Outage probability of the two-hop decode-and-forward link at spectral efficiency i:
// 1 - Q(m, rho_1) Q(m, rho_2), rho_k = m (4^i - 1) / (SNR d_k^nu). Zero for i <= 0.
double outage_cdf(double i, const HopPair &hops, const ChannelParams &params);

// The i >= 0 where outage_cdf equals p_out, by bisection to a bracket below 1e-12 both absolute
// and relative to the root.
double outage_capacity(const HopPair &hops, const ChannelParams &params);

// d(outage_cdf)/di, evaluated analytically.
double capacity_pdf(double i, const HopPair &hops, const ChannelParams &params);

// log of capacity_pdf; finite far into the upper tail. -inf for i < 0.
double log_capacity_pdf(double i, const HopPair &hops, const ChannelParams &params);

// End-to-end instantaneous capacity min_k 0.5 log2(1 + SNR |h_k|^2) with
// |h_k|^2 ~ Gamma(m, d_k^nu / m) drawn independently per hop (source hop first).
double sample_instant_capacity(const HopPair &hops, const ChannelParams &params, numerics::RngStream &rng);

} // namespace relaytomo::channel

#endif
