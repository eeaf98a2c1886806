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

#include <relaytomo/channel.hpp>

#include <algorithm>
#include <limits>
#include <numbers>

namespace relaytomo::channel
{

namespace
{

const double ln4 = std::log(4.0);
constexpr double capacity_tolerance = 1e-12;

// (m - 1) log(rho), with the rho = 0 limits spelled out
double log_rho_power(double m, double rho)
{
    if (rho > 0.0)
        return (m - 1.0) * std::log(rho);
    if (m == 1.0)
        return 0.0;
    return m > 1.0 ? -std::numeric_limits<double>::infinity() : std::numeric_limits<double>::infinity();
}

double rho(double growth, double d, const ChannelParams &p) { return p.m * growth / (p.snr * std::pow(d, p.nu)); }

} // namespace

void ChannelParams::validate() const
{
    if (!(snr > 0.0) || !std::isfinite(snr))
        throw DomainError("ChannelParams: snr must be positive");
    if (!(m > 0.0) || !std::isfinite(m))
        throw DomainError("ChannelParams: Nakagami m must be positive");
    if (!std::isfinite(nu))
        throw DomainError("ChannelParams: path-loss exponent must be finite");
    if (!(p_out > 0.0 && p_out < 1.0))
        throw DomainError("ChannelParams: outage probability must lie in (0, 1)");
}

void HopPair::validate() const
{
    if (!(d_sr > 0.0) || !(d_rd > 0.0) || !std::isfinite(d_sr) || !std::isfinite(d_rd))
        throw DomainError("HopPair: hop distances must be positive and finite");
}

double outage_cdf(double i, const HopPair &hops, const ChannelParams &params)
{
    if (!(i > 0.0))
        return 0.0;
    const double growth = std::expm1(i * ln4);
    const double p1 = numerics::regularized_lower_gamma(params.m, rho(growth, hops.d_sr, params));
    const double p2 = numerics::regularized_lower_gamma(params.m, rho(growth, hops.d_rd, params));
    // 1 - (1 - p1)(1 - p2) without cancellation for small p
    return p1 + (1.0 - p1) * p2;
}

double outage_capacity(const HopPair &hops, const ChannelParams &params)
{
    params.validate();
    hops.validate();
    return numerics::solve_increasing_root(
        [&](double i) { return outage_cdf(i, hops, params) - params.p_out; }, 0.0, 1.0, capacity_tolerance,
        capacity_tolerance);
}

double log_capacity_pdf(double i, const HopPair &hops, const ChannelParams &params)
{
    if (i < 0.0)
        return -std::numeric_limits<double>::infinity();
    const double growth = std::expm1(i * ln4);
    const double r1 = rho(growth, hops.d_sr, params);
    const double r2 = rho(growth, hops.d_rd, params);
    const double m = params.m;

    // d rho_k / di = ln4 4^i (m / SNR) d_k^-nu
    const double t1 = -params.nu * std::log(hops.d_sr) + log_rho_power(m, r1) - r1 +
                      numerics::log_regularized_upper_gamma(m, r2);
    const double t2 = -params.nu * std::log(hops.d_rd) + log_rho_power(m, r2) - r2 +
                      numerics::log_regularized_upper_gamma(m, r1);
    const double hi = std::max(t1, t2);
    if (std::isinf(hi))
        return hi;
    const double lse = hi + std::log(std::exp(t1 - hi) + std::exp(t2 - hi));
    return std::log(ln4) + i * ln4 + std::log(m / params.snr) - std::lgamma(m) + lse;
}

double capacity_pdf(double i, const HopPair &hops, const ChannelParams &params)
{
    return std::exp(log_capacity_pdf(i, hops, params));
}

double sample_instant_capacity(const HopPair &hops, const ChannelParams &params, numerics::RngStream &rng)
{
    const double g1 = numerics::sample_gamma(params.m, std::pow(hops.d_sr, params.nu) / params.m, rng);
    const double g2 = numerics::sample_gamma(params.m, std::pow(hops.d_rd, params.nu) / params.m, rng);
    return 0.5 * std::log1p(params.snr * std::min(g1, g2)) / std::numbers::ln2;
}

} // namespace relaytomo::channel
