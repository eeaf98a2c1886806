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

#include <relaytomo/ias.hpp>
#include <relaytomo/oracles.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

namespace relaytomo::oracles
{

namespace
{

// |h|^2 ~ Gamma(m, d^nu / m) per hop; the weaker hop limits the link.
std::vector<double> draw_capacities(const channel::HopPair &hops, const channel::ChannelParams &params,
                                    std::size_t n, std::uint64_t seed)
{
    std::mt19937_64 gen(seed);
    std::gamma_distribution<double> g1(params.m, std::pow(hops.d_sr, params.nu) / params.m);
    std::gamma_distribution<double> g2(params.m, std::pow(hops.d_rd, params.nu) / params.m);
    std::vector<double> out(n);
    for (auto &c : out)
    {
        const double a = g1(gen);
        const double b = g2(gen);
        c = 0.5 * std::log2(1.0 + params.snr * std::min(a, b));
    }
    return out;
}

double interior_angle(geometry::Point at, geometry::Point a, geometry::Point b)
{
    const double ux = a.x - at.x, uy = a.y - at.y, vx = b.x - at.x, vy = b.y - at.y;
    return std::atan2(std::abs(ux * vy - uy * vx), ux * vx + uy * vy);
}

} // namespace

double mc_outage_quantile(const channel::HopPair &hops, const channel::ChannelParams &params, std::size_t n,
                          std::uint64_t seed)
{
    auto c = draw_capacities(hops, params, n, seed);
    const auto k = static_cast<std::size_t>(std::max(0.0, std::ceil(params.p_out * static_cast<double>(n)) - 1.0));
    std::nth_element(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(k), c.end());
    return c[k];
}

double mc_outage_fraction(const channel::HopPair &hops, const channel::ChannelParams &params, double i,
                          std::size_t n, std::uint64_t seed)
{
    const auto c = draw_capacities(hops, params, n, seed);
    const auto below = std::count_if(c.begin(), c.end(), [i](double x) { return x < i; });
    return static_cast<double>(below) / static_cast<double>(n);
}

HistogramReport angle_histogram_check(const geometry::RelayRegion &region, const geometry::Baseline &baseline,
                                      std::size_t bins, std::size_t n, std::uint64_t seed, double z)
{
    const geometry::Point s = baseline.source(), d = baseline.destination();
    const auto aod_span = geometry::angular_span(region, s, d - s, geometry::Rotation::clockwise);
    const auto aoa_span = geometry::angular_span(region, d, s - d, geometry::Rotation::counter_clockwise);
    const double w_aod = (aod_span.max - aod_span.min) / static_cast<double>(bins);
    const double w_aoa = (aoa_span.max - aoa_span.min) / static_cast<double>(bins);

    std::vector<std::size_t> counts(bins * bins, 0);
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const auto c = region.disc().center;
    const double r = region.disc().radius;
    for (std::size_t k = 0; k < n; ++k)
    {
        const double rho = r * std::sqrt(u(gen));
        const double phi = 2.0 * std::numbers::pi * u(gen);
        const geometry::Point p{c.x + rho * std::cos(phi), c.y + rho * std::sin(phi)};
        const double aod = interior_angle(s, d, p);
        const double aoa = interior_angle(d, s, p);
        const auto a = static_cast<std::size_t>(std::clamp((aod - aod_span.min) / w_aod, 0.0, bins - 0.5));
        const auto b = static_cast<std::size_t>(std::clamp((aoa - aoa_span.min) / w_aoa, 0.0, bins - 0.5));
        ++counts[a * bins + b];
    }

    HistogramReport rep;
    rep.bins_per_axis = bins;
    rep.samples = n;
    for (std::size_t a = 0; a < bins; ++a)
        for (std::size_t b = 0; b < bins; ++b)
        {
            const numerics::Rectangle cell{aod_span.min + a * w_aod, aod_span.min + (a + 1) * w_aod,
                                           aoa_span.min + b * w_aoa, aoa_span.min + (b + 1) * w_aoa};
            const double p = ias::cell_probability(cell, region, baseline);
            rep.predicted_total += p;
            const double observed = static_cast<double>(counts[a * bins + b]) / static_cast<double>(n);
            if (p <= 0.0 && observed == 0.0)
                continue;
            ++rep.nonempty_cells;
            const double pc = std::clamp(p, 0.0, 1.0);
            // one count's worth of spread keeps cells with p ~ 0 from dividing by zero
            const double se = std::max(std::sqrt(pc * (1.0 - pc) / static_cast<double>(n)),
                                       1.0 / static_cast<double>(n));
            const double score = std::abs(observed - p) / se;
            rep.worst_z = std::max(rep.worst_z, score);
            if (score <= z)
                ++rep.within;
        }
    rep.fraction_within = rep.nonempty_cells == 0
                              ? 0.0
                              : static_cast<double>(rep.within) / static_cast<double>(rep.nonempty_cells);
    return rep;
}

} // namespace relaytomo::oracles
