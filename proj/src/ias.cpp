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

#include <algorithm>
#include <numeric>
#include <utility>

namespace relaytomo::ias
{

using geometry::AnglePair;
using geometry::Baseline;
using geometry::Point;
using geometry::RelayRegion;

double capacity_at(const Baseline &baseline, const AnglePair &angles, const channel::ChannelParams &params)
{
    const channel::HopPair hops{geometry::dist_source_relay(baseline, angles),
                                geometry::dist_relay_destination(baseline, angles)};
    return channel::outage_capacity(hops, params);
}

std::vector<FlowAtom> continuous_ias(std::span<const Point> relays, const Baseline &baseline,
                                     const channel::ChannelParams &params)
{
    params.validate();
    std::vector<FlowAtom> atoms;
    atoms.reserve(relays.size());
    for (std::size_t l = 0; l < relays.size(); ++l)
    {
        const AnglePair a = geometry::angles_from_point(baseline, relays[l]);
        atoms.push_back({l, a.aod, a.aoa, capacity_at(baseline, a, params)});
    }
    return atoms;
}

double joint_angle_pdf(double aod, double aoa, const RelayRegion &region, const Baseline &baseline)
{
    const double s = std::sin(aod + aoa);
    if (std::abs(s) < 1e-12)
        throw DegenerateGeometryError("joint_angle_pdf: sin(aod + aoa) vanishes");
    const AnglePair angles{aod, aoa};
    if (!angles.satisfies_triangle())
        return 0.0;
    const Point p = geometry::point_from_angles(baseline, angles);
    const double density = region.density(p);
    if (density == 0.0)
        return 0.0;
    const double d = baseline.length();
    const double num = std::abs(std::sin(2.0 * aod) + std::sin(2.0 * aoa) - std::sin(2.0 * (aod + aoa)));
    const double den = 1.0 - std::cos(2.0 * (aod + aoa));
    return d * d * num / (den * den) * density;
}

AngularGrid build_grid(const RelayRegion &region, const Baseline &baseline, double d_aod, double d_aoa)
{
    if (!(d_aod > 0.0) || !(d_aoa > 0.0))
        throw DomainError("build_grid: angular resolutions must be positive");
    geometry::validate_region_side(region, baseline);
    const Point s = baseline.source(), d = baseline.destination();
    // the relay side is clockwise of S->D at the source and counter-clockwise of D->S at the destination
    const auto aod_span = geometry::angular_span(region, s, d - s, geometry::Rotation::clockwise);
    const auto aoa_span = geometry::angular_span(region, d, s - d, geometry::Rotation::counter_clockwise);
    AngularGrid grid;
    grid.d_aod = d_aod;
    grid.d_aoa = d_aoa;
    grid.i_min = static_cast<int>(std::floor(aod_span.min / d_aod));
    grid.i_max = static_cast<int>(std::ceil(aod_span.max / d_aod));
    grid.j_min = static_cast<int>(std::floor(aoa_span.min / d_aoa));
    grid.j_max = static_cast<int>(std::ceil(aoa_span.max / d_aoa));
    return grid;
}

double DiscreteIas::total_mass() const { return std::accumulate(masses.begin(), masses.end(), 0.0); }

namespace
{

constexpr int probe_points = 17;

struct CellIntegrals
{
    double mass = 0.0;
    double weighted_capacity = 0.0;
};

// Integrates over one angular cell. For a fixed AOD the relays of the disc lie on a chord of the
// ray leaving the source, and the AOA grows monotonically along that ray, so the support in AOA
// is an interval with closed-form ends. The inner rule runs over that interval intersected with
// the cell, which keeps the indicator edge out of the quadrature. Only the outer (AOD) integrand
// retains kinks, so cells cut by the support edge split the AOD range into panels.
class CellIntegrator
{
  public:
    // `params` may be null when only the probability mass is wanted.
    CellIntegrator(const RelayRegion &region, const Baseline &baseline, const channel::ChannelParams *params,
                   const DiscreteIasOptions &options)
        : region_(region), baseline_(baseline), params_(params), options_(options),
          rule_(numerics::gauss_legendre(options.quadrature.order)),
          center_(baseline.to_local(region.centroid())),
          aod_span_(geometry::angular_span(region, baseline.source(), baseline.destination() - baseline.source(),
                                           geometry::Rotation::clockwise))
    {
    }

    CellIntegrals integrate(const numerics::Rectangle &cell) const
    {
        const double lo = std::max(cell.x_min, aod_span_.min);
        const double hi = std::min(cell.x_max, aod_span_.max);
        if (!(hi > lo))
            return {};
        const int n = fully_inside(cell) ? 1 : options_.boundary_subdivisions;
        CellIntegrals total;
        const double step = (hi - lo) / n;
        for (int a = 0; a < n; ++a)
        {
            const double a_lo = lo + a * step, a_hi = a + 1 == n ? hi : lo + (a + 1) * step;
            const auto part = integrate_strip(a_lo, a_hi, a_lo == aod_span_.min, a_hi == aod_span_.max, cell);
            total.mass += part.mass;
            total.weighted_capacity += part.weighted_capacity;
        }
        return total;
    }

  private:
    bool in_support(double aod, double aoa) const
    {
        const AnglePair angles{aod, aoa};
        if (!angles.satisfies_triangle() || std::abs(std::sin(aod + aoa)) < 1e-12)
            return false;
        return region_.contains(geometry::point_from_angles(baseline_, angles));
    }

    bool fully_inside(const numerics::Rectangle &cell) const
    {
        for (int a = 0; a < probe_points; ++a)
            for (int b = 0; b < probe_points; ++b)
            {
                const double w = cell.x_min + cell.width() * a / (probe_points - 1);
                const double p = cell.y_min + cell.height() * b / (probe_points - 1);
                if (!in_support(w, p))
                    return false;
            }
        return true;
    }

    // AOA interval of the disc chord cut by the ray leaving the source at `aod`; empty when the
    // ray misses the disc.
    bool aoa_chord(double aod, double &aoa_lo, double &aoa_hi) const
    {
        const double d = baseline_.length();
        const Point u{-std::cos(aod), std::sin(aod)}; // local frame: D at the origin, S at (d, 0)
        const Point sc = Point{d, 0.0} - center_;
        const double b = geometry::dot(u, sc);
        const double c = geometry::dot(sc, sc) - region_.disc().radius * region_.disc().radius;
        const double disc = b * b - c;
        if (!(disc > 0.0))
            return false;
        const double root = std::sqrt(disc);
        const double t1 = std::max(-b - root, 0.0), t2 = -b + root;
        if (!(t2 > t1))
            return false;
        const Point p1 = Point{d, 0.0} + t1 * u, p2 = Point{d, 0.0} + t2 * u;
        aoa_lo = std::atan2(p1.y, p1.x);
        aoa_hi = std::atan2(p2.y, p2.x);
        if (aoa_lo > aoa_hi)
            std::swap(aoa_lo, aoa_hi);
        return true;
    }

    // At the tangent AODs the chord length, and with it the inner integral, behaves like a square
    // root. Strips ending there are integrated in u with aod = lo + (hi - lo) phi(u), where phi
    // has zero slope at the singular ends, which makes the outer integrand smooth again.
    CellIntegrals integrate_strip(double aod_lo, double aod_hi, bool tangent_lo, bool tangent_hi,
                                  const numerics::Rectangle &cell) const
    {
        const auto phi = [&](double u) {
            if (tangent_lo && tangent_hi)
                return std::pair{u * u * (3.0 - 2.0 * u), 6.0 * u * (1.0 - u)};
            if (tangent_lo)
                return std::pair{u * u, 2.0 * u};
            if (tangent_hi)
                return std::pair{1.0 - (1.0 - u) * (1.0 - u), 2.0 * (1.0 - u)};
            return std::pair{u, 1.0};
        };
        const double width = aod_hi - aod_lo;
        CellIntegrals acc;
        for (std::size_t a = 0; a < rule_.nodes.size(); ++a)
        {
            const auto [frac, slope] = phi(0.5 * (1.0 + rule_.nodes[a]));
            const double aod = aod_lo + width * frac;
            const double outer_weight = 0.5 * rule_.weights[a] * width * slope;
            double chord_lo = 0.0, chord_hi = 0.0;
            if (!aoa_chord(aod, chord_lo, chord_hi))
                continue;
            const double lo = std::max(cell.y_min, chord_lo), hi = std::min(cell.y_max, chord_hi);
            if (!(hi > lo))
                continue;
            const double hp = 0.5 * (hi - lo), cp = lo + hp;
            double mass = 0.0, weighted = 0.0;
            for (std::size_t b = 0; b < rule_.nodes.size(); ++b)
            {
                const double aoa = cp + hp * rule_.nodes[b];
                const double f = joint_angle_pdf(aod, aoa, region_, baseline_);
                if (f == 0.0)
                    continue;
                const double w = rule_.weights[b] * f;
                mass += w;
                if (params_ != nullptr)
                    weighted += w * capacity_at(baseline_, {aod, aoa}, *params_);
            }
            acc.mass += outer_weight * hp * mass;
            acc.weighted_capacity += outer_weight * hp * weighted;
        }
        return acc;
    }

    const RelayRegion &region_;
    const Baseline &baseline_;
    const channel::ChannelParams *params_;
    const DiscreteIasOptions &options_;
    numerics::GaussLegendreRule rule_;
    Point center_;
    geometry::AngularInterval aod_span_;
};

} // namespace

DiscreteIas discrete_ias(const AngularGrid &grid, const RelayRegion &region, const Baseline &baseline,
                         const channel::ChannelParams &params, const DiscreteIasOptions &options)
{
    params.validate();
    options.quadrature.validate();
    if (options.boundary_subdivisions < 1)
        throw DomainError("discrete_ias: boundary subdivisions must be >= 1");
    geometry::validate_region_side(region, baseline);

    DiscreteIas out;
    out.grid = grid;
    out.values.assign(grid.rows() * grid.cols(), 0.0);
    out.masses.assign(grid.rows() * grid.cols(), 0.0);

    const CellIntegrator integrator(region, baseline, &params, options);
    for (int i = grid.i_min; i <= grid.i_max; ++i)
        for (int j = grid.j_min; j <= grid.j_max; ++j)
        {
            const numerics::Rectangle cell{grid.aod(i) - 0.5 * grid.d_aod, grid.aod(i) + 0.5 * grid.d_aod,
                                           grid.aoa(j) - 0.5 * grid.d_aoa, grid.aoa(j) + 0.5 * grid.d_aoa};
            const auto r = integrator.integrate(cell);
            if (r.mass < options.mass_floor)
                continue;
            out.masses[out.index(i, j)] = r.mass;
            out.values[out.index(i, j)] = r.weighted_capacity / r.mass;
        }
    return out;
}

double cell_probability(const numerics::Rectangle &cell, const RelayRegion &region, const Baseline &baseline,
                        const DiscreteIasOptions &options)
{
    options.quadrature.validate();
    if (options.boundary_subdivisions < 1)
        throw DomainError("cell_probability: boundary subdivisions must be >= 1");
    geometry::validate_region_side(region, baseline);
    return CellIntegrator(region, baseline, nullptr, options).integrate(cell).mass;
}

} // namespace relaytomo::ias
