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

#include <relaytomo/geometry.hpp>

#include <limits>

namespace relaytomo::geometry
{

Baseline::Baseline(Point source, Point destination)
    : source_(source), destination_(destination), length_(distance(source, destination))
{
    if (!std::isfinite(source.x) || !std::isfinite(source.y) || !std::isfinite(destination.x) ||
        !std::isfinite(destination.y))
        throw DomainError("Baseline: coordinates must be finite");
    if (!(length_ > 0.0))
        throw DegenerateGeometryError("Baseline: source and destination coincide");
    ex_ = (1.0 / length_) * (source - destination);
    ey_ = {-ex_.y, ex_.x};
}

Point Baseline::to_local(Point p) const
{
    const Point v = p - destination_;
    return {dot(v, ex_), dot(v, ey_)};
}

Point Baseline::from_local(Point p) const { return destination_ + p.x * ex_ + p.y * ey_; }

RelayRegion::RelayRegion(Disc disc) : disc_(disc)
{
    if (!(disc.radius > 0.0) || !std::isfinite(disc.radius))
        throw DomainError("RelayRegion: radius must be positive");
    if (!std::isfinite(disc.center.x) || !std::isfinite(disc.center.y))
        throw DomainError("RelayRegion: center must be finite");
}

bool RelayRegion::contains(Point p) const { return distance(p, disc_.center) <= disc_.radius; }

Point RelayRegion::sample(numerics::RngStream &rng) const
{
    const double r = disc_.radius;
    for (;;)
    {
        const double u = 2.0 * rng.uniform() - 1.0;
        const double v = 2.0 * rng.uniform() - 1.0;
        if (u * u + v * v < 1.0)
            return {disc_.center.x + r * u, disc_.center.y + r * v};
    }
}

void validate_region_side(const RelayRegion &region, const Baseline &baseline)
{
    const Point c = baseline.to_local(region.disc().center);
    if (!(c.y - region.disc().radius > 0.0))
        throw DegenerateGeometryError(
            "relay region must lie strictly on the upper side of the source-destination line");
}

std::size_t CellGrid::nearest(Point p) const
{
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t w = 0; w < cells.size(); ++w)
    {
        const double d = distance(cells[w], p);
        if (d < best_d)
        {
            best_d = d;
            best = w;
        }
    }
    return best;
}

AnglePair angles_from_point(const Baseline &baseline, Point relay)
{
    const Point p = baseline.to_local(relay);
    const double h = std::abs(p.y);
    const AnglePair angles{std::atan2(h, baseline.length() - p.x), std::atan2(h, p.x)};
    if (angles.aod < degeneracy_tolerance || angles.aoa < degeneracy_tolerance ||
        std::numbers::pi - (angles.aod + angles.aoa) < degeneracy_tolerance)
        throw DegenerateGeometryError("angles_from_point: relay is collinear with the baseline");
    return angles;
}

namespace
{
double checked_sum_sine(const AnglePair &a)
{
    if (!(a.aod > 0.0) || !(a.aoa > 0.0) || a.aod + a.aoa >= std::numbers::pi - degeneracy_tolerance)
        throw DegenerateGeometryError("angle pair violates the triangle condition");
    return std::sin(a.aod + a.aoa);
}
} // namespace

Point point_from_angles(const Baseline &baseline, const AnglePair &angles)
{
    const double d_rd = baseline.length() * std::sin(angles.aod) / checked_sum_sine(angles);
    return baseline.from_local({d_rd * std::cos(angles.aoa), d_rd * std::sin(angles.aoa)});
}

double dist_relay_destination(const Baseline &baseline, const AnglePair &angles)
{
    return baseline.length() * std::sin(angles.aod) / checked_sum_sine(angles);
}

double dist_source_relay(const Baseline &baseline, const AnglePair &angles)
{
    return baseline.length() * std::sin(angles.aoa) / checked_sum_sine(angles);
}

CellGrid discretize_region(const RelayRegion &region, double cell_side)
{
    if (!(cell_side > 0.0) || !std::isfinite(cell_side))
        throw DomainError("discretize_region: cell side must be positive");
    const double r = region.disc().radius;
    if (cell_side > 2.0 * r)
        throw EmptyGridError("discretize_region: cell side exceeds the region diameter");

    const int k = std::max(0, static_cast<int>(std::ceil(r / cell_side - 0.5)));
    CellGrid grid;
    grid.cell_side = cell_side;
    const Point c = region.centroid();
    for (int row = -k; row <= k; ++row)
        for (int col = -k; col <= k; ++col)
        {
            const Point p{c.x + col * cell_side, c.y + row * cell_side};
            if (region.contains(p))
                grid.cells.push_back(p);
        }
    if (grid.cells.empty())
        throw EmptyGridError("discretize_region: no cell center falls inside the region");
    return grid;
}

AngularInterval angular_span(const RelayRegion &region, Point node, Point reference_ray, Rotation sense)
{
    const Point to_center = region.centroid() - node;
    const double d = norm(to_center);
    if (d <= region.disc().radius)
        throw DomainError("angular_span: node lies inside the region");
    if (norm(reference_ray) == 0.0)
        throw DomainError("angular_span: reference ray has zero length");
    double center = signed_angle(reference_ray, to_center);
    if (sense == Rotation::clockwise)
        center = -center;
    const double half = std::asin(region.disc().radius / d);
    return {center - half, center + half};
}

} // namespace relaytomo::geometry
