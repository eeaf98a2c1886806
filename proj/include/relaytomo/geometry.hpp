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

#ifndef RELAYTOMO_GEOMETRY_HPP
#define RELAYTOMO_GEOMETRY_HPP

#include <relaytomo/errors.hpp>
#include <relaytomo/numerics.hpp>

#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

namespace relaytomo::geometry
{

// Collinearity tolerance for the relay triangle, radians.
inline constexpr double degeneracy_tolerance = 1e-9;

inline constexpr double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
inline constexpr double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

struct Point
{
    double x = 0.0; // meters
    double y = 0.0; // meters

    friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
    friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
    friend Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
    friend bool operator==(Point a, Point b) = default;
};

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
inline double distance(Point a, Point b) { return norm(a - b); }

// Signed angle rotating `from` onto `to`, counter-clockwise positive, in (-pi, pi].
inline double signed_angle(Point from, Point to) { return std::atan2(cross(from, to), dot(from, to)); }

// Source-destination pair. The relay network is taken to lie on the left of the
// destination -> source direction (the upper half-plane when D is the origin and S is on +x).
class Baseline
{
  public:
    Baseline(Point source, Point destination);

    Point source() const { return source_; }
    Point destination() const { return destination_; }
    double length() const { return length_; }

    // Coordinates in the frame with D at the origin and S on the positive x axis.
    Point to_local(Point p) const;
    Point from_local(Point p) const;

  private:
    Point source_;
    Point destination_;
    double length_;
    Point ex_; // unit vector D -> S
    Point ey_; // ex_ rotated by +90 degrees
};

// Unsigned interior angles of the triangle S-R-D: aod at the source, aoa at the destination.
struct AnglePair
{
    double aod = 0.0; // Omega, radians
    double aoa = 0.0; // Psi, radians

    bool satisfies_triangle() const
    {
        return aod > 0.0 && aoa > 0.0 && aod + aoa < std::numbers::pi;
    }
};

struct Disc
{
    Point center;
    double radius = 0.0;
};

// Disc-shaped relay region with uniform relay density.
class RelayRegion
{
  public:
    explicit RelayRegion(Disc disc);

    const Disc &disc() const { return disc_; }
    Point centroid() const { return disc_.center; }
    double area() const { return std::numbers::pi * disc_.radius * disc_.radius; }
    bool contains(Point p) const;

    // f_{x,y}; integrates to one over the disc and vanishes outside it.
    double density(Point p) const { return contains(p) ? 1.0 / area() : 0.0; }

    Point sample(numerics::RngStream &rng) const;

  private:
    Disc disc_;
};

// Throws DegenerateGeometryError unless the whole region lies strictly on the relay side of the
// baseline line (which in particular keeps it off the S-D segment).
void validate_region_side(const RelayRegion &region, const Baseline &baseline);

struct CellGrid
{
    std::vector<Point> cells; // centers, row-major (rows of increasing y, x increasing within a row)
    double cell_side = 0.0;

    std::size_t size() const { return cells.size(); }
    // Index of the cell whose center is nearest to p (lowest index on ties).
    std::size_t nearest(Point p) const;
};

AnglePair angles_from_point(const Baseline &baseline, Point relay);
Point point_from_angles(const Baseline &baseline, const AnglePair &angles);

// Law-of-sines hop lengths: d_RD = d_SD sin(Omega) / sin(Omega + Psi), d_SR = d_SD sin(Psi) / sin(Omega + Psi).
double dist_relay_destination(const Baseline &baseline, const AnglePair &angles);
double dist_source_relay(const Baseline &baseline, const AnglePair &angles);

// Square cells of the given side on a lattice with one cell centred on the region centroid,
// extended far enough to cover the bounding box. Only centres inside the region are kept.
CellGrid discretize_region(const RelayRegion &region, double cell_side);

enum class Rotation
{
    counter_clockwise,
    clockwise
};

struct AngularInterval
{
    double min = 0.0;
    double max = 0.0;
};

// Smallest interval of angles, measured from reference_ray in the given rotational sense, that
// contains every direction from `node` into the region.
AngularInterval angular_span(const RelayRegion &region, Point node, Point reference_ray,
                             Rotation sense = Rotation::counter_clockwise);

} // namespace relaytomo::geometry

#endif
