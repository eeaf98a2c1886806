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

// Scene shared by the test suites: the two-hop layout with the relay disc above the baseline.
#ifndef RELAYTOMO_TESTS_SCENE_HPP
#define RELAYTOMO_TESTS_SCENE_HPP

#include <relaytomo/channel.hpp>
#include <relaytomo/geometry.hpp>
#include <relaytomo/measurement.hpp>

#include <cmath>
#include <numbers>
#include <vector>

namespace scene
{

using relaytomo::geometry::Point;

inline const double sqrt3 = std::sqrt(3.0);
inline const Point source{100.0 * sqrt3, 0.0};
inline const Point destination{0.0, 0.0};
inline const Point centroid{50.0 * sqrt3, 50.0};
inline constexpr double radius = 40.0;

inline relaytomo::geometry::Baseline baseline() { return {source, destination}; }
inline relaytomo::geometry::RelayRegion region() { return relaytomo::geometry::RelayRegion({centroid, radius}); }
inline relaytomo::channel::ChannelParams params() { return {1000.0, 1.0, -3.0, 0.01}; }

inline double deg(double d) { return d * std::numbers::pi / 180.0; }

// Three nodes `standoff` meters from the centroid at bearings -30, -150 and 90 degrees.
inline std::vector<Point> nodes(double standoff = 55.0)
{
    std::vector<Point> out;
    for (double b : {-30.0, -150.0, 90.0})
        out.push_back({centroid.x + standoff * std::cos(deg(b)), centroid.y + standoff * std::sin(deg(b))});
    return out;
}

inline relaytomo::measurement::MeasurementNetwork network(double standoff = 55.0)
{
    return {nodes(standoff), deg(10.0), region()};
}

} // namespace scene

#endif
