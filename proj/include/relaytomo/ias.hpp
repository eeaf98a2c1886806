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

#ifndef RELAYTOMO_IAS_HPP
#define RELAYTOMO_IAS_HPP

#include <relaytomo/channel.hpp>
#include <relaytomo/geometry.hpp>
#include <relaytomo/numerics.hpp>

#include <span>
#include <vector>

// Double-directional information azimuth spectrum: the per-relay flow atoms, the joint
// AOD-AOA density of a random relay population, and its discretisation on an angular grid.
namespace relaytomo::ias
{

struct FlowAtom
{
    std::size_t relay = 0;
    double aod = 0.0;      // radians
    double aoa = 0.0;      // radians
    double capacity = 0.0; // outage capacity, bits/s/Hz
};

// Outage capacity of the path through the relay seen at (aod, aoa).
double capacity_at(const geometry::Baseline &baseline, const geometry::AnglePair &angles,
                   const channel::ChannelParams &params);

// One atom per relay, in input order.
std::vector<FlowAtom> continuous_ias(std::span<const geometry::Point> relays, const geometry::Baseline &baseline,
                                     const channel::ChannelParams &params);

// Joint density of (AOD, AOA) induced by the region's relay density, per rad^2. Zero outside
// the image of the region and outside the open triangle set; throws DegenerateGeometryError when
// |sin(aod + aoa)| < 1e-12.
double joint_angle_pdf(double aod, double aoa, const geometry::RelayRegion &region,
                       const geometry::Baseline &baseline);

// Uniform sampling lattice: aod_i = i * d_aod for i_min <= i <= i_max, likewise for aoa.
struct AngularGrid
{
    double d_aod = 0.0;
    double d_aoa = 0.0;
    int i_min = 0;
    int i_max = 0;
    int j_min = 0;
    int j_max = 0;

    double aod(int i) const { return i * d_aod; }
    double aoa(int j) const { return j * d_aoa; }
    std::size_t rows() const { return static_cast<std::size_t>(i_max - i_min + 1); }
    std::size_t cols() const { return static_cast<std::size_t>(j_max - j_min + 1); }
    bool contains(int i, int j) const { return i >= i_min && i <= i_max && j >= j_min && j <= j_max; }
};

// Index ranges floor(min / delta) .. ceil(max / delta) of the angular spans of the region seen
// from the source (aod) and from the destination (aoa).
AngularGrid build_grid(const geometry::RelayRegion &region, const geometry::Baseline &baseline, double d_aod,
                       double d_aoa);

inline constexpr double default_mass_floor = 1e-12;

struct DiscreteIasOptions
{
    numerics::QuadratureSpec quadrature{};
    int boundary_subdivisions = 4; // AOD panels for cells cut by the support edge
    double mass_floor = default_mass_floor;
};

struct DiscreteIas
{
    AngularGrid grid;
    std::vector<double> values; // cell-averaged outage capacity, row-major in (i, j)
    std::vector<double> masses; // probability of each cell

    std::size_t index(int i, int j) const
    {
        return static_cast<std::size_t>(i - grid.i_min) * grid.cols() + static_cast<std::size_t>(j - grid.j_min);
    }
    double value(int i, int j) const { return values[index(i, j)]; }
    double mass(int i, int j) const { return masses[index(i, j)]; }
    bool nonempty(int i, int j) const { return grid.contains(i, j) && mass(i, j) > 0.0; }
    // Nonempty with all four edge neighbours nonempty.
    bool interior(int i, int j) const
    {
        return nonempty(i, j) && nonempty(i - 1, j) && nonempty(i + 1, j) && nonempty(i, j - 1) &&
               nonempty(i, j + 1);
    }
    double total_mass() const;
};

// Cell mass M_ij = integral of the joint pdf over the cell and value
// (1 / M_ij) * integral of capacity * pdf. Cells below the mass floor get value 0 and mass 0.
DiscreteIas discrete_ias(const AngularGrid &grid, const geometry::RelayRegion &region,
                         const geometry::Baseline &baseline, const channel::ChannelParams &params,
                         const DiscreteIasOptions &options = {});

// Probability that a relay drawn from the region maps into the AOD x AOA box (radians), using
// the same rule as discrete_ias.
double cell_probability(const numerics::Rectangle &cell, const geometry::RelayRegion &region,
                        const geometry::Baseline &baseline, const DiscreteIasOptions &options = {});

} // namespace relaytomo::ias

#endif
