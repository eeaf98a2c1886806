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

#include "scene.hpp"

#include <relaytomo/geometry.hpp>

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace relaytomo;
using namespace relaytomo::geometry;
using scene::deg;

TEST_CASE("angles_from_point")
{
    const auto b = scene::baseline();
    const auto a = angles_from_point(b, scene::centroid);
    CHECK(a.aod == doctest::Approx(std::numbers::pi / 6).epsilon(1e-14));
    CHECK(a.aoa == doctest::Approx(std::numbers::pi / 6).epsilon(1e-14));

    const auto r = angles_from_point(b, {0.0, 10.0});
    CHECK(r.aoa == doctest::Approx(std::numbers::pi / 2).epsilon(1e-14));
    CHECK(r.aod == doctest::Approx(std::atan2(10.0, 100.0 * scene::sqrt3)).epsilon(1e-14));
    CHECK(rad_to_deg(r.aod) == doctest::Approx(3.304).epsilon(1e-3));

    CHECK_THROWS_AS(angles_from_point(b, {50.0, 0.0}), DegenerateGeometryError);
    CHECK_THROWS_AS(angles_from_point(b, {-30.0, 0.0}), DegenerateGeometryError);
    CHECK_THROWS_AS(angles_from_point(b, {500.0, 1e-12}), DegenerateGeometryError);
}

TEST_CASE("point_from_angles")
{
    const auto p = point_from_angles(scene::baseline(), {deg(30), deg(30)});
    CHECK(p.x == doctest::Approx(50.0 * scene::sqrt3).epsilon(1e-14));
    CHECK(p.y == doctest::Approx(50.0).epsilon(1e-14));

    const Baseline unit({2.0, 0.0}, {0.0, 0.0});
    const auto q = point_from_angles(unit, {deg(45), deg(45)});
    CHECK(q.x == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(q.y == doctest::Approx(1.0).epsilon(1e-14));

    CHECK_THROWS_AS(point_from_angles(unit, {deg(90), deg(90)}), DegenerateGeometryError);
    CHECK_THROWS_AS(point_from_angles(unit, {0.0, deg(10)}), DegenerateGeometryError);
    CHECK_THROWS_AS(point_from_angles(unit, {deg(100), std::numbers::pi - deg(100) - 1e-10}), DegenerateGeometryError);
}

TEST_CASE("round trips between points and angles")
{
    std::mt19937_64 gen(3);
    // a rotated, translated baseline exercises the frame transform as well
    const Baseline b({40.0, -25.0}, {-60.0, 80.0});
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 10'000; ++t)
    {
        // points in the upper half of the local frame, away from the baseline line
        const Point local{-100.0 + 400.0 * u(gen), 1.0 + 200.0 * u(gen)};
        const Point p = b.from_local(local);
        const Point back = point_from_angles(b, angles_from_point(b, p));
        CHECK(distance(p, back) < 1e-9);

        const double aod = 0.01 + 3.0 * u(gen);
        const double aoa = 0.01 + (std::numbers::pi - 0.02 - aod) * u(gen);
        if (!(aoa > 0.01))
            continue;
        const auto again = angles_from_point(b, point_from_angles(b, {aod, aoa}));
        CHECK(std::abs(again.aod - aod) < 1e-9);
        CHECK(std::abs(again.aoa - aoa) < 1e-9);
    }
}

TEST_CASE("law-of-sines distances")
{
    const auto b = scene::baseline();
    CHECK(dist_relay_destination(b, {deg(30), deg(30)}) == doctest::Approx(100.0).epsilon(1e-14));
    CHECK(dist_source_relay(b, {deg(30), deg(30)}) == doctest::Approx(100.0).epsilon(1e-14));

    const Baseline unit({1.0, 0.0}, {0.0, 0.0});
    CHECK(dist_relay_destination(unit, {deg(90), deg(45)}) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));

    // with the AOD fixed, the relay collapses onto S as the AOA shrinks
    double prev = dist_source_relay(b, {deg(40), deg(10)});
    for (double psi : {1.0, 0.1, 0.01, 0.001})
    {
        const double d = dist_source_relay(b, {deg(40), deg(psi)});
        CHECK(d < prev);
        prev = d;
    }
    CHECK(prev < 0.01);

    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 10'000; ++t)
    {
        const double aod = 0.01 + 3.0 * u(gen);
        const double aoa = 0.005 + (std::numbers::pi - 0.01 - aod) * u(gen);
        if (aod + aoa >= std::numbers::pi - 1e-6)
            continue;
        const AnglePair a{aod, aoa};
        const Point p = point_from_angles(b, a);
        CHECK(std::abs(dist_relay_destination(b, a) - distance(p, b.destination())) < 1e-9);
        CHECK(std::abs(dist_source_relay(b, a) - distance(p, b.source())) < 1e-9);
    }
}

TEST_CASE("discretize_region")
{
    const auto one = discretize_region(RelayRegion({{0.0, 0.0}, 1.0}), 2.0);
    REQUIRE(one.size() == 1);
    CHECK(one.cells[0] == Point{0.0, 0.0});

    const auto region = scene::region();
    const auto grid = discretize_region(region, 5.0);
    const double covered = static_cast<double>(grid.size()) * 25.0;
    CHECK(std::abs(covered - region.area()) / region.area() < 0.03);
    for (std::size_t w = 0; w < grid.size(); ++w)
    {
        CHECK(region.contains(grid.cells[w]));
        // every cell maps to a valid angle pair
        CHECK_NOTHROW(angles_from_point(scene::baseline(), grid.cells[w]));
        if (w > 0)
        {
            const Point a = grid.cells[w - 1], c = grid.cells[w];
            CHECK((a.y < c.y || (a.y == c.y && a.x < c.x)));
        }
    }
    CHECK(grid.nearest(scene::centroid + Point{1.0, -2.0}) == grid.nearest(scene::centroid));
    CHECK(grid.cells[grid.nearest(scene::centroid)] == scene::centroid);

    CHECK_THROWS_AS(discretize_region(region, 81.0), EmptyGridError);
    CHECK_THROWS_AS(discretize_region(region, 0.0), DomainError);
}

TEST_CASE("angular_span")
{
    const auto region = scene::region();
    const double half = rad_to_deg(std::asin(0.4));
    const auto at_s = angular_span(region, scene::source, scene::destination - scene::source, Rotation::clockwise);
    CHECK(rad_to_deg(at_s.min) == doctest::Approx(30.0 - half).epsilon(1e-12));
    CHECK(rad_to_deg(at_s.max) == doctest::Approx(30.0 + half).epsilon(1e-12));
    CHECK(rad_to_deg(at_s.min) == doctest::Approx(6.42).epsilon(1e-3));
    CHECK(rad_to_deg(at_s.max) == doctest::Approx(53.58).epsilon(1e-3));

    const auto at_d = angular_span(region, scene::destination, scene::source - scene::destination);
    CHECK(at_d.min == doctest::Approx(at_s.min).epsilon(1e-12));
    CHECK(at_d.max == doctest::Approx(at_s.max).epsilon(1e-12));

    const auto ahead = angular_span(RelayRegion({{2.0, 0.0}, 1.0}), {0.0, 0.0}, {1.0, 0.0});
    CHECK(rad_to_deg(ahead.min) == doctest::Approx(-30.0).epsilon(1e-12));
    CHECK(rad_to_deg(ahead.max) == doctest::Approx(30.0).epsilon(1e-12));

    numerics::RngStream rng(8, 0);
    for (int t = 0; t < 10'000; ++t)
    {
        const Point p = region.sample(rng);
        const double a = signed_angle(scene::source - scene::destination, p - scene::destination);
        CHECK(a >= at_d.min);
        CHECK(a <= at_d.max);
    }

    CHECK_THROWS_AS(angular_span(region, scene::centroid, {1.0, 0.0}), DomainError);
}

TEST_CASE("relay region")
{
    const auto region = scene::region();
    numerics::RngStream rng(2, 0);
    for (int t = 0; t < 1000; ++t)
        CHECK(region.contains(region.sample(rng)));
    CHECK(region.density(scene::centroid) == doctest::Approx(1.0 / (std::numbers::pi * 1600.0)));
    CHECK(region.density({0.0, 0.0}) == 0.0);
    CHECK_THROWS_AS(RelayRegion({{0.0, 0.0}, 0.0}), DomainError);

    CHECK_NOTHROW(validate_region_side(region, scene::baseline()));
    // touching the baseline line or lying below it is rejected
    CHECK_THROWS_AS(validate_region_side(RelayRegion({{80.0, 40.0}, 40.0}), scene::baseline()),
                    DegenerateGeometryError);
    CHECK_THROWS_AS(validate_region_side(RelayRegion({{80.0, -50.0}, 40.0}), scene::baseline()),
                    DegenerateGeometryError);
    CHECK_THROWS_AS(Baseline({1.0, 1.0}, {1.0, 1.0}), DegenerateGeometryError);
}
