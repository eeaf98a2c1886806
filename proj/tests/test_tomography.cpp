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

#include <relaytomo/tomography.hpp>

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

using namespace relaytomo;
using namespace relaytomo::tomography;
using geometry::Point;
using measurement::MeasurementSet;
using measurement::PathRecord;
using scene::deg;

namespace
{

long hand_bin(Point node, Point centroid, Point x, double res)
{
    double a = std::atan2(x.y - node.y, x.x - node.x) - std::atan2(centroid.y - node.y, centroid.x - node.x);
    while (a > std::numbers::pi)
        a -= 2.0 * std::numbers::pi;
    while (a <= -std::numbers::pi)
        a += 2.0 * std::numbers::pi;
    return std::lround(a / res);
}

// Noise-free measurements: every pair reports the true bin and the exact outage capacity of x.
MeasurementSet exact_set(const measurement::MeasurementNetwork &net, const std::vector<Point> &relays,
                         const channel::ChannelParams &p)
{
    MeasurementSet set(net.size(), relays.size(), 1, 10.0);
    for (std::size_t l = 0; l < relays.size(); ++l)
        for (std::size_t row = 0; row < set.pairs().size(); ++row)
        {
            const auto pair = set.pairs()[row];
            const Point a = net.nodes()[pair.from], b = net.nodes()[pair.to];
            const double c = channel::outage_capacity({geometry::distance(a, relays[l]), geometry::distance(relays[l], b)}, p);
            set.insert({row, l, hand_bin(b, scene::centroid, relays[l], deg(10)), c, {c}});
        }
    return set;
}

double recovered(const std::vector<LocalizationResult> &res, const std::vector<std::size_t> &truth)
{
    std::size_t hits = 0;
    for (std::size_t l = 0; l < res.size(); ++l)
        hits += res[l].cell && *res[l].cell == truth[l];
    return static_cast<double>(hits) / static_cast<double>(res.size());
}

} // namespace

TEST_CASE("mode and decision names")
{
    for (auto m : {Mode::argmin, Mode::msprt})
        CHECK(parse_mode(to_string(m)) == m);
    for (auto k : {DecisionKind::threshold, DecisionKind::forced_map, DecisionKind::argmin, DecisionKind::unlocalized})
        CHECK(parse_decision_kind(to_string(k)) == k);
    CHECK_THROWS(parse_mode("map"));
}

TEST_CASE("feasible cells follow the measured bins")
{
    const auto net = scene::network();
    const auto grid = geometry::discretize_region(scene::region(), 5.0);
    const CellBearings bearings(net, grid);
    numerics::RngStream rng(5, 1);
    std::size_t contained = 0;
    for (int t = 0; t < 100; ++t)
    {
        const Point relay = scene::region().sample(rng);
        const auto set = simulate_measurements(net, std::vector<Point>{relay}, scene::params(), 1, rng.split(t));
        const auto cells = feasible_cells(set, 0, bearings, set.resolution());
        REQUIRE(std::is_sorted(cells.begin(), cells.end()));

        const auto agrees = [&](std::size_t w) {
            for (const auto *r : set.records_for_relay(0))
            {
                const std::size_t q = set.pairs()[r->pair].to;
                if (hand_bin(net.nodes()[q], scene::centroid, grid.cells[w], deg(10)) != r->aoa_index)
                    return false;
            }
            return true;
        };
        for (std::size_t w = 0; w < grid.size(); ++w)
            CHECK(agrees(w) == std::binary_search(cells.begin(), cells.end(), w));
        const std::size_t truth = grid.nearest(relay);
        contained += std::binary_search(cells.begin(), cells.end(), truth);
    }
    CHECK(contained > 50);

    SUBCASE("a single pair constrains only its receiving node")
    {
        MeasurementSet set(3, 1, 1, 10.0);
        set.insert({set.pair_row({0, 1}), 0, 1, 1.0, {1.0}});
        const auto cells = feasible_cells(set, 0, net, grid);
        std::size_t expected = 0;
        for (const auto &c : grid.cells)
            expected += hand_bin(net.nodes()[1], scene::centroid, c, deg(10)) == 1;
        CHECK(cells.size() == expected);
        CHECK(expected > 0);
    }
    SUBCASE("contradictory bins leave nothing")
    {
        MeasurementSet set(3, 1, 1, 10.0);
        set.insert({set.pair_row({0, 1}), 0, 3, 1.0, {1.0}});
        set.insert({set.pair_row({0, 2}), 0, 3, 1.0, {1.0}});
        set.insert({set.pair_row({1, 0}), 0, 3, 1.0, {1.0}});
        CHECK(feasible_cells(set, 0, net, grid).empty());
        const auto res = localize_all(set, net, grid, scene::params(), {});
        REQUIRE(res.size() == 1);
        CHECK(res[0].kind == DecisionKind::unlocalized);
        CHECK_FALSE(res[0].cell);
        CHECK(score_within(res, std::vector<Point>{scene::centroid}, 100.0) == 0.0);
    }
    SUBCASE("tolerance widens the set")
    {
        const auto set = simulate_measurements(net, std::vector<Point>{scene::centroid + Point{7, 3}}, scene::params(),
                                               1, rng);
        const auto tight = feasible_cells(set, 0, net, grid);
        const auto loose = feasible_cells(set, 0, net, grid, deg(3));
        CHECK(loose.size() > tight.size());
        CHECK(std::includes(loose.begin(), loose.end(), tight.begin(), tight.end()));
    }
    CHECK(feasible_cells(MeasurementSet(3, 1, 1, 10.0), 0, net, grid).empty());
}

TEST_CASE("argmin localization")
{
    const auto net = scene::network();
    const auto grid = geometry::discretize_region(scene::region(), 5.0);
    const auto p = scene::params();

    std::vector<std::size_t> truth;
    std::vector<Point> relays;
    for (std::size_t w = 0; w < grid.size(); w += 2)
    {
        truth.push_back(w);
        relays.push_back(grid.cells[w]);
    }
    TomographyConfig cfg;
    cfg.mode = Mode::argmin;
    const auto exact = localize_all(exact_set(net, relays, p), net, grid, p, cfg);
    const double exact_rate = recovered(exact, truth);
    CHECK(exact_rate >= 0.99);
    for (const auto &r : exact)
        if (r.cell && *r.cell == truth[r.relay])
        {
            CHECK(r.e2 == doctest::Approx(0.0).epsilon(1e-12));
            CHECK(r.kind == DecisionKind::argmin);
        }

    const auto noisy = simulate_measurements(net, relays, p, 10, numerics::RngStream(8, 2));
    CHECK(recovered(localize_all(noisy, net, grid, p, cfg), truth) < exact_rate);

    SUBCASE("single candidate")
    {
        const std::vector<std::size_t> one{truth[3]};
        const auto r = localize_argmin(one, exact_set(net, relays, p), 3, net, grid, p);
        CHECK(r.cell == truth[3]);
        CHECK(r.candidates == 1);
        CHECK(r.e2 == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(r.e1 <= std::sqrt(6.0) * deg(5));
    }
    CHECK_THROWS_AS(localize_argmin(std::vector<std::size_t>{}, noisy, 0, net, grid, p), DomainError);
    CHECK_THROWS_AS(localize_argmin(std::vector<std::size_t>{grid.size()}, noisy, 0, net, grid, p), DomainError);
}

TEST_CASE("sequential test")
{
    const auto net = scene::network();
    const auto grid = geometry::discretize_region(scene::region(), 5.0);
    const auto p = scene::params();
    numerics::RngStream rng(12, 1);
    std::vector<Point> relays;
    for (int l = 0; l < 20; ++l)
        relays.push_back(scene::region().sample(rng));
    const auto set = simulate_measurements(net, relays, p, 30, numerics::RngStream(12, 2));
    const CellBearings bearings(net, grid);

    SUBCASE("a lone candidate is accepted before any observation")
    {
        const std::vector<std::size_t> one{42};
        const auto r = msprt_localize(one, set, 0, net, grid, p, {});
        CHECK(r.kind == DecisionKind::threshold);
        CHECK(r.stop_observation == 0);
        CHECK(r.cell == 42u);
    }
    SUBCASE("stricter error bounds never stop earlier")
    {
        for (std::size_t l = 0; l < relays.size(); ++l)
        {
            const auto cand = feasible_cells(set, l, bearings, set.resolution());
            if (cand.empty())
                continue;
            MsprtConfig loose, strict;
            loose.epsilon = 0.1;
            strict.epsilon = 1e-4;
            const auto a = msprt_localize(cand, set, l, net, grid, p, loose);
            const auto b = msprt_localize(cand, set, l, net, grid, p, strict);
            CHECK(b.stop_observation >= a.stop_observation);
            if (a.kind == DecisionKind::forced_map)
                CHECK(b.kind == DecisionKind::forced_map);
        }
    }
    SUBCASE("a common prior offset does not change the decision")
    {
        for (std::size_t l = 0; l < relays.size(); ++l)
        {
            const auto cand = feasible_cells(set, l, bearings, set.resolution());
            if (cand.empty())
                continue;
            MsprtConfig uniform, on_candidates;
            uniform.priors.assign(grid.size(), 1.0 / static_cast<double>(grid.size()));
            on_candidates.priors.assign(grid.size(), 0.0);
            for (auto w : cand)
                on_candidates.priors[w] = 1.0 / static_cast<double>(cand.size());
            const auto base = msprt_localize(cand, set, l, net, grid, p, {});
            const auto u = msprt_localize(cand, set, l, net, grid, p, uniform);
            const auto c = msprt_localize(cand, set, l, net, grid, p, on_candidates);
            CHECK(u.cell == base.cell);
            CHECK(c.cell == base.cell);
            CHECK(u.kind == base.kind);
            CHECK(c.kind == base.kind);
            CHECK(u.stop_observation == base.stop_observation);
            CHECK(c.stop_observation == base.stop_observation);
        }
    }
    SUBCASE("observation cap")
    {
        MsprtConfig cfg;
        cfg.epsilon = 1e-9;
        cfg.max_observations = 4;
        const auto cand = feasible_cells(set, 1, bearings, set.resolution());
        REQUIRE(cand.size() > 1);
        const auto r = msprt_localize(cand, set, 1, net, grid, p, cfg);
        CHECK(r.stop_observation <= 4);
    }
    SUBCASE("configuration checks")
    {
        const std::vector<std::size_t> cand{1, 2};
        MsprtConfig bad;
        bad.priors.assign(3, 1.0 / 3.0);
        CHECK_THROWS_AS(msprt_localize(cand, set, 0, net, grid, p, bad), DomainError);
        bad.priors.assign(grid.size(), 0.0);
        CHECK_THROWS_AS(msprt_localize(cand, set, 0, net, grid, p, bad), DomainError);
        bad.priors[0] = 2.0;
        bad.priors[1] = -1.0;
        CHECK_THROWS_AS(msprt_localize(cand, set, 0, net, grid, p, bad), DomainError);
        MsprtConfig eps;
        eps.epsilon = 0.0;
        CHECK_THROWS_AS(msprt_localize(cand, set, 0, net, grid, p, eps), DomainError);
        eps.epsilon = 0.01;
        eps.epsilon_matrix.assign(4, 0.01);
        CHECK_THROWS_AS(msprt_localize(cand, set, 0, net, grid, p, eps), DomainError);
        eps.epsilon_matrix.assign(grid.size() * grid.size(), 0.01);
        eps.epsilon_matrix[1] = 1.0;
        CHECK_THROWS_AS(msprt_localize(cand, set, 0, net, grid, p, eps), DomainError);
    }
}

TEST_CASE("mirror-image hypotheses tie and resolve to the lower index")
{
    // nodes on the horizontal line through the centroid cannot tell a cell from its reflection
    const Point c = scene::centroid;
    const measurement::MeasurementNetwork net({c + Point{-60, 0}, c + Point{60, 0}, c + Point{80, 0}}, deg(10),
                                              scene::region());
    geometry::CellGrid grid;
    grid.cell_side = 5.0;
    grid.cells = {c + Point{5, 10}, c + Point{5, -10}};
    const auto set = simulate_measurements(net, std::vector<Point>{c + Point{5, -10}}, scene::params(), 20,
                                           numerics::RngStream(4, 2));
    for (const auto &cand : {std::vector<std::size_t>{0, 1}, std::vector<std::size_t>{1, 0}})
    {
        const auto r = msprt_localize(cand, set, 0, net, grid, scene::params(), {});
        CHECK(r.kind == DecisionKind::forced_map);
        CHECK(r.stop_observation == 20);
        CHECK(r.cell == 0u);
        CHECK_FALSE(r.degenerate);
    }
}

TEST_CASE("zero-likelihood observations fall back to the first candidate")
{
    const auto net = scene::network();
    const auto grid = geometry::discretize_region(scene::region(), 5.0);
    // with m = 2 a capacity of exactly zero has zero density under every hypothesis
    const channel::ChannelParams p{1000.0, 2.0, -3.0, 0.01};
    MeasurementSet set(3, 1, 3, 10.0);
    for (std::size_t row = 0; row < 6; ++row)
        set.insert({row, 0, 0, 0.0, {0.0, 0.0, 0.0}});
    const std::vector<std::size_t> cand{7, 3, 11};
    const auto r = msprt_localize(cand, set, 0, net, grid, p, {});
    CHECK(r.degenerate);
    CHECK(r.kind == DecisionKind::forced_map);
    CHECK(r.stop_observation == 1);
    CHECK(r.cell == 3u);
}

TEST_CASE("localize_all and the report file")
{
    const auto net = scene::network();
    const auto grid = geometry::discretize_region(scene::region(), 5.0);
    const auto p = scene::params();
    CHECK(localize_all(MeasurementSet(3, 0, 10, 10.0), net, grid, p, {}).empty());

    numerics::RngStream rng(21, 1);
    std::vector<Point> relays;
    for (int l = 0; l < 6; ++l)
        relays.push_back(scene::region().sample(rng));
    const auto set = simulate_measurements(net, relays, p, 10, numerics::RngStream(21, 2));
    TomographyConfig cfg;
    cfg.capacity_tolerance = 1e-9;
    const auto res = localize_all(set, net, grid, p, cfg);
    REQUIRE(res.size() == relays.size());
    CHECK(localize_all(set, net, grid, p, cfg) == res);
    for (const auto &r : res)
        if (r.cell)
        {
            CHECK(r.capacity_flagged == (r.e2 > 1e-9));
            CHECK(r.estimate == grid.cells[*r.cell]);
        }

    auto with_gap = res;
    with_gap[2] = LocalizationResult{};
    with_gap[2].relay = 2;
    std::stringstream io;
    write_report(io, with_gap);
    CHECK(io.str().rfind("# relaytomo localization v1\n", 0) == 0);
    const auto back = read_report(io);
    CHECK(back == with_gap);
    std::ostringstream again;
    write_report(again, back);
    CHECK(again.str() == io.str());

    const double s = score_within(res, relays, 5.0);
    CHECK(s >= 0.0);
    CHECK(s <= 1.0);
    CHECK(score_within(res, relays, 1e9) ==
          static_cast<double>(std::count_if(res.begin(), res.end(), [](const auto &r) { return r.cell.has_value(); })) /
              6.0);
    CHECK_THROWS_AS(score_within(res, std::vector<Point>{}, 5.0), DomainError);
}
