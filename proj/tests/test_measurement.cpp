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

#include <relaytomo/measurement.hpp>

#include <doctest.h>

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

using namespace relaytomo;
using namespace relaytomo::measurement;
using geometry::Point;
using scene::deg;

namespace
{

std::string slurp(const std::string &path)
{
    std::ifstream in(path);
    REQUIRE(in);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

// Bearing of `to` seen from `node`, relative to the ray node -> centroid, wrapped to (-pi, pi].
double hand_bearing(Point node, Point to)
{
    double a = std::atan2(to.y - node.y, to.x - node.x) -
               std::atan2(scene::centroid.y - node.y, scene::centroid.x - node.x);
    while (a > std::numbers::pi)
        a -= 2.0 * std::numbers::pi;
    while (a <= -std::numbers::pi)
        a += 2.0 * std::numbers::pi;
    return a;
}

MeasurementSet golden_set()
{
    MeasurementSet set(3, 2, 2, 10.0);
    set.insert({set.pair_row({2, 1}), 0, 0, 2.0, {2.0, 2.5}});
    set.insert({set.pair_row({0, 1}), 1, 4, 0.1, {0.1, 3e-06}});
    set.insert({set.pair_row({0, 1}), 0, -3, 0.125, {0.125, 1.5}});
    return set;
}

} // namespace

TEST_CASE("quantize_angle")
{
    const auto a = quantize_angle(deg(33), deg(10));
    CHECK(a.index == 3);
    CHECK(a.angle == doctest::Approx(deg(30)));
    const auto tie = quantize_angle(deg(35), deg(10));
    CHECK(tie.index == 4);
    CHECK(tie.angle == doctest::Approx(deg(40)));
    CHECK(quantize_angle(deg(-35), deg(10)).index == -4);
    CHECK(quantize_angle(deg(6.42), deg(10)).index == 1);
    CHECK_THROWS_AS(quantize_angle(1.0, 0.0), DomainError);

    numerics::RngStream rng(1, 0);
    for (int t = 0; t < 100'000; ++t)
    {
        const double theta = (rng.uniform() - 0.5) * 2.0 * std::numbers::pi;
        const double step = deg(0.5 + 20.0 * rng.uniform());
        const auto q = quantize_angle(theta, step);
        CHECK(std::abs(theta - q.angle) <= 0.5 * step * (1.0 + 1e-12));
    }
}

TEST_CASE("estimate_outage_capacity")
{
    std::vector<double> hundred(100);
    for (int k = 0; k < 100; ++k)
        hundred[k] = 100.0 - k;
    CHECK(estimate_outage_capacity(hundred, 0.01) == 1.0);
    CHECK(estimate_outage_capacity(hundred, 0.5) == 50.0);
    const std::vector<double> ten{5, 3, 9, 1.5, 7, 8, 2, 6, 4, 10};
    CHECK(estimate_outage_capacity(ten, 0.01) == 1.5);
    const std::vector<double> one{0.25};
    CHECK(estimate_outage_capacity(one, 0.3) == 0.25);
    CHECK_THROWS_AS(estimate_outage_capacity(std::vector<double>{}, 0.01), DomainError);
}

TEST_CASE("empirical quantile approaches the outage capacity as samples accumulate")
{
    const auto p = scene::params();
    const channel::HopPair h{60.0, 45.0};
    const double exact = channel::outage_capacity(h, p);
    double prev = INFINITY;
    for (std::size_t n : {100u, 10'000u, 1'000'000u})
    {
        const int reps = n == 1'000'000u ? 2 : 20;
        double err = 0.0;
        for (int r = 0; r < reps; ++r)
        {
            numerics::RngStream rng(31, static_cast<std::uint64_t>(r));
            std::vector<double> x(n);
            for (auto &v : x)
                v = channel::sample_instant_capacity(h, p, rng);
            err += std::abs(estimate_outage_capacity(x, p.p_out) - exact) / exact;
        }
        err /= reps;
        CAPTURE(n);
        CHECK(err < prev);
        prev = err;
    }
    CHECK(prev < 0.03);
}

TEST_CASE("ordered pairs")
{
    const auto pairs = ordered_pairs(3);
    const std::vector<OrderedPair> expected{{0, 1}, {0, 2}, {1, 0}, {1, 2}, {2, 0}, {2, 1}};
    CHECK(pairs == expected);
    CHECK(ordered_pairs(5).size() == 20);
}

TEST_CASE("measurement network")
{
    const auto net = scene::network();
    CHECK(net.size() == 3);
    CHECK(net.bearing(0, scene::centroid) == doctest::Approx(0.0).epsilon(1e-15));
    const Point r = scene::centroid + Point{12.0, -7.0};
    for (std::size_t q = 0; q < 3; ++q)
        CHECK(net.bearing(q, r) == doctest::Approx(hand_bearing(net.nodes()[q], r)).epsilon(1e-13));
    // the disc subtends +-asin(40/55) from each node
    const auto [lo, hi] = net.scan_range(0);
    CHECK(lo == static_cast<long>(std::floor(-std::asin(40.0 / 55.0) / deg(10))));
    CHECK(hi == static_cast<long>(std::ceil(std::asin(40.0 / 55.0) / deg(10))));

    auto two = scene::nodes();
    two.pop_back();
    CHECK_THROWS_AS(MeasurementNetwork(two, deg(10), scene::region()), DomainError);
    auto inside = scene::nodes();
    inside[1] = scene::centroid;
    CHECK_THROWS_AS(MeasurementNetwork(inside, deg(10), scene::region()), DomainError);
    CHECK_THROWS_AS(MeasurementNetwork(scene::nodes(), 0.0, scene::region()), DomainError);
}

TEST_CASE("simulate_measurements")
{
    const auto net = scene::network();
    const auto p = scene::params();
    const std::vector<Point> relays{scene::centroid, scene::centroid + Point{12.0, -7.0},
                                    scene::centroid + Point{-30.0, 20.0}};
    const numerics::RngStream rng(17, 2);
    const auto set = simulate_measurements(net, relays, p, 10, rng);

    CHECK(set.records().size() == 6 * relays.size());
    CHECK(set.records_for_relay(0).size() == 6);
    for (std::size_t l = 0; l < relays.size(); ++l)
        for (std::size_t row = 0; row < set.pairs().size(); ++row)
        {
            const auto pair = set.pairs()[row];
            const auto *rec = set.find(row, l);
            REQUIRE(rec != nullptr);
            const double bearing = hand_bearing(net.nodes()[pair.to], relays[l]);
            CHECK(rec->aoa_index == std::lround(bearing / deg(10)));
            CHECK(std::abs(*set.aoa(row, l) - bearing) <= deg(5) + 1e-12);

            // reciprocity: the reverse pipeline carries the same draws
            const std::size_t back = set.pair_row({pair.to, pair.from});
            const auto *rev = set.find(back, l);
            REQUIRE(rev != nullptr);
            CHECK(*set.aod(row, l) == *set.aoa(back, l));
            CHECK(rec->capacity_estimate == rev->capacity_estimate);
            CHECK(rec->raw == rev->raw);
            for (double c : rec->raw)
            {
                CHECK(std::isfinite(c));
                CHECK(c >= 0.0);
            }
        }
    for (std::size_t o = 0; o < 10; ++o)
        CHECK(set.observation_vector(1, o).size() == 6);

    // relay at the centroid sits on every node's reference ray
    for (const auto *rec : set.records_for_relay(0))
        CHECK(rec->aoa_index == 0);

    CHECK(simulate_measurements(net, relays, p, 10, rng) == set);
    CHECK_FALSE(simulate_measurements(net, relays, p, 10, numerics::RngStream(18, 2)) == set);

    const auto single = simulate_measurements(net, relays, {1000.0, 1.0, -3.0, 0.37}, 1, rng);
    for (const auto &rec : single.records())
        CHECK(rec.capacity_estimate == rec.raw[0]);

    const std::vector<Point> outside{{0.0, 200.0}};
    CHECK_THROWS_AS(simulate_measurements(net, outside, p, 10, rng), DomainError);
    CHECK_THROWS_AS(simulate_measurements(net, relays, p, 0, rng), DomainError);
    CHECK(simulate_measurements(net, {}, p, 3, rng).records().empty());
}

TEST_CASE("measurement file format")
{
    const std::string golden = slurp(RELAYTOMO_GOLDEN_DIR "/measurements_v1.txt");
    std::ostringstream out;
    write_measurements(out, golden_set());
    CHECK(out.str() == golden);

    std::istringstream in(golden);
    CHECK(read_measurements(in) == golden_set());

    SUBCASE("simulated sets round-trip bit-exactly")
    {
        const std::vector<Point> relays{scene::centroid + Point{3.3, 9.1}, scene::centroid + Point{-21.0, -5.5}};
        const auto set = simulate_measurements(scene::network(), relays, scene::params(), 7, numerics::RngStream(3, 2));
        std::stringstream io;
        write_measurements(io, set);
        const auto back = read_measurements(io);
        CHECK(back == set);
        std::ostringstream again;
        write_measurements(again, back);
        CHECK(again.str() == io.str());
    }
    SUBCASE("malformed input names the line")
    {
        const auto error_line = [](std::string text) -> std::size_t {
            std::istringstream s(text);
            try
            {
                read_measurements(s);
            }
            catch (const ParseError &e)
            {
                return e.line();
            }
            return 0;
        };
        std::string text = golden;
        CHECK(error_line("# something else\n") == 1);
        CHECK(error_line(text.replace(text.find("0,1,1,40,0.1,0.1,3e-06"), 22, "0,1,1,40,0.1,0.1")) == 8);
        text = golden;
        CHECK(error_line(text.replace(text.find("2,2.5"), 5, "2,-2.5")) == 9);
        text = golden;
        CHECK(error_line(text.replace(text.find("0,1,0,-30"), 9, "0,0,0,-30")) == 7);
        text = golden;
        CHECK(error_line(text.replace(text.find("# relays 2"), 10, "# relays x")) == 3);
        text = golden;
        CHECK(error_line(text.replace(text.find("0.125,1.5"), 9, "0.125,1.5z")) == 7);
    }
}
