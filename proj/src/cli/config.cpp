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

#include <relaytomo/cli/config.hpp>

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

namespace relaytomo::cli
{

using geometry::Point;

ConfigError::ConfigError(const std::string &source, std::size_t line, const std::string &what)
    : std::runtime_error(source + (line > 0 ? ":" + std::to_string(line) : std::string()) + ": " + what), line_(line)
{
}

std::vector<Point> default_nodes(const geometry::Disc &region)
{
    constexpr double standoff = 55.0;
    std::vector<Point> nodes;
    for (double deg : {-30.0, -150.0, 90.0})
    {
        const double a = geometry::deg_to_rad(deg);
        nodes.push_back(region.center + standoff * Point{std::cos(a), std::sin(a)});
    }
    return nodes;
}

ScenarioConfig default_config()
{
    ScenarioConfig cfg;
    cfg.geometry.nodes = default_nodes(cfg.geometry.region);
    return cfg;
}

channel::ChannelParams ScenarioConfig::channel_params() const
{
    return {channel::snr_from_db(channel.snr_db), channel.m, channel.nu, channel.p_out};
}

measurement::MeasurementNetwork ScenarioConfig::network() const
{
    return {geometry.nodes, geometry::deg_to_rad(grid.resolution_deg), region()};
}

tomography::TomographyConfig ScenarioConfig::tomography() const
{
    tomography::TomographyConfig t;
    t.cell_side = grid.cell_side;
    t.aoa_tolerance = geometry::deg_to_rad(experiment.aoa_tolerance_deg);
    t.capacity_tolerance = experiment.capacity_tolerance;
    t.mode = experiment.mode;
    t.msprt.epsilon = experiment.epsilon;
    t.msprt.max_observations = experiment.max_observations;
    return t;
}

void ScenarioConfig::validate() const
{
    const std::string src = "<config>";
    try
    {
        channel_params().validate();
        geometry::validate_region_side(region(), baseline());
        (void)network();
        tomography().validate();
        (void)geometry::discretize_region(region(), grid.cell_side);
    }
    catch (const std::exception &e)
    {
        throw ConfigError(src, 0, e.what());
    }
}

namespace
{

class Reader
{
  public:
    explicit Reader(std::string source) : source_(std::move(source)) {}

    [[noreturn]] void fail(const YAML::Node &node, const std::string &what) const
    {
        throw ConfigError(source_, line_of(node), what);
    }

    static std::size_t line_of(const YAML::Node &node)
    {
        const auto mark = node.Mark();
        return mark.line < 0 ? 0 : static_cast<std::size_t>(mark.line) + 1;
    }

    void require_map(const YAML::Node &node, const std::string &name) const
    {
        if (!node.IsMap())
            fail(node, "'" + name + "' must be a mapping");
    }

    void check_keys(const YAML::Node &node, const std::string &name, std::initializer_list<const char *> allowed) const
    {
        for (const auto &kv : node)
        {
            const auto key = kv.first.as<std::string>();
            if (std::none_of(allowed.begin(), allowed.end(), [&](const char *a) { return key == a; }))
                fail(kv.first, "unknown key '" + key + "' in '" + name + "'");
        }
    }

    double number(const YAML::Node &node, const std::string &name) const
    {
        if (!node.IsScalar())
            fail(node, "'" + name + "' must be a number");
        double v = 0.0;
        if (!YAML::convert<double>::decode(node, v) || !std::isfinite(v))
            fail(node, "'" + name + "' must be a finite number, got '" + node.Scalar() + "'");
        return v;
    }

    std::uint64_t count(const YAML::Node &node, const std::string &name) const
    {
        const double v = number(node, name);
        if (v < 0.0 || v != std::floor(v) || v > 9.0e15)
            fail(node, "'" + name + "' must be a non-negative integer");
        return static_cast<std::uint64_t>(v);
    }

    Point point(const YAML::Node &node, const std::string &name) const
    {
        if (!node.IsSequence() || node.size() != 2)
            fail(node, "'" + name + "' must be a two-element list [x, y] in meters");
        return {number(node[0], name + ".x"), number(node[1], name + ".y")};
    }

    template <class T, class Pred>
    void set(const YAML::Node &parent, const char *key, T &target, Pred &&ok, const char *requirement,
             const std::string &block) const
    {
        const YAML::Node node = parent[key];
        if (!node)
            return;
        const std::string name = block + "." + key;
        T value;
        if constexpr (std::is_same_v<T, double>)
            value = number(node, name);
        else
            value = static_cast<T>(count(node, name));
        if (!ok(value))
            fail(node, "'" + name + "' " + requirement);
        target = value;
    }

  private:
    std::string source_;
};

const auto positive = [](double v) { return v > 0.0; };
const auto any_value = [](auto) { return true; };

} // namespace

ScenarioConfig parse_config(const std::string &text, const std::string &source)
{
    YAML::Node root;
    try
    {
        root = YAML::Load(text);
    }
    catch (const YAML::ParserException &e)
    {
        throw ConfigError(source, static_cast<std::size_t>(e.mark.line + 1), e.msg);
    }

    ScenarioConfig cfg = default_config();
    if (root.IsNull())
        return cfg;

    const Reader rd(source);
    try
    {
        rd.require_map(root, "<root>");
        rd.check_keys(root, "<root>", {"geometry", "channel", "grid", "experiment"});

        if (const auto g = root["geometry"])
        {
            rd.require_map(g, "geometry");
            rd.check_keys(g, "geometry", {"source", "destination", "region", "nodes"});
            if (g["source"])
                cfg.geometry.source = rd.point(g["source"], "geometry.source");
            if (g["destination"])
                cfg.geometry.destination = rd.point(g["destination"], "geometry.destination");
            if (geometry::distance(cfg.geometry.source, cfg.geometry.destination) == 0.0)
                rd.fail(g, "source and destination coincide");
            bool region_given = false;
            if (const auto r = g["region"])
            {
                rd.require_map(r, "geometry.region");
                rd.check_keys(r, "geometry.region", {"center", "radius"});
                if (r["center"])
                    cfg.geometry.region.center = rd.point(r["center"], "geometry.region.center");
                rd.set(r, "radius", cfg.geometry.region.radius, positive, "must be positive", "geometry.region");
                try
                {
                    geometry::validate_region_side(cfg.region(), cfg.baseline());
                }
                catch (const std::exception &e)
                {
                    rd.fail(r, e.what());
                }
                region_given = true;
            }
            if (const auto n = g["nodes"])
            {
                if (!n.IsSequence())
                    rd.fail(n, "'geometry.nodes' must be a list of [x, y] points");
                cfg.geometry.nodes.clear();
                for (std::size_t k = 0; k < n.size(); ++k)
                {
                    const Point p = rd.point(n[k], "geometry.nodes[" + std::to_string(k) + "]");
                    if (cfg.region().contains(p))
                        rd.fail(n[k], "measuring node " + std::to_string(k) + " lies inside the relay region");
                    cfg.geometry.nodes.push_back(p);
                }
                if (cfg.geometry.nodes.size() < 3)
                    rd.fail(n, "at least three measuring nodes are required");
            }
            else if (region_given)
                cfg.geometry.nodes = default_nodes(cfg.geometry.region);
        }

        if (const auto c = root["channel"])
        {
            rd.require_map(c, "channel");
            rd.check_keys(c, "channel", {"snr_db", "m", "nu", "p_out"});
            rd.set(c, "snr_db", cfg.channel.snr_db, any_value, "", "channel");
            rd.set(c, "m", cfg.channel.m, positive, "(Nakagami shape) must be positive", "channel");
            rd.set(c, "nu", cfg.channel.nu, any_value, "", "channel");
            rd.set(c, "p_out", cfg.channel.p_out, [](double v) { return v > 0.0 && v < 1.0; },
                   "must lie strictly between 0 and 1", "channel");
        }

        if (const auto gr = root["grid"])
        {
            rd.require_map(gr, "grid");
            rd.check_keys(gr, "grid", {"d_aod_deg", "d_aoa_deg", "resolution_deg", "cell_side"});
            rd.set(gr, "d_aod_deg", cfg.grid.d_aod_deg, positive, "must be positive", "grid");
            rd.set(gr, "d_aoa_deg", cfg.grid.d_aoa_deg, positive, "must be positive", "grid");
            rd.set(gr, "resolution_deg", cfg.grid.resolution_deg, positive, "must be positive", "grid");
            rd.set(gr, "cell_side", cfg.grid.cell_side, positive, "must be positive", "grid");
            if (cfg.grid.cell_side > 2.0 * cfg.geometry.region.radius)
                rd.fail(gr["cell_side"] ? gr["cell_side"] : gr, "'grid.cell_side' exceeds the region diameter");
        }

        if (const auto e = root["experiment"])
        {
            rd.require_map(e, "experiment");
            rd.check_keys(e, "experiment",
                          {"relays", "observations", "seed", "mode", "epsilon", "max_observations",
                           "aoa_tolerance_deg", "capacity_tolerance"});
            rd.set(e, "relays", cfg.experiment.relays, any_value, "", "experiment");
            rd.set(e, "observations", cfg.experiment.observations, [](std::size_t v) { return v >= 1; },
                   "must be at least 1", "experiment");
            rd.set(e, "seed", cfg.experiment.seed, any_value, "", "experiment");
            rd.set(e, "max_observations", cfg.experiment.max_observations, any_value, "", "experiment");
            rd.set(e, "epsilon", cfg.experiment.epsilon, [](double v) { return v > 0.0 && v < 1.0; },
                   "must lie strictly between 0 and 1", "experiment");
            rd.set(e, "aoa_tolerance_deg", cfg.experiment.aoa_tolerance_deg, [](double v) { return v >= 0.0; },
                   "must be non-negative", "experiment");
            if (const auto m = e["mode"])
            {
                try
                {
                    cfg.experiment.mode = tomography::parse_mode(m.Scalar());
                }
                catch (const std::invalid_argument &ex)
                {
                    rd.fail(m, ex.what());
                }
            }
            if (const auto t = e["capacity_tolerance"]; t && !t.IsNull())
            {
                const double v = rd.number(t, "experiment.capacity_tolerance");
                if (!(v > 0.0))
                    rd.fail(t, "'experiment.capacity_tolerance' must be positive");
                cfg.experiment.capacity_tolerance = v;
            }
        }
    }
    catch (const YAML::Exception &e)
    {
        throw ConfigError(source, static_cast<std::size_t>(e.mark.line + 1), e.msg);
    }

    try
    {
        cfg.validate();
    }
    catch (const ConfigError &e)
    {
        // cross-field failure; no single line to blame
        throw ConfigError(source, 0, std::string(e.what()).substr(std::string("<config>: ").size()));
    }
    return cfg;
}

ScenarioConfig load_config(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError(path.string(), 0, "cannot open config file");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str(), path.string());
}

} // namespace relaytomo::cli
