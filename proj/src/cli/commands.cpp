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

#include <relaytomo/cli/commands.hpp>
#include <relaytomo/cli/tables.hpp>
#include <relaytomo/ias.hpp>
#include <relaytomo/oracles.hpp>
#include <relaytomo/text_io.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>

namespace relaytomo::cli
{

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace
{

json point_json(geometry::Point p) { return json::array({p.x, p.y}); }

json config_json(const ScenarioConfig &cfg)
{
    json nodes = json::array();
    for (const auto &p : cfg.geometry.nodes)
        nodes.push_back(point_json(p));
    json e = {{"relays", cfg.experiment.relays},
              {"observations", cfg.experiment.observations},
              {"seed", cfg.experiment.seed},
              {"mode", tomography::to_string(cfg.experiment.mode)},
              {"epsilon", cfg.experiment.epsilon},
              {"max_observations", cfg.experiment.max_observations},
              {"aoa_tolerance_deg", cfg.experiment.aoa_tolerance_deg}};
    e["capacity_tolerance"] = cfg.experiment.capacity_tolerance ? json(*cfg.experiment.capacity_tolerance) : json();
    return {{"geometry",
             {{"source", point_json(cfg.geometry.source)},
              {"destination", point_json(cfg.geometry.destination)},
              {"region", {{"center", point_json(cfg.geometry.region.center)}, {"radius", cfg.geometry.region.radius}}},
              {"nodes", nodes}}},
            {"channel",
             {{"snr_db", cfg.channel.snr_db}, {"m", cfg.channel.m}, {"nu", cfg.channel.nu}, {"p_out", cfg.channel.p_out}}},
            {"grid",
             {{"d_aod_deg", cfg.grid.d_aod_deg},
              {"d_aoa_deg", cfg.grid.d_aoa_deg},
              {"resolution_deg", cfg.grid.resolution_deg},
              {"cell_side", cfg.grid.cell_side}}},
            {"experiment", e}};
}

std::ofstream open_output(const fs::path &path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    return out;
}

void write_manifest(const fs::path &dir, const std::string &command, const ScenarioConfig &cfg,
                    const std::vector<std::string> &files, json extra = json::object())
{
    json m = {{"tool", "relaytomo"}, {"command", command}, {"seed", cfg.experiment.seed}};
    m["config"] = config_json(cfg);
    m["outputs"] = files;
    for (auto &[k, v] : extra.items())
        m[k] = v;
    auto out = open_output(dir / "manifest.json");
    out << m.dump(2) << '\n';
}

} // namespace

std::vector<geometry::Point> sample_relays(const ScenarioConfig &cfg)
{
    numerics::RngStream rng(cfg.experiment.seed, relay_stream);
    const auto region = cfg.region();
    std::vector<geometry::Point> relays(cfg.experiment.relays);
    for (auto &p : relays)
        p = region.sample(rng);
    return relays;
}

std::vector<std::string> cmd_direct(const ScenarioConfig &cfg, const fs::path &out_dir)
{
    fs::create_directories(out_dir);
    const auto baseline = cfg.baseline();
    const auto region = cfg.region();
    const auto params = cfg.channel_params();

    const auto relays = sample_relays(cfg);
    const auto atoms = ias::continuous_ias(relays, baseline, params);
    {
        auto out = open_output(out_dir / "atoms.csv");
        write_atoms(out, atom_rows(atoms, relays));
    }

    const auto grid = ias::build_grid(region, baseline, geometry::deg_to_rad(cfg.grid.d_aod_deg),
                                      geometry::deg_to_rad(cfg.grid.d_aoa_deg));
    const auto d = ias::discrete_ias(grid, region, baseline, params);
    {
        auto out = open_output(out_dir / "discrete_ias.csv");
        write_ias(out, ias_rows(d));
    }

    const std::vector<std::string> files{"atoms.csv", "discrete_ias.csv", "manifest.json"};
    write_manifest(out_dir, "direct", cfg, files,
                   {{"grid", {{"i_min", grid.i_min}, {"i_max", grid.i_max}, {"j_min", grid.j_min}, {"j_max", grid.j_max}}},
                    {"total_mass", d.total_mass()}});
    return files;
}

std::vector<std::string> cmd_simulate(const ScenarioConfig &cfg, const fs::path &out_dir)
{
    fs::create_directories(out_dir);
    const auto relays = sample_relays(cfg);
    const auto set = measurement::simulate_measurements(cfg.network(), relays, cfg.channel_params(),
                                                        cfg.experiment.observations,
                                                        numerics::RngStream(cfg.experiment.seed, fading_stream));
    {
        auto out = open_output(out_dir / "measurements.txt");
        measurement::write_measurements(out, set);
    }
    {
        auto out = open_output(out_dir / "truth.csv");
        write_truth(out, relays);
    }
    const std::vector<std::string> files{"measurements.txt", "truth.csv", "manifest.json"};
    write_manifest(out_dir, "simulate", cfg, files, {{"records", set.records().size()}});
    return files;
}

std::vector<std::string> cmd_invert(const ScenarioConfig &cfg, const fs::path &measurements,
                                    const std::optional<fs::path> &truth, const fs::path &out_dir)
{
    std::ifstream in(measurements);
    if (!in)
        throw ParseError("cannot open " + measurements.string(), 0);
    const auto set = measurement::read_measurements(in);

    const auto net = cfg.network();
    if (set.node_count() != net.size())
        throw ConfigError(measurements.string(), 0,
                          "file has " + std::to_string(set.node_count()) + " nodes, config has " +
                              std::to_string(net.size()));
    if (std::abs(set.resolution_deg() - cfg.grid.resolution_deg) > 1e-12)
        throw ConfigError(measurements.string(), 0, "angular resolution differs from the config");

    const auto grid = geometry::discretize_region(cfg.region(), cfg.grid.cell_side);
    const auto results = tomography::localize_all(set, net, grid, cfg.channel_params(), cfg.tomography());

    fs::create_directories(out_dir);
    std::vector<std::string> files{"localization.txt"};
    {
        auto out = open_output(out_dir / "localization.txt");
        tomography::write_report(out, results);
    }
    json extra = {{"measurements", measurements.string()}, {"cells", grid.size()}};
    if (truth)
    {
        std::ifstream tin(*truth);
        if (!tin)
            throw ParseError("cannot open " + truth->string(), 0);
        const auto positions = read_truth(tin);
        if (positions.size() != results.size())
            throw ConfigError(truth->string(), 0, "truth lists " + std::to_string(positions.size()) +
                                                      " relays, measurements " + std::to_string(results.size()));
        const double score = tomography::score_within(results, positions, cfg.grid.cell_side);
        std::size_t hits = 0;
        for (std::size_t l = 0; l < results.size(); ++l)
            hits += results[l].cell && geometry::distance(results[l].estimate, positions[l]) <= cfg.grid.cell_side;
        auto out = open_output(out_dir / "score.txt");
        out << "relays " << results.size() << '\n'
            << "within_cell_side " << hits << '\n'
            << "fraction " << text_io::format_double(score) << '\n';
        files.push_back("score.txt");
        extra["truth"] = truth->string();
        extra["score"] = score;
    }
    files.push_back("manifest.json");
    write_manifest(out_dir, "invert", cfg, files, extra);
    return files;
}

bool cmd_selftest(const ScenarioConfig &cfg, std::ostream &out)
{
    const auto params = cfg.channel_params();
    bool all = true;
    const auto report = [&](bool ok, const std::string &line) {
        out << (ok ? "[PASS] " : "[FAIL] ") << line << '\n';
        all = all && ok;
    };

    // outage capacity against the sampled capacity distribution, on the probability scale
    const channel::HopPair hops{100.0, 100.0};
    const double i_out = channel::outage_capacity(hops, params);
    constexpr std::size_t n_cap = 1'000'000;
    const double frac = oracles::mc_outage_fraction(hops, params, i_out, n_cap, cfg.experiment.seed);
    const double se = std::sqrt(params.p_out * (1.0 - params.p_out) / n_cap);
    report(std::abs(frac - params.p_out) <= 4.0 * se,
           "outage capacity " + text_io::format_double(i_out) + " leaves " + text_io::format_double(frac) +
               " of 1e6 sampled capacities below it (target " + text_io::format_double(params.p_out) + ")");
    if (params.m == 1.0)
    {
        const double rt = std::pow(100.0, -params.nu) * 2.0 / params.snr;
        const double closed = 0.5 * std::log2(1.0 - std::log1p(-params.p_out) / rt);
        report(std::abs(closed - i_out) <= 1e-9, "Rayleigh closed form " + text_io::format_double(closed));
    }

    // joint angle density against a histogram of uniformly placed relays
    const auto h = oracles::angle_histogram_check(cfg.region(), cfg.baseline(), 20, 200'000, cfg.experiment.seed);
    report(std::abs(h.predicted_total - 1.0) <= 1e-4,
           "joint angle density integrates to " + text_io::format_double(h.predicted_total));
    report(h.fraction_within >= 0.95, "angle histogram: " + std::to_string(h.within) + "/" +
                                          std::to_string(h.nonempty_cells) + " cells within 3 standard errors");
    return all;
}

int run(int argc, char **argv, std::ostream &out, std::ostream &err)
{
    CLI::App app{"relaytomo: information azimuth spectra and relay network tomography"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> mode;
    std::optional<std::size_t> observations;
    std::string out_dir = "out";
    std::string measurements;
    std::optional<std::string> truth;

    const auto common = [&](CLI::App *sub, bool with_out) {
        sub->add_option("--config", config_path, "scenario YAML file (defaults apply when omitted)");
        sub->add_option("--seed", seed, "override experiment.seed");
        if (with_out)
            sub->add_option("--out", out_dir, "output directory")->capture_default_str();
    };
    auto *direct = app.add_subcommand("direct", "continuous and discrete IAS of the scenario");
    common(direct, true);
    auto *simulate = app.add_subcommand("simulate", "simulate probing measurements and ground truth");
    common(simulate, true);
    simulate->add_option("--observations", observations, "override experiment.observations");
    auto *invert = app.add_subcommand("invert", "localize relays from a measurement file");
    common(invert, true);
    invert->add_option("measurements", measurements, "measurement file written by simulate")->required();
    invert->add_option("--truth", truth, "ground-truth CSV; enables scoring");
    invert->add_option("--mode", mode, "argmin or msprt")->check(CLI::IsMember({"argmin", "msprt"}));
    invert->add_option("--observations", observations, "use at most N observations per relay");
    auto *selftest = app.add_subcommand("selftest", "run the Monte Carlo oracle checks");
    common(selftest, false);

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_config;
    }

    try
    {
        ScenarioConfig cfg = config_path.empty() ? default_config() : load_config(config_path);
        if (seed)
            cfg.experiment.seed = *seed;
        if (mode)
            cfg.experiment.mode = tomography::parse_mode(*mode);
        if (observations)
        {
            if (*observations == 0)
                throw ConfigError("--observations", 0, "must be at least 1");
            if (*simulate)
                cfg.experiment.observations = *observations;
            else
                cfg.experiment.max_observations = *observations;
        }

        std::vector<std::string> files;
        if (*direct)
            files = cmd_direct(cfg, out_dir);
        else if (*simulate)
            files = cmd_simulate(cfg, out_dir);
        else if (*invert)
            files = cmd_invert(cfg, measurements, truth ? std::optional<fs::path>(*truth) : std::nullopt, out_dir);
        else
            return cmd_selftest(cfg, out) ? exit_ok : exit_failure;

        for (const auto &f : files)
            out << (fs::path(out_dir) / f).string() << '\n';
        return exit_ok;
    }
    catch (const ConfigError &e)
    {
        err << "config error: " << e.what() << '\n';
        return exit_config;
    }
    catch (const ParseError &e)
    {
        err << "input error: " << e.what() << '\n';
        return exit_config;
    }
    catch (const DegenerateGeometryError &e)
    {
        err << "degenerate geometry: " << e.what() << '\n';
        return exit_degenerate;
    }
    catch (const BracketError &e)
    {
        err << "numerical failure: " << e.what() << '\n';
        return exit_degenerate;
    }
    catch (const EmptyGridError &e)
    {
        err << "empty grid: " << e.what() << '\n';
        return exit_degenerate;
    }
    catch (const DomainError &e)
    {
        err << "invalid input: " << e.what() << '\n';
        return exit_config;
    }
    catch (const std::exception &e)
    {
        err << "error: " << e.what() << '\n';
        return exit_failure;
    }
}

} // namespace relaytomo::cli
