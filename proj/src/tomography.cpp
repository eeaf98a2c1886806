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

#include <relaytomo/text_io.hpp>
#include <relaytomo/tomography.hpp>

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <string>

namespace relaytomo::tomography
{

using geometry::Point;
using measurement::MeasurementSet;
using measurement::PathRecord;

const char *to_string(Mode mode) { return mode == Mode::argmin ? "argmin" : "msprt"; }

const char *to_string(DecisionKind kind)
{
    switch (kind)
    {
    case DecisionKind::threshold:
        return "threshold";
    case DecisionKind::forced_map:
        return "forced_map";
    case DecisionKind::argmin:
        return "argmin";
    case DecisionKind::unlocalized:
        return "unlocalized";
    }
    return "unlocalized";
}

Mode parse_mode(std::string_view text)
{
    if (text == "argmin")
        return Mode::argmin;
    if (text == "msprt")
        return Mode::msprt;
    throw std::invalid_argument("unknown mode '" + std::string(text) + "' (expected argmin or msprt)");
}

DecisionKind parse_decision_kind(std::string_view text)
{
    for (auto k : {DecisionKind::threshold, DecisionKind::forced_map, DecisionKind::argmin, DecisionKind::unlocalized})
        if (text == to_string(k))
            return k;
    throw std::invalid_argument("unknown decision kind '" + std::string(text) + "'");
}

void MsprtConfig::validate(std::size_t cell_count) const
{
    if (epsilon_matrix.empty())
    {
        if (!(epsilon > 0.0 && epsilon < 1.0))
            throw DomainError("MsprtConfig: epsilon must lie in (0, 1)");
    }
    else
    {
        if (epsilon_matrix.size() != cell_count * cell_count)
            throw DomainError("MsprtConfig: epsilon matrix must be " + std::to_string(cell_count) + " x " +
                              std::to_string(cell_count));
        for (std::size_t k1 = 0; k1 < cell_count; ++k1)
            for (std::size_t k2 = 0; k2 < cell_count; ++k2)
            {
                const double e = epsilon_matrix[k1 * cell_count + k2];
                if (k1 != k2 && !(e > 0.0 && e < 1.0))
                    throw DomainError("MsprtConfig: epsilon matrix entries must lie in (0, 1)");
            }
    }
    if (!priors.empty())
    {
        if (priors.size() != cell_count)
            throw DomainError("MsprtConfig: need one prior per cell (" + std::to_string(cell_count) + ")");
        if (std::any_of(priors.begin(), priors.end(), [](double p) { return !(p >= 0.0) || !std::isfinite(p); }))
            throw DomainError("MsprtConfig: priors must be finite and non-negative");
        const double total = std::accumulate(priors.begin(), priors.end(), 0.0);
        if (std::abs(total - 1.0) > 1e-9)
            throw DomainError("MsprtConfig: priors must sum to 1");
    }
}

double MsprtConfig::error_bound(std::size_t k1, std::size_t k2, std::size_t cell_count) const
{
    return epsilon_matrix.empty() ? epsilon : epsilon_matrix[k1 * cell_count + k2];
}

void TomographyConfig::validate() const
{
    if (!(cell_side > 0.0))
        throw DomainError("TomographyConfig: cell side must be positive");
    if (!(aoa_tolerance >= 0.0))
        throw DomainError("TomographyConfig: AOA tolerance must be non-negative");
    if (capacity_tolerance && !(*capacity_tolerance > 0.0))
        throw DomainError("TomographyConfig: capacity tolerance must be positive");
}

CellBearings::CellBearings(const measurement::MeasurementNetwork &net, const geometry::CellGrid &grid)
    : cells_(grid.size())
{
    angles_.resize(net.size() * cells_);
    bins_.resize(net.size() * cells_);
    for (std::size_t q = 0; q < net.size(); ++q)
        for (std::size_t w = 0; w < cells_; ++w)
        {
            const double a = net.bearing(q, grid.cells[w]);
            angles_[q * cells_ + w] = a;
            bins_[q * cells_ + w] = measurement::quantize_angle(a, net.resolution()).index;
        }
}

std::vector<std::size_t> feasible_cells(const MeasurementSet &set, std::size_t relay, const CellBearings &bearings,
                                        double resolution, double aoa_tolerance)
{
    const auto records = set.records_for_relay(relay);
    std::vector<std::size_t> out;
    if (records.empty())
        return out;
    const double half_width = 0.5 * resolution + aoa_tolerance;
    for (std::size_t w = 0; w < bearings.cell_count(); ++w)
    {
        const bool ok = std::all_of(records.begin(), records.end(), [&](const PathRecord *r) {
            const std::size_t q2 = set.pairs()[r->pair].to;
            if (aoa_tolerance == 0.0)
                return bearings.bin(q2, w) == r->aoa_index;
            return std::abs(bearings.angle(q2, w) - static_cast<double>(r->aoa_index) * resolution) <= half_width;
        });
        if (ok)
            out.push_back(w);
    }
    return out;
}

std::vector<std::size_t> feasible_cells(const MeasurementSet &set, std::size_t relay,
                                        const measurement::MeasurementNetwork &net, const geometry::CellGrid &grid,
                                        double aoa_tolerance)
{
    return feasible_cells(set, relay, CellBearings(net, grid), net.resolution(), aoa_tolerance);
}

namespace
{

channel::HopPair hops_via(const measurement::MeasurementNetwork &net, const measurement::OrderedPair &pair, Point x)
{
    return {geometry::distance(net.nodes()[pair.from], x), geometry::distance(x, net.nodes()[pair.to])};
}

// l2 norm of recorded minus predicted outage capacities over the relay's records.
double capacity_residual(const std::vector<const PathRecord *> &records, const MeasurementSet &set,
                         const measurement::MeasurementNetwork &net, Point x, const channel::ChannelParams &params)
{
    double sum = 0.0;
    for (const auto *r : records)
    {
        const double diff = r->capacity_estimate - channel::outage_capacity(hops_via(net, set.pairs()[r->pair], x), params);
        sum += diff * diff;
    }
    return std::sqrt(sum);
}

double aoa_residual(const std::vector<const PathRecord *> &records, const MeasurementSet &set,
                    const measurement::MeasurementNetwork &net, Point x)
{
    double sum = 0.0;
    for (const auto *r : records)
    {
        const double diff =
            net.bearing(set.pairs()[r->pair].to, x) - static_cast<double>(r->aoa_index) * set.resolution();
        sum += diff * diff;
    }
    return std::sqrt(sum);
}

LocalizationResult finish(LocalizationResult result, std::size_t cell, const std::vector<const PathRecord *> &records,
                          const MeasurementSet &set, const measurement::MeasurementNetwork &net,
                          const geometry::CellGrid &grid, const channel::ChannelParams &params)
{
    result.cell = cell;
    result.estimate = grid.cells.at(cell);
    result.e1 = aoa_residual(records, set, net, result.estimate);
    result.e2 = capacity_residual(records, set, net, result.estimate, params);
    return result;
}

void require_candidates(std::span<const std::size_t> candidates, const geometry::CellGrid &grid, const char *who)
{
    if (candidates.empty())
        throw DomainError(std::string(who) + ": empty candidate set");
    for (auto w : candidates)
        if (w >= grid.size())
            throw DomainError(std::string(who) + ": candidate index out of range");
}

} // namespace

LocalizationResult localize_argmin(std::span<const std::size_t> candidates, const MeasurementSet &set,
                                   std::size_t relay, const measurement::MeasurementNetwork &net,
                                   const geometry::CellGrid &grid, const channel::ChannelParams &params)
{
    require_candidates(candidates, grid, "localize_argmin");
    params.validate();
    const auto records = set.records_for_relay(relay);

    std::size_t best = candidates.front();
    double best_residual = std::numeric_limits<double>::infinity();
    for (auto w : candidates)
    {
        const double e = capacity_residual(records, set, net, grid.cells[w], params);
        if (e < best_residual || (e == best_residual && w < best))
        {
            best = w;
            best_residual = e;
        }
    }

    LocalizationResult result;
    result.relay = relay;
    result.candidates = candidates.size();
    result.kind = DecisionKind::argmin;
    return finish(result, best, records, set, net, grid, params);
}

namespace
{

// First k (in candidate order) whose statistic beats every rival by its threshold.
std::optional<std::size_t> threshold_winner(const std::vector<double> &lambda, std::span<const std::size_t> candidates,
                                            const MsprtConfig &cfg, std::size_t cell_count)
{
    const std::size_t n = lambda.size();
    for (std::size_t k = 0; k < n; ++k)
    {
        if (!std::isfinite(lambda[k]))
            continue;
        bool wins = true;
        for (std::size_t k2 = 0; k2 < n && wins; ++k2)
        {
            if (k2 == k)
                continue;
            const double eps = cfg.error_bound(candidates[k], candidates[k2], cell_count);
            wins = lambda[k] - lambda[k2] > std::log((1.0 - eps) / eps);
        }
        if (wins)
            return k;
    }
    return std::nullopt;
}

std::size_t argmax_lowest(const std::vector<double> &v)
{
    std::size_t best = 0;
    for (std::size_t k = 1; k < v.size(); ++k)
        if (v[k] > v[best] || (std::isnan(v[best]) && !std::isnan(v[k])))
            best = k;
    return best;
}

} // namespace

LocalizationResult msprt_localize(std::span<const std::size_t> candidates, const MeasurementSet &set,
                                  std::size_t relay, const measurement::MeasurementNetwork &net,
                                  const geometry::CellGrid &grid, const channel::ChannelParams &params,
                                  const MsprtConfig &cfg)
{
    require_candidates(candidates, grid, "msprt_localize");
    params.validate();
    cfg.validate(grid.size());
    const auto records = set.records_for_relay(relay);

    // candidates are tested in ascending cell order so that ties fall to the lowest index
    std::vector<std::size_t> cand(candidates.begin(), candidates.end());
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    const std::size_t n = cand.size();

    const std::size_t available = set.observations();
    const std::size_t horizon = cfg.max_observations == 0 ? available : std::min(cfg.max_observations, available);

    std::vector<std::vector<channel::HopPair>> hops(n);
    for (std::size_t k = 0; k < n; ++k)
        for (const auto *r : records)
            hops[k].push_back(hops_via(net, set.pairs()[r->pair], grid.cells[cand[k]]));

    const double uniform = -std::log(static_cast<double>(grid.size()));
    std::vector<double> lambda(n);
    std::vector<double> loglik(n, 0.0); // likelihood part only, for the degenerate fallback
    for (std::size_t k = 0; k < n; ++k)
        lambda[k] = cfg.priors.empty() ? uniform : std::log(cfg.priors[cand[k]]);

    LocalizationResult result;
    result.relay = relay;
    result.candidates = n;

    const auto all_dead = [&] {
        return std::none_of(lambda.begin(), lambda.end(), [](double x) { return std::isfinite(x) || x > 0.0; });
    };
    const auto degenerate = [&](std::size_t o) {
        result.kind = DecisionKind::forced_map;
        result.degenerate = true;
        result.stop_observation = o;
        return finish(result, cand[argmax_lowest(loglik)], records, set, net, grid, params);
    };

    if (all_dead())
        return degenerate(0);
    if (auto k = threshold_winner(lambda, cand, cfg, grid.size()))
    {
        result.kind = DecisionKind::threshold;
        return finish(result, cand[*k], records, set, net, grid, params);
    }

    for (std::size_t o = 0; o < horizon; ++o)
    {
        for (std::size_t k = 0; k < n; ++k)
        {
            double step = 0.0;
            for (std::size_t p = 0; p < records.size(); ++p)
                step += channel::log_capacity_pdf(records[p]->raw[o], hops[k][p], params);
            loglik[k] += step;
            lambda[k] += step;
        }
        if (all_dead())
            return degenerate(o + 1);
        if (auto k = threshold_winner(lambda, cand, cfg, grid.size()))
        {
            result.kind = DecisionKind::threshold;
            result.stop_observation = o + 1;
            return finish(result, cand[*k], records, set, net, grid, params);
        }
    }

    result.kind = DecisionKind::forced_map;
    result.stop_observation = horizon;
    return finish(result, cand[argmax_lowest(lambda)], records, set, net, grid, params);
}

std::vector<LocalizationResult> localize_all(const MeasurementSet &set, const measurement::MeasurementNetwork &net,
                                             const geometry::CellGrid &grid, const channel::ChannelParams &params,
                                             const TomographyConfig &cfg)
{
    cfg.validate();
    if (set.node_count() != net.size())
        throw DomainError("localize_all: measurement set and network disagree on the node count");
    const CellBearings bearings(net, grid);
    std::vector<LocalizationResult> out;
    out.reserve(set.relay_count());
    for (std::size_t l = 0; l < set.relay_count(); ++l)
    {
        const auto cand = feasible_cells(set, l, bearings, set.resolution(), cfg.aoa_tolerance);
        LocalizationResult r;
        if (cand.empty())
        {
            r.relay = l;
            r.kind = DecisionKind::unlocalized;
        }
        else if (cfg.mode == Mode::argmin)
            r = localize_argmin(cand, set, l, net, grid, params);
        else
            r = msprt_localize(cand, set, l, net, grid, params, cfg.msprt);
        if (r.cell && cfg.capacity_tolerance)
            r.capacity_flagged = r.e2 > *cfg.capacity_tolerance;
        out.push_back(r);
    }
    return out;
}

double score_within(std::span<const LocalizationResult> results, std::span<const Point> truth, double radius)
{
    if (results.size() != truth.size())
        throw DomainError("score_within: one truth position per result is required");
    if (results.empty())
        return 0.0;
    std::size_t hits = 0;
    for (std::size_t l = 0; l < results.size(); ++l)
        if (results[l].cell && geometry::distance(results[l].estimate, truth[l]) <= radius)
            ++hits;
    return static_cast<double>(hits) / static_cast<double>(results.size());
}

// ---------------------------------------------------------------------------------------------
// Report

namespace
{
constexpr const char *report_magic = "# relaytomo localization v1";
constexpr const char *report_columns = "# relay,x_m,y_m,kind,candidates,e2,stop_obs,cell,e1,degenerate,capacity_flagged";
} // namespace

void write_report(std::ostream &out, std::span<const LocalizationResult> results)
{
    using text_io::format_double;
    out << report_magic << '\n' << report_columns << '\n';
    for (const auto &r : results)
    {
        out << r.relay << ',';
        if (r.cell)
            out << format_double(r.estimate.x) << ',' << format_double(r.estimate.y);
        else
            out << ',';
        out << ',' << to_string(r.kind) << ',' << r.candidates << ',' << format_double(r.e2) << ','
            << r.stop_observation << ',';
        if (r.cell)
            out << *r.cell;
        out << ',' << format_double(r.e1) << ',' << (r.degenerate ? 1 : 0) << ',' << (r.capacity_flagged ? 1 : 0)
            << '\n';
    }
}

std::vector<LocalizationResult> read_report(std::istream &in)
{
    std::string line;
    std::size_t line_no = 1;
    if (!std::getline(in, line) || text_io::trim(line) != report_magic)
        throw ParseError("missing '" + std::string(report_magic) + "' header", 1);

    std::vector<LocalizationResult> out;
    while (std::getline(in, line))
    {
        ++line_no;
        const auto text = text_io::trim(line);
        if (text.empty() || text.front() == '#')
            continue;
        const auto f = text_io::split(text);
        if (f.size() != 11)
            throw ParseError("expected 11 fields, found " + std::to_string(f.size()), line_no);
        try
        {
            LocalizationResult r;
            r.relay = static_cast<std::size_t>(text_io::parse_integer(f[0]));
            r.kind = parse_decision_kind(f[3]);
            r.candidates = static_cast<std::size_t>(text_io::parse_integer(f[4]));
            r.e2 = text_io::parse_double(f[5]);
            r.stop_observation = static_cast<std::size_t>(text_io::parse_integer(f[6]));
            if (!f[7].empty())
            {
                r.cell = static_cast<std::size_t>(text_io::parse_integer(f[7]));
                r.estimate = {text_io::parse_double(f[1]), text_io::parse_double(f[2])};
            }
            else if (!f[1].empty() || !f[2].empty())
                throw ParseError("position given without a cell index", line_no);
            r.e1 = text_io::parse_double(f[8]);
            r.degenerate = text_io::parse_integer(f[9]) != 0;
            r.capacity_flagged = text_io::parse_integer(f[10]) != 0;
            if (r.e1 < 0.0 || r.e2 < 0.0)
                throw ParseError("residuals must be non-negative", line_no);
            out.push_back(r);
        }
        catch (const std::invalid_argument &e)
        {
            throw ParseError(e.what(), line_no);
        }
    }
    return out;
}

} // namespace relaytomo::tomography
