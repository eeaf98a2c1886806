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

#include <relaytomo/measurement.hpp>
#include <relaytomo/text_io.hpp>

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <string>

namespace relaytomo::measurement
{

using geometry::Point;

QuantizedAngle quantize_angle(double theta, double d_theta)
{
    if (!(d_theta > 0.0))
        throw DomainError("quantize_angle: resolution must be positive");
    const long index = std::lround(theta / d_theta);
    return {index, static_cast<double>(index) * d_theta};
}

double estimate_outage_capacity(std::span<const double> samples, double p_out)
{
    if (samples.empty())
        throw DomainError("estimate_outage_capacity: no samples");
    std::vector<double> sorted(samples.begin(), samples.end());
    const auto n = static_cast<long>(sorted.size());
    // relative guard keeps p * n that is an integer up to rounding from jumping one rank
    const long rank = static_cast<long>(std::ceil(p_out * static_cast<double>(n) * (1.0 - 1e-12))) - 1;
    const auto k = static_cast<std::size_t>(std::clamp(rank, 0L, n - 1));
    std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(k), sorted.end());
    return sorted[k];
}

std::vector<OrderedPair> ordered_pairs(std::size_t node_count)
{
    std::vector<OrderedPair> out;
    for (std::size_t a = 0; a < node_count; ++a)
        for (std::size_t b = 0; b < node_count; ++b)
            if (a != b)
                out.push_back({a, b});
    return out;
}

MeasurementNetwork::MeasurementNetwork(std::vector<Point> nodes, double resolution, geometry::RelayRegion region)
    : nodes_(std::move(nodes)), resolution_(resolution), region_(region)
{
    if (nodes_.size() < 3)
        throw DomainError("MeasurementNetwork: at least three measuring nodes are required");
    if (!(resolution_ > 0.0))
        throw DomainError("MeasurementNetwork: resolution must be positive");
    for (std::size_t q = 0; q < nodes_.size(); ++q)
        if (region_.contains(nodes_[q]))
            throw DomainError("MeasurementNetwork: node " + std::to_string(q) + " lies inside the relay region");
}

double MeasurementNetwork::bearing(std::size_t q, Point p) const
{
    const Point node = nodes_.at(q);
    return geometry::signed_angle(region_.centroid() - node, p - node);
}

std::pair<long, long> MeasurementNetwork::scan_range(std::size_t q) const
{
    const Point node = nodes_.at(q);
    const auto span = geometry::angular_span(region_, node, region_.centroid() - node);
    return {static_cast<long>(std::floor(span.min / resolution_)),
            static_cast<long>(std::ceil(span.max / resolution_))};
}

MeasurementSet::MeasurementSet(std::size_t node_count, std::size_t relay_count, std::size_t observations,
                               double resolution_deg)
    : node_count_(node_count), relay_count_(relay_count), observations_(observations),
      resolution_deg_(resolution_deg), pairs_(ordered_pairs(node_count))
{
    if (node_count < 2)
        throw DomainError("MeasurementSet: need at least two nodes");
    if (observations < 1)
        throw DomainError("MeasurementSet: need at least one observation");
    if (!(resolution_deg > 0.0))
        throw DomainError("MeasurementSet: resolution must be positive");
}

std::size_t MeasurementSet::pair_row(OrderedPair p) const
{
    const auto it = std::find(pairs_.begin(), pairs_.end(), p);
    if (it == pairs_.end())
        throw DomainError("MeasurementSet: unknown node pair");
    return static_cast<std::size_t>(it - pairs_.begin());
}

void MeasurementSet::insert(PathRecord record)
{
    if (record.pair >= pairs_.size() || record.relay >= relay_count_)
        throw DomainError("MeasurementSet::insert: pair or relay index out of range");
    if (record.raw.size() != observations_)
        throw DomainError("MeasurementSet::insert: expected " + std::to_string(observations_) + " observations");
    const auto key = [](const PathRecord &r) { return std::pair(r.pair, r.relay); };
    const auto it = std::lower_bound(records_.begin(), records_.end(), record,
                                     [&](const PathRecord &a, const PathRecord &b) { return key(a) < key(b); });
    if (it != records_.end() && key(*it) == key(record))
        *it = std::move(record);
    else
        records_.insert(it, std::move(record));
}

const PathRecord *MeasurementSet::find(std::size_t pair, std::size_t relay) const
{
    const auto it = std::lower_bound(records_.begin(), records_.end(), std::pair(pair, relay),
                                     [](const PathRecord &a, const std::pair<std::size_t, std::size_t> &k) {
                                         return std::pair(a.pair, a.relay) < k;
                                     });
    if (it == records_.end() || it->pair != pair || it->relay != relay)
        return nullptr;
    return &*it;
}

std::optional<double> MeasurementSet::aoa(std::size_t pair, std::size_t relay) const
{
    const auto *r = find(pair, relay);
    if (r == nullptr)
        return std::nullopt;
    return static_cast<double>(r->aoa_index) * resolution();
}

std::optional<double> MeasurementSet::aod(std::size_t pair, std::size_t relay) const
{
    const OrderedPair p = pairs_.at(pair);
    return aoa(pair_row({p.to, p.from}), relay);
}

std::vector<const PathRecord *> MeasurementSet::records_for_relay(std::size_t relay) const
{
    std::vector<const PathRecord *> out;
    for (const auto &r : records_)
        if (r.relay == relay)
            out.push_back(&r);
    return out;
}

std::vector<double> MeasurementSet::observation_vector(std::size_t relay, std::size_t o) const
{
    if (o >= observations_)
        throw DomainError("observation_vector: observation index out of range");
    std::vector<double> out;
    for (const auto *r : records_for_relay(relay))
        out.push_back(r->raw[o]);
    return out;
}

bool operator==(const PathRecord &a, const PathRecord &b)
{
    return a.pair == b.pair && a.relay == b.relay && a.aoa_index == b.aoa_index &&
           a.capacity_estimate == b.capacity_estimate && a.raw == b.raw;
}

bool operator==(const MeasurementSet &a, const MeasurementSet &b)
{
    return a.node_count_ == b.node_count_ && a.relay_count_ == b.relay_count_ &&
           a.observations_ == b.observations_ && a.resolution_deg_ == b.resolution_deg_ && a.records_ == b.records_;
}

MeasurementSet simulate_measurements(const MeasurementNetwork &net, std::span<const Point> relays,
                                     const channel::ChannelParams &params, std::size_t observations,
                                     const numerics::RngStream &rng)
{
    params.validate();
    if (observations < 1)
        throw DomainError("simulate_measurements: need at least one observation");
    const std::size_t q_count = net.size();
    MeasurementSet set(q_count, relays.size(), observations, geometry::rad_to_deg(net.resolution()));

    std::vector<std::pair<long, long>> scan(q_count);
    for (std::size_t q = 0; q < q_count; ++q)
        scan[q] = net.scan_range(q);

    for (std::size_t l = 0; l < relays.size(); ++l)
        if (!net.region().contains(relays[l]))
            throw DomainError("simulate_measurements: relay " + std::to_string(l) + " lies outside the region");

    for (std::size_t l = 0; l < relays.size(); ++l)
    {
        const Point relay = relays[l];
        std::vector<long> bin(q_count);
        for (std::size_t q = 0; q < q_count; ++q)
            bin[q] = quantize_angle(net.bearing(q, relay), net.resolution()).index;

        for (std::size_t a = 0; a < q_count; ++a)
            for (std::size_t b = a + 1; b < q_count; ++b)
            {
                // visible on (a, b) iff visible on (b, a): both ends must see the relay
                const bool visible = bin[a] >= scan[a].first && bin[a] <= scan[a].second &&
                                     bin[b] >= scan[b].first && bin[b] <= scan[b].second;
                if (!visible)
                    continue;

                auto stream = rng.split(l * q_count * q_count + a * q_count + b);
                const channel::HopPair hops{geometry::distance(net.nodes()[a], relay),
                                            geometry::distance(relay, net.nodes()[b])};
                std::vector<double> raw(observations);
                for (auto &c : raw)
                    c = channel::sample_instant_capacity(hops, params, stream);
                const double estimate = estimate_outage_capacity(raw, params.p_out);

                set.insert({set.pair_row({a, b}), l, bin[b], estimate, raw});
                set.insert({set.pair_row({b, a}), l, bin[a], estimate, std::move(raw)});
            }
    }
    return set;
}

// ---------------------------------------------------------------------------------------------
// Text format

namespace
{
constexpr const char *magic = "# relaytomo measurements v1";

[[noreturn]] void fail(const std::string &what, std::size_t line) { throw ParseError(what, line); }

std::size_t read_header_value(std::istream &in, std::size_t &line_no, const std::string &key, std::string &value)
{
    std::string line;
    if (!std::getline(in, line))
        fail("unexpected end of file, expected '# " + key + "'", line_no + 1);
    ++line_no;
    const std::string prefix = "# " + key + " ";
    if (line.rfind(prefix, 0) != 0)
        fail("expected '" + prefix + "<value>'", line_no);
    value = line.substr(prefix.size());
    return line_no;
}
} // namespace

void write_measurements(std::ostream &out, const MeasurementSet &set)
{
    using text_io::format_double;
    out << magic << '\n';
    out << "# nodes " << set.node_count() << '\n';
    out << "# relays " << set.relay_count() << '\n';
    out << "# observations " << set.observations() << '\n';
    out << "# resolution_deg " << format_double(set.resolution_deg()) << '\n';
    out << "# q1,q2,relay,aoa_deg,capacity_estimate,raw_1..raw_" << set.observations() << '\n';
    for (const auto &r : set.records())
    {
        const OrderedPair p = set.pairs()[r.pair];
        out << p.from << ',' << p.to << ',' << r.relay << ','
            << format_double(static_cast<double>(r.aoa_index) * set.resolution_deg()) << ','
            << format_double(r.capacity_estimate);
        for (double c : r.raw)
            out << ',' << format_double(c);
        out << '\n';
    }
}

MeasurementSet read_measurements(std::istream &in)
{
    std::size_t line_no = 0;
    std::string line;
    if (!std::getline(in, line) || text_io::trim(line) != magic)
        fail("missing '" + std::string(magic) + "' header", 1);
    ++line_no;

    std::string value;
    std::size_t nodes = 0, relays = 0, observations = 0;
    double resolution_deg = 0.0;
    try
    {
        read_header_value(in, line_no, "nodes", value);
        nodes = static_cast<std::size_t>(text_io::parse_integer(value));
        read_header_value(in, line_no, "relays", value);
        relays = static_cast<std::size_t>(text_io::parse_integer(value));
        read_header_value(in, line_no, "observations", value);
        observations = static_cast<std::size_t>(text_io::parse_integer(value));
        read_header_value(in, line_no, "resolution_deg", value);
        resolution_deg = text_io::parse_double(value);
    }
    catch (const std::invalid_argument &e)
    {
        fail(e.what(), line_no);
    }

    std::optional<MeasurementSet> set;
    try
    {
        set.emplace(nodes, relays, observations, resolution_deg);
    }
    catch (const DomainError &e)
    {
        fail(e.what(), line_no);
    }

    while (std::getline(in, line))
    {
        ++line_no;
        const auto text = text_io::trim(line);
        if (text.empty() || text.front() == '#')
            continue;
        const auto fields = text_io::split(text);
        if (fields.size() != 5 + observations)
            fail("expected " + std::to_string(5 + observations) + " fields, found " + std::to_string(fields.size()),
                 line_no);
        try
        {
            const auto q1 = static_cast<std::size_t>(text_io::parse_integer(fields[0]));
            const auto q2 = static_cast<std::size_t>(text_io::parse_integer(fields[1]));
            PathRecord r;
            r.pair = set->pair_row({q1, q2});
            r.relay = static_cast<std::size_t>(text_io::parse_integer(fields[2]));
            r.aoa_index = std::lround(text_io::parse_double(fields[3]) / resolution_deg);
            r.capacity_estimate = text_io::parse_double(fields[4]);
            for (std::size_t o = 0; o < observations; ++o)
                r.raw.push_back(text_io::parse_double(fields[5 + o]));
            if (r.capacity_estimate < 0.0 ||
                std::any_of(r.raw.begin(), r.raw.end(), [](double c) { return !(c >= 0.0) || !std::isfinite(c); }))
                fail("capacities must be finite and non-negative", line_no);
            set->insert(std::move(r));
        }
        catch (const std::invalid_argument &e)
        {
            fail(e.what(), line_no);
        }
        catch (const DomainError &e)
        {
            fail(e.what(), line_no);
        }
    }
    return std::move(*set);
}

} // namespace relaytomo::measurement
