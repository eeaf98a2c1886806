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

#include <relaytomo/cli/tables.hpp>
#include <relaytomo/errors.hpp>
#include <relaytomo/text_io.hpp>

#include <istream>
#include <ostream>
#include <string>

namespace relaytomo::cli
{

using text_io::format_double;
using text_io::parse_double;
using text_io::parse_integer;

namespace
{

constexpr const char *atoms_header = "relay,x_m,y_m,aod_deg,aoa_deg,capacity";
constexpr const char *ias_header = "i,j,aod_deg,aoa_deg,value,mass";
constexpr const char *truth_header = "relay,x_m,y_m";

// Calls row(fields, line_no) for every data line after checking the header and field count.
template <class F>
void read_csv(std::istream &in, const char *header, std::size_t width, F &&row)
{
    std::string line;
    if (!std::getline(in, line) || text_io::trim(line) != header)
        throw ParseError(std::string("expected header '") + header + "'", 1);
    std::size_t line_no = 1;
    while (std::getline(in, line))
    {
        ++line_no;
        const auto text = text_io::trim(line);
        if (text.empty())
            continue;
        const auto fields = text_io::split(text);
        if (fields.size() != width)
            throw ParseError("expected " + std::to_string(width) + " fields, found " + std::to_string(fields.size()),
                             line_no);
        try
        {
            row(fields);
        }
        catch (const std::invalid_argument &e)
        {
            throw ParseError(e.what(), line_no);
        }
    }
}

} // namespace

std::vector<AtomRow> atom_rows(std::span<const ias::FlowAtom> atoms, std::span<const geometry::Point> relays)
{
    std::vector<AtomRow> rows;
    for (const auto &a : atoms)
        rows.push_back({a.relay, relays[a.relay].x, relays[a.relay].y, geometry::rad_to_deg(a.aod),
                        geometry::rad_to_deg(a.aoa), a.capacity});
    return rows;
}

std::vector<IasRow> ias_rows(const ias::DiscreteIas &d)
{
    std::vector<IasRow> rows;
    for (int i = d.grid.i_min; i <= d.grid.i_max; ++i)
        for (int j = d.grid.j_min; j <= d.grid.j_max; ++j)
            rows.push_back({i, j, geometry::rad_to_deg(d.grid.aod(i)), geometry::rad_to_deg(d.grid.aoa(j)),
                            d.value(i, j), d.mass(i, j)});
    return rows;
}

void write_atoms(std::ostream &out, std::span<const AtomRow> rows)
{
    out << atoms_header << '\n';
    for (const auto &r : rows)
        out << r.relay << ',' << format_double(r.x) << ',' << format_double(r.y) << ',' << format_double(r.aod_deg)
            << ',' << format_double(r.aoa_deg) << ',' << format_double(r.capacity) << '\n';
}

std::vector<AtomRow> read_atoms(std::istream &in)
{
    std::vector<AtomRow> rows;
    read_csv(in, atoms_header, 6, [&](const auto &f) {
        rows.push_back({static_cast<std::size_t>(parse_integer(f[0])), parse_double(f[1]), parse_double(f[2]),
                        parse_double(f[3]), parse_double(f[4]), parse_double(f[5])});
    });
    return rows;
}

void write_ias(std::ostream &out, std::span<const IasRow> rows)
{
    out << ias_header << '\n';
    for (const auto &r : rows)
        out << r.i << ',' << r.j << ',' << format_double(r.aod_deg) << ',' << format_double(r.aoa_deg) << ','
            << format_double(r.value) << ',' << format_double(r.mass) << '\n';
}

std::vector<IasRow> read_ias(std::istream &in)
{
    std::vector<IasRow> rows;
    read_csv(in, ias_header, 6, [&](const auto &f) {
        rows.push_back({static_cast<int>(parse_integer(f[0])), static_cast<int>(parse_integer(f[1])),
                        parse_double(f[2]), parse_double(f[3]), parse_double(f[4]), parse_double(f[5])});
    });
    return rows;
}

void write_truth(std::ostream &out, std::span<const geometry::Point> relays)
{
    out << truth_header << '\n';
    for (std::size_t l = 0; l < relays.size(); ++l)
        out << l << ',' << format_double(relays[l].x) << ',' << format_double(relays[l].y) << '\n';
}

std::vector<geometry::Point> read_truth(std::istream &in)
{
    std::vector<geometry::Point> relays;
    read_csv(in, truth_header, 3, [&](const auto &f) {
        if (static_cast<std::size_t>(parse_integer(f[0])) != relays.size())
            throw std::invalid_argument("relay ids must run 0, 1, 2, ... in order");
        relays.push_back({parse_double(f[1]), parse_double(f[2])});
    });
    return relays;
}

} // namespace relaytomo::cli
