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

#ifndef RELAYTOMO_CLI_TABLES_HPP
#define RELAYTOMO_CLI_TABLES_HPP

#include <relaytomo/geometry.hpp>
#include <relaytomo/ias.hpp>

#include <iosfwd>
#include <span>
#include <vector>

// CSV tables written by the commands. Every writer has a parser that returns exactly the values
// that were written; angles are in degrees at this boundary.
namespace relaytomo::cli
{

struct AtomRow
{
    std::size_t relay = 0;
    double x = 0.0;
    double y = 0.0;
    double aod_deg = 0.0;
    double aoa_deg = 0.0;
    double capacity = 0.0;
    friend bool operator==(const AtomRow &, const AtomRow &) = default;
};

struct IasRow
{
    int i = 0;
    int j = 0;
    double aod_deg = 0.0;
    double aoa_deg = 0.0;
    double value = 0.0;
    double mass = 0.0;
    friend bool operator==(const IasRow &, const IasRow &) = default;
};

struct TruthRow
{
    std::size_t relay = 0;
    geometry::Point position;
    friend bool operator==(const TruthRow &, const TruthRow &) = default;
};

std::vector<AtomRow> atom_rows(std::span<const ias::FlowAtom> atoms, std::span<const geometry::Point> relays);
std::vector<IasRow> ias_rows(const ias::DiscreteIas &ias);

void write_atoms(std::ostream &out, std::span<const AtomRow> rows);
std::vector<AtomRow> read_atoms(std::istream &in);

void write_ias(std::ostream &out, std::span<const IasRow> rows);
std::vector<IasRow> read_ias(std::istream &in);

void write_truth(std::ostream &out, std::span<const geometry::Point> relays);
std::vector<geometry::Point> read_truth(std::istream &in);

} // namespace relaytomo::cli

#endif
