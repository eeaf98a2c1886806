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

#ifndef RELAYTOMO_TEXT_IO_HPP
#define RELAYTOMO_TEXT_IO_HPP

#include <string>
#include <string_view>
#include <vector>

// Helpers shared by the line-oriented file formats. Doubles are written in the shortest form
// that parses back to the identical value.
namespace relaytomo::text_io
{

std::string format_double(double value);

// Throws std::invalid_argument when the field is not a complete number.
double parse_double(std::string_view field);
long long parse_integer(std::string_view field);

std::vector<std::string_view> split(std::string_view line, char separator = ',');

std::string_view trim(std::string_view s);

} // namespace relaytomo::text_io

#endif
