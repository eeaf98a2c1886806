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

#ifndef RELAYTOMO_ERRORS_HPP
#define RELAYTOMO_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace relaytomo
{

// Argument outside the mathematical domain of a function (e.g. a <= 0 for the gamma function).
class DomainError : public std::domain_error
{
  public:
    using std::domain_error::domain_error;
};

// A root bracket could not be established.
class BracketError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

// Collinear or otherwise singular geometry (relay on the baseline, Omega + Psi at 0 or pi, ...).
class DegenerateGeometryError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

// Discretisation produced no cells.
class EmptyGridError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

// Malformed serialized input (measurement files, reports, CSV tables).
class ParseError : public std::runtime_error
{
  public:
    ParseError(const std::string &what, std::size_t line)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line)
    {
    }
    std::size_t line() const noexcept { return line_; }

  private:
    std::size_t line_;
};

} // namespace relaytomo

#endif
