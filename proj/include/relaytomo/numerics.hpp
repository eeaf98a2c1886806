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

#ifndef RELAYTOMO_NUMERICS_HPP
#define RELAYTOMO_NUMERICS_HPP

#include <relaytomo/errors.hpp>

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

// Special functions, bracketing root solver, tensor Gauss-Legendre quadrature and seeded
// random streams. Everything here is pure given its arguments.
namespace relaytomo::numerics
{

// P(a, x) = gamma(a, x) / Gamma(a). Series for x < a + 1, continued fraction otherwise.
// Throws DomainError for a <= 0 or x < 0.
double regularized_lower_gamma(double a, double x);

// Q(a, x) = 1 - P(a, x), computed without cancellation in the upper tail.
double regularized_upper_gamma(double a, double x);

// log Q(a, x); stays finite far into the tail where Q itself underflows.
double log_regularized_upper_gamma(double a, double x);

inline constexpr int max_bracket_doublings = 60;

// Bisection on a non-decreasing f with f(lo) <= 0 <= f(hi). If f(hi) < 0 the upper end is
// pushed out by doubling the bracket width (at most max_bracket_doublings times). Returns the
// midpoint of a final bracket of width <= tol (and <= rel_tol * |upper end| when rel_tol > 0),
// so f(r - tol) <= 0 <= f(r + tol).
template <class F>
double solve_increasing_root(F &&f, double lo, double hi, double tol, double rel_tol = 0.0)
{
    if (!(tol > 0.0))
        throw DomainError("solve_increasing_root: tolerance must be positive");
    if (!(hi > lo))
        throw DomainError("solve_increasing_root: need lo < hi");
    if (f(lo) > 0.0)
        throw BracketError("solve_increasing_root: f(lo) > 0");

    int doublings = 0;
    while (f(hi) < 0.0)
    {
        if (doublings == max_bracket_doublings)
            throw BracketError("solve_increasing_root: no sign change after " +
                               std::to_string(max_bracket_doublings) + " bracket doublings");
        const double width = hi - lo;
        lo = hi; // f(hi) < 0, so the old upper end is a valid lower end
        hi = lo + 2.0 * width;
        ++doublings;
    }

    while (hi - lo > tol || (rel_tol > 0.0 && hi - lo > rel_tol * std::abs(hi)))
    {
        const double mid = lo + 0.5 * (hi - lo);
        if (mid <= lo || mid >= hi)
            break; // bracket is at floating-point resolution
        if (f(mid) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return lo + 0.5 * (hi - lo);
}

struct QuadratureSpec
{
    int order = 16; // points per axis, tensor-product Gauss-Legendre

    void validate() const
    {
        if (order < 2)
            throw DomainError("QuadratureSpec: order must be >= 2");
    }
};

struct GaussLegendreRule
{
    std::vector<double> nodes;   // on [-1, 1], ascending
    std::vector<double> weights; // sum to 2
};

// Nodes are the roots of P_n found by Newton iteration from the Chebyshev-like initial guess.
GaussLegendreRule gauss_legendre(int order);

struct Rectangle
{
    double x_min = 0.0;
    double x_max = 0.0;
    double y_min = 0.0;
    double y_max = 0.0;

    double width() const { return x_max - x_min; }
    double height() const { return y_max - y_min; }
};

namespace detail
{
template <class F>
double integrate_panel(F &f, const GaussLegendreRule &rule, const Rectangle &box)
{
    const double hx = 0.5 * box.width(), cx = box.x_min + hx;
    const double hy = 0.5 * box.height(), cy = box.y_min + hy;
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    {
        const double x = cx + hx * rule.nodes[i];
        double row = 0.0;
        for (std::size_t j = 0; j < rule.nodes.size(); ++j)
            row += rule.weights[j] * f(x, cy + hy * rule.nodes[j]);
        sum += rule.weights[i] * row;
    }
    return sum * hx * hy;
}
} // namespace detail

// Tensor-product Gauss-Legendre estimate of the integral of f(x, y) over box. Exact for
// polynomials of degree <= 2*order - 1 in each variable. A zero-area box integrates to 0.
template <class F>
double integrate_2d(F &&f, const Rectangle &box, const QuadratureSpec &spec = {})
{
    spec.validate();
    if (box.width() == 0.0 || box.height() == 0.0)
        return 0.0;
    const auto rule = gauss_legendre(spec.order);
    return detail::integrate_panel(f, rule, box);
}

// Same rule applied on a uniform panels x panels partition of box. Used where the integrand
// carries an indicator discontinuity (the pdf support edge).
template <class F>
double integrate_2d_composite(F &&f, const Rectangle &box, const QuadratureSpec &spec, int panels)
{
    spec.validate();
    if (panels < 1)
        throw DomainError("integrate_2d_composite: panels must be >= 1");
    if (box.width() == 0.0 || box.height() == 0.0)
        return 0.0;
    const auto rule = gauss_legendre(spec.order);
    const double dx = box.width() / panels, dy = box.height() / panels;
    double sum = 0.0;
    for (int i = 0; i < panels; ++i)
        for (int j = 0; j < panels; ++j)
        {
            const Rectangle sub{box.x_min + i * dx, box.x_min + (i + 1) * dx, box.y_min + j * dy,
                                box.y_min + (j + 1) * dy};
            sum += detail::integrate_panel(f, rule, sub);
        }
    return sum;
}

// Seeded 64-bit random stream. Each (seed, stream id) pair selects an independent
// mt19937_64 state through std::seed_seq, so logical sampling tasks never share draws.
class RngStream
{
  public:
    using result_type = std::uint64_t;

    RngStream(std::uint64_t seed, std::uint64_t stream);

    static constexpr result_type min() { return std::mt19937_64::min(); }
    static constexpr result_type max() { return std::mt19937_64::max(); }
    result_type operator()() { return engine_(); }

    // Uniform on [0, 1).
    double uniform();

    // Independent child stream keyed by `key`; same (seed, stream, key) gives the same child.
    RngStream split(std::uint64_t key) const;

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream() const { return stream_; }

  private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::mt19937_64 engine_;
};

// One draw from the gamma distribution with the given shape and scale (mean shape*scale).
double sample_gamma(double shape, double scale, RngStream &rng);

} // namespace relaytomo::numerics

#endif
