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

#include <relaytomo/numerics.hpp>

#include <limits>
#include <numbers>

namespace relaytomo::numerics
{

namespace
{

constexpr double eps = std::numeric_limits<double>::epsilon();
constexpr int max_iterations = 100000;

void check_gamma_args(double a, double x)
{
    if (!(a > 0.0) || !std::isfinite(a))
        throw DomainError("incomplete gamma: shape a must be positive and finite");
    if (!(x >= 0.0))
        throw DomainError("incomplete gamma: x must be non-negative");
}

// log of the common prefactor x^a e^-x / Gamma(a)
double log_prefactor(double a, double x) { return a * std::log(x) - x - std::lgamma(a); }

// Series for P(a, x) without the prefactor, valid (and fast) for x < a + 1.
double lower_series(double a, double x)
{
    double term = 1.0 / a;
    double sum = term;
    for (int n = 1; n < max_iterations; ++n)
    {
        term *= x / (a + n);
        sum += term;
        if (std::abs(term) < std::abs(sum) * eps)
            return sum;
    }
    throw DomainError("incomplete gamma: series did not converge");
}

// Continued fraction for Q(a, x) without the prefactor (modified Lentz), valid for x >= a + 1.
double upper_fraction(double a, double x)
{
    constexpr double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < max_iterations; ++i)
    {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny)
            d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny)
            c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < eps)
            return h;
    }
    throw DomainError("incomplete gamma: continued fraction did not converge");
}

} // namespace

double regularized_lower_gamma(double a, double x)
{
    check_gamma_args(a, x);
    if (x == 0.0)
        return 0.0;
    if (std::isinf(x))
        return 1.0;
    if (x < a + 1.0)
        return std::min(1.0, std::exp(log_prefactor(a, x)) * lower_series(a, x));
    return 1.0 - std::exp(log_prefactor(a, x)) * upper_fraction(a, x);
}

double regularized_upper_gamma(double a, double x)
{
    check_gamma_args(a, x);
    if (x == 0.0)
        return 1.0;
    if (std::isinf(x))
        return 0.0;
    if (x < a + 1.0)
        return 1.0 - std::min(1.0, std::exp(log_prefactor(a, x)) * lower_series(a, x));
    return std::exp(log_prefactor(a, x)) * upper_fraction(a, x);
}

double log_regularized_upper_gamma(double a, double x)
{
    check_gamma_args(a, x);
    if (x == 0.0)
        return 0.0;
    if (std::isinf(x))
        return -std::numeric_limits<double>::infinity();
    if (x < a + 1.0)
        return std::log1p(-std::min(1.0, std::exp(log_prefactor(a, x)) * lower_series(a, x)));
    return log_prefactor(a, x) + std::log(upper_fraction(a, x));
}

GaussLegendreRule gauss_legendre(int order)
{
    if (order < 1)
        throw DomainError("gauss_legendre: order must be >= 1");
    const auto n = static_cast<std::size_t>(order);
    GaussLegendreRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);

    // roots are symmetric; solve for the upper half and mirror
    for (std::size_t i = 0; i < (n + 1) / 2; ++i)
    {
        double z = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter)
        {
            double p0 = 1.0, p1 = 0.0;
            for (std::size_t k = 1; k <= n; ++k)
            {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / static_cast<double>(k);
            }
            dp = static_cast<double>(n) * (z * p0 - p1) / (z * z - 1.0);
            const double step = p0 / dp;
            z -= step;
            if (std::abs(step) < 1e-15)
                break;
        }
        // recompute the derivative at the converged root
        {
            double p0 = 1.0, p1 = 0.0;
            for (std::size_t k = 1; k <= n; ++k)
            {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / static_cast<double>(k);
            }
            dp = static_cast<double>(n) * (z * p0 - p1) / (z * z - 1.0);
        }
        const double w = 2.0 / ((1.0 - z * z) * dp * dp);
        rule.nodes[i] = -z;
        rule.nodes[n - 1 - i] = z;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1)
        rule.nodes[n / 2] = 0.0;
    return rule;
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    engine_.seed(seq);
}

double RngStream::uniform()
{
    // 53 random mantissa bits
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

RngStream RngStream::split(std::uint64_t key) const
{
    // splitmix64 finaliser over (stream, key)
    std::uint64_t z = stream_ + 0x9e3779b97f4a7c15ULL * (key + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return RngStream(seed_, z);
}

double sample_gamma(double shape, double scale, RngStream &rng)
{
    if (!(shape > 0.0) || !(scale > 0.0))
        throw DomainError("sample_gamma: shape and scale must be positive");
    std::gamma_distribution<double> dist(shape, scale);
    return dist(rng);
}

} // namespace relaytomo::numerics
