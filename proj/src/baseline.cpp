// SPDX-License-Identifier: Apache-2.0
//
// holosense: radio-image sensing workbench for large intelligent surfaces
// Copyright (C) 2026 The holosense authors
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

#include "holosense/baseline.hpp"

#include "holosense/errors.hpp"

#include <cmath>
#include <numbers>

namespace holosense::baseline
{
    double log_bessel_i0(double x)
    {
        if (!(x >= 0.0) || std::isinf(x))
            throw NumericError("log_bessel_i0 needs a finite non-negative argument");
        if (x <= kBesselSwitch)
        {
            // I0(x) = sum_k (x^2/4)^k / (k!)^2
            const double q = 0.25 * x * x;
            double term = 1.0, tail = 0.0;
            for (int k = 1; k < 500; ++k)
            {
                term *= q / (double(k) * double(k));
                tail += term;
                if (term < 1e-17 * (1.0 + tail))
                    break;
            }
            return std::log1p(tail);
        }
        // I0(x) ~ e^x / sqrt(2 pi x) * sum_k ((2k-1)!!)^2 / (k! (8x)^k)
        double term = 1.0, sum = 1.0;
        for (int k = 1; k < 60; ++k)
        {
            const double next = term * (2.0 * k - 1.0) * (2.0 * k - 1.0) / (8.0 * k * x);
            if (next >= term)
                break;
            term = next;
            sum += term;
            if (term < 1e-17 * sum)
                break;
        }
        return x - 0.5 * std::log(2.0 * std::numbers::pi * x) + std::log(sum);
    }

    double log_likelihood(std::span<const double> w, std::span<const std::complex<double>> h, double sigma2)
    {
        if (w.size() != h.size())
            throw ShapeError("power and channel vectors differ in length");
        if (!(sigma2 > 0.0) || !std::isfinite(sigma2))
            throw NumericError("sigma2 must be positive and finite");
        const double log_sigma2 = std::log(sigma2);
        double total = 0.0;
        for (std::size_t i = 0; i < w.size(); ++i)
        {
            if (!(w[i] >= 0.0) || !std::isfinite(w[i]))
                throw NumericError("received powers must be finite and non-negative");
            const double h2 = std::norm(h[i]);
            const double arg = 2.0 * std::sqrt(w[i] * h2) / sigma2;
            total += -log_sigma2 - (w[i] + h2) / sigma2 + log_bessel_i0(arg);
        }
        if (!std::isfinite(total))
            throw NumericError("log-likelihood is not finite");
        return total;
    }

    double decision_statistic(std::span<const double> w, const KnownChannelPair &pair)
    {
        if (!(pair.prior_c >= 0.0 && pair.prior_a >= 0.0) || std::abs(pair.prior_c + pair.prior_a - 1.0) > 1e-12)
            throw NumericError("priors must be non-negative and sum to 1");
        const double threshold = std::log(pair.prior_a) - std::log(pair.prior_c);
        return log_likelihood(w, pair.h_c, pair.sigma2) - log_likelihood(w, pair.h_a, pair.sigma2) - threshold;
    }

    RouteLabel lrt_decide(std::span<const double> w, const KnownChannelPair &pair)
    {
        return decision_statistic(w, pair) >= 0.0 ? RouteLabel::Correct : RouteLabel::Anomalous;
    }

} // namespace holosense::baseline
