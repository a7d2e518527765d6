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

#ifndef HOLOSENSE_BASELINE_HPP
#define HOLOSENSE_BASELINE_HPP

// Likelihood-ratio reference detector for two known pure-LoS channels. Under
// y = h + n with n ~ CN(0, sigma2), the power |y|^2 of one element has the density
//   f(w) = exp(-(w + |h|^2) / sigma2) I0(2 sqrt(w) |h| / sigma2) / sigma2.

#include "holosense/scene.hpp"

#include <complex>
#include <span>
#include <vector>

namespace holosense::baseline
{
    using scene::RouteLabel;

    // Series below this argument, asymptotic expansion above
    inline constexpr double kBesselSwitch = 30.0;

    // log I0(x) for x >= 0, accurate for arguments far beyond exp() overflow
    double log_bessel_i0(double x);

    // Sum over elements of log f(w_i | h_i, sigma2)
    double log_likelihood(std::span<const double> w, std::span<const std::complex<double>> h, double sigma2);

    struct KnownChannelPair
    {
        std::vector<std::complex<double>> h_c; // detector-scaled channel of the correct point
        std::vector<std::complex<double>> h_a; // detector-scaled channel of the anomalous point
        double prior_c = 0.5;
        double prior_a = 0.5;
        double sigma2 = 1.0;
    };

    // log f(w|h_c) - log f(w|h_a) - log(prior_a / prior_c); >= 0 decides Correct
    double decision_statistic(std::span<const double> w, const KnownChannelPair &pair);

    RouteLabel lrt_decide(std::span<const double> w, const KnownChannelPair &pair);

} // namespace holosense::baseline

#endif
