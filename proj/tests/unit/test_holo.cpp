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

#include "holosense/channel.hpp"
#include "holosense/counter_rng.hpp"
#include "holosense/errors.hpp"
#include "holosense/holo.hpp"
#include "support.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace holosense;
using namespace holosense::holo;
using Complex = std::complex<double>;

namespace
{
    std::vector<double> random_powers(rng::Stream &s, std::size_t n)
    {
        std::vector<double> w(n);
        for (auto &v : w)
            v = s.uniform() * 1e-6;
        return w;
    }
} // namespace

TEST_CASE("power vector")
{
    const std::vector<Complex> unit{{1, 0}, {0, 1}};
    CHECK(power_vector(unit).values == std::vector<double>{1.0, 1.0});
    const std::vector<Complex> zero(5);
    CHECK(power_vector(zero).values == std::vector<double>(5, 0.0));

    rng::Stream s(2);
    std::vector<Complex> y(16);
    for (auto &v : y)
        v = {s.uniform() - 0.5, s.uniform() - 0.5};
    const auto w = power_vector(y);
    for (std::size_t i = 0; i < y.size(); ++i)
        CHECK(std::abs(w.values[i] - (y[i].real() * y[i].real() + y[i].imag() * y[i].imag())) <= 1e-15);
}

TEST_CASE("average_powers identity, identical samples, shape errors")
{
    const PowerVector a{3, 4, {1.0, 2.0, 0.1}};
    const std::vector<PowerVector> one{a};
    CHECK(average_powers(one).values == a.values);
    CHECK(average_powers(one).point_index == 3);

    const std::vector<PowerVector> same(37, a);
    CHECK(average_powers(same).values == a.values);

    PowerAccumulator acc(3);
    for (int i = 0; i < 1000; ++i)
        acc.add(a);
    CHECK(acc.count() == 1000);
    CHECK(acc.mean().values == a.values);

    const std::vector<PowerVector> ragged{a, PowerVector{0, 0, {1.0}}};
    CHECK_THROWS_AS(average_powers(ragged), ShapeError);
    CHECK_THROWS_AS(average_powers(std::span<const PowerVector>{}), ShapeError);
}

TEST_CASE("to_image hand case and degenerate vector")
{
    const std::vector<double> w{1.0, 2.0, 3.0};
    const auto img = to_image(w, 1, 3, RouteLabel::Correct);
    CHECK(img.pixels == std::vector<std::uint8_t>{0, 128, 255});

    const std::vector<double> flat(12, 4.2);
    const auto zero = to_image(flat, 3, 4, RouteLabel::Anomalous, 9);
    CHECK(zero.pixels == std::vector<std::uint8_t>(12, 0));
    CHECK(zero.label == RouteLabel::Anomalous);
    CHECK(zero.point_index == 9);

    CHECK_THROWS_AS(to_image(w, 2, 2, RouteLabel::Correct), ShapeError);
}

TEST_CASE("to_image properties on random vectors")
{
    rng::Stream s(101);
    for (int trial = 0; trial < 200; ++trial)
    {
        const auto w = random_powers(s, 64);
        const auto img = to_image(w, 8, 8, RouteLabel::Correct);
        const double a = 0.01 + 100.0 * s.uniform();
        const double b = (s.uniform() - 0.5) * 10.0;
        std::vector<double> shifted(w.size());
        for (std::size_t i = 0; i < w.size(); ++i)
            shifted[i] = a * w[i] + b;
        CHECK(to_image(shifted, 8, 8, RouteLabel::Correct).pixels == img.pixels);

        const auto lo = std::min_element(w.begin(), w.end()) - w.begin();
        const auto hi = std::max_element(w.begin(), w.end()) - w.begin();
        CHECK(img.pixels[std::size_t(lo)] == 0);
        CHECK(img.pixels[std::size_t(hi)] == 255);
        for (std::size_t i = 0; i < w.size(); ++i)
            for (std::size_t k = 0; k < w.size(); ++k)
                if (w[i] <= w[k])
                    CHECK(img.pixels[i] <= img.pixels[k]);
    }
}

TEST_CASE("PGM bytes, round trip and malformed input")
{
    HoloImage tiny{1, 1, {0}};
    CHECK(encode_pgm(tiny) == std::string("P5\n1 1\n255\n\0", 12));

    rng::Stream s(4);
    HoloImage big{128, 128, std::vector<std::uint8_t>(128 * 128)};
    for (auto &p : big.pixels)
        p = std::uint8_t(s.below(256));
    const auto dir = testing::scratch_dir("pgm");
    const auto path = (dir / "big.pgm").string();
    write_pgm(big, path);
    const auto back = read_pgm(path);
    CHECK(back.rows == 128);
    CHECK(back.cols == 128);
    CHECK(back.pixels == big.pixels);
    CHECK(encode_pgm(back) == testing::slurp(path));

    const auto commented = decode_pgm(std::string("P5\n# made by hand\n2 1\n255\n\x07\x09", 28));
    CHECK(commented.pixels == std::vector<std::uint8_t>{7, 9});

    CHECK_THROWS_AS(decode_pgm(std::string("P5\n1 1\n65535\n\0\0", 15)), FormatError);
    CHECK_THROWS_AS(decode_pgm(std::string("P2\n1 1\n255\n0\n")), FormatError);
    CHECK_THROWS_AS(decode_pgm(std::string("P5\n2 2\n255\n\0\0\0", 14)), FormatError);
    CHECK_THROWS_AS(decode_pgm(std::string("P5\nx 2\n255\n")), FormatError);
    CHECK_THROWS_AS(read_pgm((dir / "none.pgm").string()), IoError);
}

TEST_CASE("channel expansion")
{
    const HoloImage one{1, 1, {7}};
    const auto rgb = expand_channels(one);
    for (const auto &plane : rgb.planes)
        CHECK(plane == std::vector<std::uint8_t>{7});

    HoloImage img{3, 5, {}};
    for (int i = 0; i < 15; ++i)
        img.pixels.push_back(std::uint8_t(i * 17));
    const auto x = expand_channels(img);
    CHECK(x.rows == 3);
    CHECK(x.cols == 5);
    CHECK(x.planes[0] == img.pixels);
    CHECK(x.planes[1] == img.pixels);
    CHECK(x.planes[2] == img.pixels);
}

TEST_CASE("averaging S = 1e4 noisy draws recovers |h|^2 + sigma2")
{
    const double lambda = 0.1, sigma2 = 1e-6;
    const channel::FieldSnapshot snap{0, {{2.0, 1.0}, {0.5, -1.5}, {-5.0, 3.0}}};
    const auto clean = channel::scaled_fields(snap, lambda);
    PowerAccumulator acc(3);
    std::vector<Complex> y;
    for (int d = 0; d < 10000; ++d)
    {
        channel::receive_into(snap, lambda, {sigma2, 77}, std::uint64_t(d), y);
        acc.add(y);
    }
    const auto mean = acc.mean();
    for (std::size_t i = 0; i < 3; ++i)
    {
        const double expect = std::norm(clean[i]) + sigma2;
        CHECK(std::abs(mean.values[i] - expect) / expect < 0.01);
    }
}
