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

#ifndef HOLOSENSE_HOLO_HPP
#define HOLOSENSE_HOLO_HPP

#include "holosense/scene.hpp"

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace holosense::holo
{
    using scene::RouteLabel;

    // Received power per element [W]
    struct PowerVector
    {
        int point_index = 0;
        int draw_index = 0;
        std::vector<double> values;
    };

    // values[i] = |y_i|^2
    PowerVector power_vector(std::span<const std::complex<double>> y);

    // Element-wise mean of S >= 1 power vectors of equal length. The result takes
    // point/draw indices from the first sample.
    PowerVector average_powers(std::span<const PowerVector> samples);

    // Streaming form of average_powers for samples generated one at a time
    class PowerAccumulator
    {
    public:
        explicit PowerAccumulator(std::size_t length) : mean_(length, 0.0) {}
        void add(std::span<const std::complex<double>> y);
        void add(const PowerVector &w);
        std::size_t count() const { return count_; }
        PowerVector mean() const;

    private:
        std::vector<double> mean_; // running mean, exact for identical samples
        std::size_t count_ = 0;
    };

    // 8-bit grayscale radio image, row-major
    struct HoloImage
    {
        int rows = 0;
        int cols = 0;
        std::vector<std::uint8_t> pixels;
        RouteLabel label = RouteLabel::Correct;
        int point_index = 0;

        std::uint8_t at(int r, int c) const { return pixels[std::size_t(r) * std::size_t(cols) + std::size_t(c)]; }
    };

    // Min-max mapping onto [0, 255] with ceiling quantization:
    //   pixel_i = ceil((w_i - w_min) * 255 / (w_max - w_min))
    // A constant vector renders all zeros.
    HoloImage to_image(std::span<const double> w, int rows, int cols, RouteLabel label, int point_index = 0);
    HoloImage to_image(const PowerVector &w, int rows, int cols, RouteLabel label);

    // Binary PGM ("P5", maxval 255)
    std::string encode_pgm(const HoloImage &image);
    HoloImage decode_pgm(std::string_view bytes);
    void write_pgm(const HoloImage &image, const std::string &path);
    HoloImage read_pgm(const std::string &path);

    struct ThreePlaneImage
    {
        int rows = 0;
        int cols = 0;
        std::array<std::vector<std::uint8_t>, 3> planes;
    };

    // Replicates the gray plane into three identical channels for RGB feature pipelines
    ThreePlaneImage expand_channels(const HoloImage &image);

} // namespace holosense::holo

#endif
