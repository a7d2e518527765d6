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

#include "holosense/holo.hpp"

#include "holosense/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>

namespace holosense::holo
{
    PowerVector power_vector(std::span<const std::complex<double>> y)
    {
        PowerVector w;
        w.values.resize(y.size());
        for (std::size_t i = 0; i < y.size(); ++i)
            w.values[i] = y[i].real() * y[i].real() + y[i].imag() * y[i].imag();
        return w;
    }

    PowerVector average_powers(std::span<const PowerVector> samples)
    {
        if (samples.empty())
            throw ShapeError("average_powers needs at least one sample");
        PowerAccumulator acc(samples.front().values.size());
        for (const auto &s : samples)
            acc.add(s);
        PowerVector out = acc.mean();
        out.point_index = samples.front().point_index;
        out.draw_index = samples.front().draw_index;
        return out;
    }

    void PowerAccumulator::add(std::span<const std::complex<double>> y)
    {
        if (y.size() != mean_.size())
            throw ShapeError("power sample length mismatch");
        ++count_;
        const double inv = 1.0 / double(count_);
        for (std::size_t i = 0; i < y.size(); ++i)
        {
            const double p = y[i].real() * y[i].real() + y[i].imag() * y[i].imag();
            mean_[i] += (p - mean_[i]) * inv;
        }
    }

    void PowerAccumulator::add(const PowerVector &w)
    {
        if (w.values.size() != mean_.size())
            throw ShapeError("power sample length mismatch");
        ++count_;
        const double inv = 1.0 / double(count_);
        for (std::size_t i = 0; i < mean_.size(); ++i)
            mean_[i] += (w.values[i] - mean_[i]) * inv;
    }

    PowerVector PowerAccumulator::mean() const
    {
        if (count_ == 0)
            throw ShapeError("mean of zero power samples");
        PowerVector out;
        out.values = mean_;
        return out;
    }

    HoloImage to_image(std::span<const double> w, int rows, int cols, RouteLabel label, int point_index)
    {
        if (rows < 1 || cols < 1 || std::size_t(rows) * std::size_t(cols) != w.size())
            throw ShapeError("image shape " + std::to_string(rows) + "x" + std::to_string(cols) +
                             " does not match " + std::to_string(w.size()) + " power values");
        HoloImage img;
        img.rows = rows;
        img.cols = cols;
        img.label = label;
        img.point_index = point_index;
        img.pixels.assign(w.size(), 0);

        const auto [lo, hi] = std::minmax_element(w.begin(), w.end());
        const double w_min = *lo, w_max = *hi;
        if (!(w_max > w_min))
            return img;
        const double range = w_max - w_min;
        for (std::size_t i = 0; i < w.size(); ++i)
        {
            const double v = std::ceil((w[i] - w_min) * 255.0 / range);
            img.pixels[i] = static_cast<std::uint8_t>(std::clamp(v, 0.0, 255.0));
        }
        return img;
    }

    HoloImage to_image(const PowerVector &w, int rows, int cols, RouteLabel label)
    {
        return to_image(w.values, rows, cols, label, w.point_index);
    }

    std::string encode_pgm(const HoloImage &image)
    {
        if (image.rows < 1 || image.cols < 1 || image.pixels.size() != std::size_t(image.rows) * std::size_t(image.cols))
            throw ShapeError("malformed image");
        std::string out = "P5\n" + std::to_string(image.cols) + " " + std::to_string(image.rows) + "\n255\n";
        out.append(reinterpret_cast<const char *>(image.pixels.data()), image.pixels.size());
        return out;
    }

    namespace
    {
        // Reads one header token, skipping whitespace and '#' comments
        std::string next_token(std::string_view bytes, std::size_t &pos)
        {
            while (pos < bytes.size())
            {
                const unsigned char ch = static_cast<unsigned char>(bytes[pos]);
                if (ch == '#')
                {
                    while (pos < bytes.size() && bytes[pos] != '\n' && bytes[pos] != '\r')
                        ++pos;
                }
                else if (std::isspace(ch))
                    ++pos;
                else
                    break;
            }
            const std::size_t begin = pos;
            while (pos < bytes.size() && !std::isspace(static_cast<unsigned char>(bytes[pos])) && bytes[pos] != '#')
                ++pos;
            if (begin == pos)
                throw FormatError("PGM: truncated header");
            return std::string(bytes.substr(begin, pos - begin));
        }

        int header_int(std::string_view bytes, std::size_t &pos, const char *what)
        {
            const std::string tok = next_token(bytes, pos);
            if (tok.size() > 9 || !std::all_of(tok.begin(), tok.end(), [](char c) { return c >= '0' && c <= '9'; }))
                throw FormatError(std::string("PGM: invalid ") + what + " '" + tok + "'");
            return std::stoi(tok);
        }
    } // namespace

    HoloImage decode_pgm(std::string_view bytes)
    {
        std::size_t pos = 0;
        if (next_token(bytes, pos) != "P5")
            throw FormatError("PGM: expected binary 'P5' magic");
        const int cols = header_int(bytes, pos, "width");
        const int rows = header_int(bytes, pos, "height");
        const int maxval = header_int(bytes, pos, "maxval");
        if (cols < 1 || rows < 1)
            throw FormatError("PGM: empty image");
        if (maxval != 255)
            throw FormatError("PGM: maxval must be 255, got " + std::to_string(maxval));
        if (pos >= bytes.size() || !std::isspace(static_cast<unsigned char>(bytes[pos])))
            throw FormatError("PGM: missing separator before raster");
        ++pos;
        const std::size_t n = std::size_t(rows) * std::size_t(cols);
        if (bytes.size() - pos < n)
            throw FormatError("PGM: truncated raster");
        if (bytes.size() - pos > n)
            throw FormatError("PGM: trailing bytes after raster");
        HoloImage img;
        img.rows = rows;
        img.cols = cols;
        img.pixels.assign(reinterpret_cast<const std::uint8_t *>(bytes.data() + pos),
                          reinterpret_cast<const std::uint8_t *>(bytes.data() + pos + n));
        return img;
    }

    void write_pgm(const HoloImage &image, const std::string &path)
    {
        const std::string bytes = encode_pgm(image);
        std::ofstream os(path, std::ios::binary);
        if (!os || !os.write(bytes.data(), std::streamsize(bytes.size())))
            throw IoError("cannot write " + path);
    }

    HoloImage read_pgm(const std::string &path)
    {
        std::ifstream is(path, std::ios::binary);
        if (!is)
            throw IoError("cannot open " + path);
        const std::string bytes((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
        return decode_pgm(bytes);
    }

    ThreePlaneImage expand_channels(const HoloImage &image)
    {
        ThreePlaneImage out;
        out.rows = image.rows;
        out.cols = image.cols;
        out.planes.fill(image.pixels);
        return out;
    }

} // namespace holosense::holo
