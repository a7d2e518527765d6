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

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numbers>

namespace holosense::channel
{
    namespace
    {
        struct SourceImage
        {
            Vec3 position;
            int bounce_count;
            double gain;
        };

        // All mirrored transmitter images with bounce count <= max order and nonzero gain.
        // Along one axis of extent L the images are (1 - 2q) x + 2 m L with |2m - q| reflections.
        std::vector<SourceImage> enumerate_images(const scene::HallConfig &hall, const Vec3 &tx)
        {
            const int order = hall.max_reflection_order;
            struct AxisImage
            {
                double coord;
                int bounces;
            };
            std::array<std::vector<AxisImage>, 3> per_axis;
            for (int axis = 0; axis < 3; ++axis)
            {
                const double extent = hall.extent(axis);
                for (int m = -order; m <= order; ++m)
                    for (int q = 0; q <= 1; ++q)
                    {
                        const int bounces = std::abs(2 * m - q);
                        if (bounces > order)
                            continue;
                        per_axis[axis].push_back({(1 - 2 * q) * tx[axis] + 2.0 * m * extent, bounces});
                    }
            }

            std::vector<SourceImage> images;
            for (const auto &ix : per_axis[0])
                for (const auto &iy : per_axis[1])
                    for (const auto &iz : per_axis[2])
                    {
                        const int bounces = ix.bounces + iy.bounces + iz.bounces;
                        if (bounces > order)
                            continue;
                        const double gain = bounces == 0 ? 1.0 : std::pow(hall.wall_reflection_gamma, bounces);
                        if (gain <= 0.0)
                            continue;
                        images.push_back({{ix.coord, iy.coord, iz.coord}, bounces, gain});
                    }
            return images;
        }

        bool stronger(const PropagationPath &a, const PropagationPath &b)
        {
            const double amp_a = a.cumulative_gain / a.length_m;
            const double amp_b = b.cumulative_gain / b.length_m;
            if (amp_a != amp_b)
                return amp_a > amp_b;
            if (a.length_m != b.length_m)
                return a.length_m < b.length_m;
            if (a.bounce_count != b.bounce_count)
                return a.bounce_count < b.bounce_count;
            const auto &p = a.source_image, &q = b.source_image;
            if (p.x != q.x)
                return p.x < q.x;
            if (p.y != q.y)
                return p.y < q.y;
            return p.z < q.z;
        }

        void select_paths(std::span<const SourceImage> images, const Vec3 &rx, int n_keep,
                          std::vector<PropagationPath> &out)
        {
            out.clear();
            for (const auto &img : images)
                out.push_back({distance(img.position, rx), img.bounce_count, img.gain, img.position});
            const std::size_t keep = std::min(out.size(), std::size_t(n_keep));
            std::partial_sort(out.begin(), out.begin() + std::ptrdiff_t(keep), out.end(), stronger);
            out.resize(keep);
        }

        void check_endpoint(const scene::HallConfig &hall, const Vec3 &p, const char *what)
        {
            if (!hall.contains(p))
                throw GeometryError(std::string(what) + " lies outside the hall");
        }

        double sum_field_energy(std::span<const FieldSnapshot> snapshots, std::size_t &m_out)
        {
            if (snapshots.empty())
                throw CalibrationError("no snapshots to calibrate against");
            const std::size_t m = snapshots.front().fields.size();
            double energy = 0.0;
            for (const auto &s : snapshots)
            {
                if (s.fields.size() != m)
                    throw ShapeError("snapshots have different element counts");
                for (const auto &e : s.fields)
                    energy += std::norm(e);
            }
            m_out = m;
            return energy;
        }

        void put_u32(std::ostream &os, std::uint32_t v)
        {
            const unsigned char b[4] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8),
                                        static_cast<unsigned char>(v >> 16), static_cast<unsigned char>(v >> 24)};
            os.write(reinterpret_cast<const char *>(b), 4);
        }

        void put_f64(std::ostream &os, double v)
        {
            std::uint64_t bits = std::bit_cast<std::uint64_t>(v);
            unsigned char b[8];
            for (int k = 0; k < 8; ++k)
                b[k] = static_cast<unsigned char>(bits >> (8 * k));
            os.write(reinterpret_cast<const char *>(b), 8);
        }

        std::uint32_t get_u32(std::istream &is)
        {
            unsigned char b[4];
            if (!is.read(reinterpret_cast<char *>(b), 4))
                throw FormatError("LISF: truncated header");
            return std::uint32_t(b[0]) | std::uint32_t(b[1]) << 8 | std::uint32_t(b[2]) << 16 | std::uint32_t(b[3]) << 24;
        }

        double get_f64(std::istream &is)
        {
            unsigned char b[8];
            if (!is.read(reinterpret_cast<char *>(b), 8))
                throw FormatError("LISF: truncated payload");
            std::uint64_t bits = 0;
            for (int k = 0; k < 8; ++k)
                bits |= std::uint64_t(b[k]) << (8 * k);
            return std::bit_cast<double>(bits);
        }

        constexpr std::uint32_t kLisfVersion = 1;
    } // namespace

    std::vector<PropagationPath> trace_paths(const scene::HallConfig &hall, const Vec3 &tx, const Vec3 &rx)
    {
        hall.validate();
        check_endpoint(hall, tx, "transmitter");
        check_endpoint(hall, rx, "receiver");
        if (tx == rx)
            throw GeometryError("transmitter and receiver coincide");
        const auto images = enumerate_images(hall, tx);
        std::vector<PropagationPath> paths;
        select_paths(images, rx, hall.n_ray_paths, paths);
        return paths;
    }

    Complex path_field(const PropagationPath &path, double tx_power_dbm, double wavelength)
    {
        const double tx_power_w = std::pow(10.0, (tx_power_dbm - 30.0) / 10.0);
        const double amplitude = path.cumulative_gain * std::sqrt(30.0 * tx_power_w) / path.length_m;
        const double cycles = path.length_m / wavelength;
        const double phase = -2.0 * std::numbers::pi * (cycles - std::floor(cycles));
        return std::polar(amplitude, phase);
    }

    Complex superpose(std::span<const PropagationPath> paths, double tx_power_dbm, double wavelength)
    {
        Complex total{0.0, 0.0};
        for (const auto &p : paths)
            total += path_field(p, tx_power_dbm, wavelength);
        return total;
    }

    FieldSnapshot field_snapshot(const scene::HallConfig &hall, const scene::AntennaArray &array,
                                 const Vec3 &tx, int point_index)
    {
        hall.validate();
        check_endpoint(hall, tx, "transmitter");
        const auto images = enumerate_images(hall, tx);
        const double wavelength = hall.wavelength();

        FieldSnapshot snap;
        snap.point_index = point_index;
        snap.fields.reserve(array.size());
        std::vector<PropagationPath> paths;
        for (const auto &rx : array.element_positions)
        {
            check_endpoint(hall, rx, "array element");
            if (rx == tx)
                throw GeometryError("transmitter coincides with an array element");
            select_paths(images, rx, hall.n_ray_paths, paths);
            snap.fields.push_back(superpose(paths, hall.tx_power_dbm, wavelength));
        }
        return snap;
    }

    double detector_scale(double wavelength)
    {
        return std::sqrt(wavelength * wavelength / (4.0 * std::numbers::pi * kFreeSpaceImpedance));
    }

    std::vector<Complex> scaled_fields(const FieldSnapshot &snapshot, double wavelength)
    {
        const double scale = detector_scale(wavelength);
        std::vector<Complex> out(snapshot.fields.size());
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] = scale * snapshot.fields[i];
        return out;
    }

    void receive_into(const FieldSnapshot &snapshot, double wavelength, const NoiseConfig &noise,
                      std::uint64_t draw_index, std::vector<Complex> &out)
    {
        if (!(noise.sigma2 >= 0.0) || !std::isfinite(noise.sigma2))
            throw NumericError("noise variance must be finite and non-negative");
        const double scale = detector_scale(wavelength);
        const std::size_t m = snapshot.fields.size();
        out.resize(m);
        if (noise.sigma2 == 0.0)
        {
            for (std::size_t i = 0; i < m; ++i)
                out[i] = scale * snapshot.fields[i];
            return;
        }
        const double sd = std::sqrt(0.5 * noise.sigma2);
        const std::uint64_t base = rng::key(noise.seed, std::uint64_t(std::int64_t(snapshot.point_index)), draw_index);
        for (std::size_t i = 0; i < m; ++i)
        {
            const auto [re, im] = rng::normal_pair(rng::combine(base, i));
            out[i] = scale * snapshot.fields[i] + Complex{sd * re, sd * im};
        }
    }

    std::vector<Complex> receive(const FieldSnapshot &snapshot, double wavelength, const NoiseConfig &noise,
                                 std::uint64_t draw_index)
    {
        std::vector<Complex> out;
        receive_into(snapshot, wavelength, noise, draw_index, out);
        return out;
    }

    double calibrate_noise(std::span<const FieldSnapshot> snapshots, double wavelength, double target_snr_db)
    {
        if (!std::isfinite(target_snr_db))
            throw CalibrationError("target SNR must be finite");
        std::size_t m = 0;
        const double energy = sum_field_energy(snapshots, m);
        if (!(energy > 0.0))
            throw CalibrationError("all fields are zero; SNR is undefined");
        const double gamma = std::pow(10.0, target_snr_db / 10.0);
        const double scale2 = wavelength * wavelength / (4.0 * std::numbers::pi * kFreeSpaceImpedance);
        return scale2 * energy / (double(m) * double(snapshots.size()) * gamma);
    }

    double average_snr(std::span<const FieldSnapshot> snapshots, double wavelength, double sigma2)
    {
        std::size_t m = 0;
        const double energy = sum_field_energy(snapshots, m);
        const double scale2 = wavelength * wavelength / (4.0 * std::numbers::pi * kFreeSpaceImpedance);
        return scale2 * energy / (double(m) * double(snapshots.size()) * sigma2);
    }

    void write_snapshots(const std::string &path, std::span<const FieldSnapshot> snapshots)
    {
        const std::size_t m = snapshots.empty() ? 0 : snapshots.front().fields.size();
        for (const auto &s : snapshots)
            if (s.fields.size() != m)
                throw ShapeError("snapshots have different element counts");
        std::ofstream os(path, std::ios::binary);
        if (!os)
            throw IoError("cannot open " + path + " for writing");
        os.write("LISF", 4);
        put_u32(os, kLisfVersion);
        put_u32(os, std::uint32_t(m));
        put_u32(os, std::uint32_t(snapshots.size()));
        for (const auto &s : snapshots)
            for (const auto &e : s.fields)
            {
                put_f64(os, e.real());
                put_f64(os, e.imag());
            }
        if (!os)
            throw IoError("write failed for " + path);
    }

    std::vector<FieldSnapshot> read_snapshots(const std::string &path)
    {
        std::ifstream is(path, std::ios::binary);
        if (!is)
            throw IoError("cannot open " + path);
        char magic[4];
        if (!is.read(magic, 4) || std::memcmp(magic, "LISF", 4) != 0)
            throw FormatError("LISF: bad magic");
        const std::uint32_t version = get_u32(is);
        if (version != kLisfVersion)
            throw FormatError("LISF: unsupported version " + std::to_string(version));
        const std::uint32_t m = get_u32(is);
        const std::uint32_t t = get_u32(is);
        std::vector<FieldSnapshot> out(t);
        for (std::uint32_t k = 0; k < t; ++k)
        {
            out[k].point_index = int(k);
            out[k].fields.resize(m);
            for (auto &e : out[k].fields)
            {
                const double re = get_f64(is);
                const double im = get_f64(is);
                e = {re, im};
            }
        }
        if (is.peek() != std::char_traits<char>::eof())
            throw FormatError("LISF: trailing bytes after payload");
        return out;
    }

} // namespace holosense::channel
