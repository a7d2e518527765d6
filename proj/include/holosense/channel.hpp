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

#ifndef HOLOSENSE_CHANNEL_HPP
#define HOLOSENSE_CHANNEL_HPP

#include "holosense/geometry.hpp"
#include "holosense/scene.hpp"

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace holosense::channel
{
    using Complex = std::complex<double>;

    inline constexpr double kFreeSpaceImpedance = 120.0 * 3.14159265358979323846; // Z0 [Ohm]

    // One specular ray from a (mirrored) transmitter image to the receiver
    struct PropagationPath
    {
        double length_m = 0.0;
        int bounce_count = 0;
        double cumulative_gain = 1.0; // gamma^bounce_count
        Vec3 source_image;
    };

    // Image-source tracer over the six hall planes. Returns the LoS path plus all
    // reflections up to hall.max_reflection_order with nonzero gain, strongest first
    // (gain / length, ties to the shorter path), at most hall.n_ray_paths of them.
    std::vector<PropagationPath> trace_paths(const scene::HallConfig &hall, const Vec3 &tx, const Vec3 &rx);

    // Isotropic free-space field of one path [V/m]:
    // gain * sqrt(30 * P_t) / length * exp(-j 2 pi length / lambda)
    Complex path_field(const PropagationPath &path, double tx_power_dbm, double wavelength);

    Complex superpose(std::span<const PropagationPath> paths, double tx_power_dbm, double wavelength);

    struct FieldSnapshot
    {
        int point_index = 0;
        std::vector<Complex> fields; // one per array element [V/m]
    };

    FieldSnapshot field_snapshot(const scene::HallConfig &hall, const scene::AntennaArray &array,
                                 const Vec3 &tx, int point_index = 0);

    struct NoiseConfig
    {
        double sigma2 = 0.0; // noise power at the detector [W]
        std::uint64_t seed = 0;
    };

    // sqrt(lambda^2 Z_i / (4 pi Z0)) with Z_i = 1: converts field [V/m] to detector amplitude
    double detector_scale(double wavelength);

    // Noiseless detector output for every element
    std::vector<Complex> scaled_fields(const FieldSnapshot &snapshot, double wavelength);

    // y_i = detector_scale * E_i + n_i, n_i ~ CN(0, sigma2). The noise of element i is
    // keyed by (seed, point_index, draw_index, i) and is reproducible in isolation.
    std::vector<Complex> receive(const FieldSnapshot &snapshot, double wavelength, const NoiseConfig &noise,
                                 std::uint64_t draw_index);

    // Same as receive() but writes into 'out' (resized to M) to avoid allocations in hot loops
    void receive_into(const FieldSnapshot &snapshot, double wavelength, const NoiseConfig &noise,
                      std::uint64_t draw_index, std::vector<Complex> &out);

    // Noise variance that makes the route-average SNR equal target_snr_db:
    // sigma2 = lambda^2 / (4 pi Z0 M T gamma) * sum_t sum_i |E_i(t)|^2
    double calibrate_noise(std::span<const FieldSnapshot> snapshots, double wavelength, double target_snr_db);

    // Route-average SNR (linear) for a given sigma2, the forward form of the calibration
    double average_snr(std::span<const FieldSnapshot> snapshots, double wavelength, double sigma2);

    // Snapshot dump: little-endian {"LISF", u32 version, u32 M, u32 T} then T*M (f64 re, f64 im)
    void write_snapshots(const std::string &path, std::span<const FieldSnapshot> snapshots);
    std::vector<FieldSnapshot> read_snapshots(const std::string &path);

} // namespace holosense::channel

#endif
