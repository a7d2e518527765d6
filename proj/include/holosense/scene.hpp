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

#ifndef HOLOSENSE_SCENE_HPP
#define HOLOSENSE_SCENE_HPP

#include "holosense/geometry.hpp"

#include <string>
#include <vector>

namespace holosense::scene
{
    inline constexpr double kSpeedOfLight = 299792458.0; // [m/s]

    // Rectangular hall spanning [0, width] x [0, depth] x [0, height].
    // All six planes share one reflection coefficient.
    struct HallConfig
    {
        double width_m = 22.0;
        double depth_m = 22.0;
        double height_m = 6.0;
        double wall_reflection_gamma = 0.5;
        int max_reflection_order = 2;
        double carrier_freq_hz = 3.5e9;
        double tx_power_dbm = 20.0;
        int n_ray_paths = 20; // strongest paths kept per link

        double wavelength() const { return kSpeedOfLight / carrier_freq_hz; }
        double extent(int axis) const { return axis == 0 ? width_m : (axis == 1 ? depth_m : height_m); }

        // Closed-box containment test
        bool contains(const Vec3 &p) const;

        // Throws GeometryError when an invariant is violated
        void validate() const;
    };

    // Planar grid of receive elements. Element (r, c) sits at
    // origin + r * spacing * axis_row + c * spacing * axis_col, stored row-major.
    struct AntennaArray
    {
        int rows = 0;
        int cols = 0;
        double spacing_m = 0.0;
        Vec3 origin;
        Vec3 axis_row;
        Vec3 axis_col;
        std::vector<Vec3> element_positions;

        std::size_t size() const { return element_positions.size(); }
        const Vec3 &position(int r, int c) const { return element_positions[std::size_t(r) * std::size_t(cols) + std::size_t(c)]; }

        double aperture_rows_m() const { return double(rows - 1) * spacing_m; }
        double aperture_cols_m() const { return double(cols - 1) * spacing_m; }
    };

    AntennaArray build_array(int rows, int cols, double spacing_m, const Vec3 &origin,
                             const Vec3 &axis_row, const Vec3 &axis_col);

    // Same grid, placed so that its geometric center is at 'center'
    AntennaArray build_centered_array(int rows, int cols, double spacing_m, const Vec3 &center,
                                      const Vec3 &axis_row, const Vec3 &axis_col);

    enum class RouteLabel
    {
        Correct = 0,
        Anomalous = 1
    };

    const char *to_string(RouteLabel label);

    struct Trajectory
    {
        std::string route_id;
        RouteLabel label = RouteLabel::Correct;
        std::vector<Vec3> points;
        double offset_m = 0.0; // distance from the paired correct route
    };

    // n_points equally spaced points on the segment [start, end], both ends included
    Trajectory sample_route(const Vec3 &start, const Vec3 &end, int n_points,
                            const std::string &route_id = "correct");

    // Displaces every point of 'correct' by offset_m along the unit vector 'direction'
    // and labels the result Anomalous. Throws GeometryError if a point leaves the hall.
    Trajectory make_offset_route(const HallConfig &hall, const Trajectory &correct, double offset_m,
                                 const Vec3 &direction, const std::string &route_id = "anomalous");

    // Raw values of the [lis] section; the element grid is derived from them.
    struct LisConfig
    {
        int rows = 32;
        int cols = 32;
        double spacing_wavelengths = 0.5;
        Vec3 center{11.0, 0.1, 1.0};
        Vec3 axis_row{0.0, 0.0, 1.0};
        Vec3 axis_col{1.0, 0.0, 0.0};
    };

    // Raw values of the [routes] section
    struct RouteConfig
    {
        Vec3 start{4.0, 14.0, 1.0};
        Vec3 end{18.0, 14.0, 1.0};
        int n_points = 367;
        double offset_m = 0.5;
        Vec3 offset_direction{0.0, 1.0, 0.0};
    };

    struct SceneConfig
    {
        HallConfig hall;
        LisConfig lis;
        RouteConfig routes;
    };

    // Fully built world: hall, element grid, one correct and one anomalous route.
    struct Scene
    {
        HallConfig hall;
        AntennaArray lis;
        Trajectory correct;
        Trajectory anomalous;
    };

    // Builds and validates every piece of the scene. Array elements and route
    // points must lie inside the hall.
    Scene build_scene(const SceneConfig &config);

    // Reads [hall], [lis] and [routes] from a structured text (INI) file
    SceneConfig load_scene_config(const std::string &path);

} // namespace holosense::scene

#endif
