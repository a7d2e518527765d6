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

#include "holosense/scene.hpp"

#include "holosense/errors.hpp"
#include "ini_util.hpp"

#include <cmath>
#include <string>

namespace holosense::scene
{
    namespace
    {
        constexpr double kUnitTolerance = 1e-9;

        std::string fmt_point(const Vec3 &p)
        {
            return "(" + std::to_string(p.x) + ", " + std::to_string(p.y) + ", " + std::to_string(p.z) + ")";
        }

        void require_unit(const Vec3 &v, const char *what)
        {
            if (std::abs(norm(v) - 1.0) > kUnitTolerance)
                throw GeometryError(std::string(what) + " must have unit norm");
        }
    } // namespace

    bool HallConfig::contains(const Vec3 &p) const
    {
        return p.x >= 0.0 && p.x <= width_m && p.y >= 0.0 && p.y <= depth_m && p.z >= 0.0 && p.z <= height_m;
    }

    void HallConfig::validate() const
    {
        if (!(width_m > 0.0 && depth_m > 0.0 && height_m > 0.0))
            throw GeometryError("hall dimensions must be positive");
        if (!(wall_reflection_gamma >= 0.0 && wall_reflection_gamma <= 1.0))
            throw GeometryError("wall_reflection_gamma must lie in [0, 1]");
        if (max_reflection_order < 0)
            throw GeometryError("max_reflection_order must be >= 0");
        if (!(carrier_freq_hz > 0.0) || !std::isfinite(carrier_freq_hz))
            throw GeometryError("carrier_freq_hz must be positive");
        if (!std::isfinite(tx_power_dbm))
            throw GeometryError("tx_power_dbm must be finite");
        if (n_ray_paths < 1)
            throw GeometryError("n_ray_paths must be >= 1");
    }

    const char *to_string(RouteLabel label)
    {
        return label == RouteLabel::Correct ? "Correct" : "Anomalous";
    }

    AntennaArray build_array(int rows, int cols, double spacing_m, const Vec3 &origin,
                             const Vec3 &axis_row, const Vec3 &axis_col)
    {
        if (rows < 1 || cols < 1)
            throw GeometryError("array rows and cols must be >= 1");
        if (!(spacing_m > 0.0) || !std::isfinite(spacing_m))
            throw GeometryError("array spacing must be positive");
        require_unit(axis_row, "axis_row");
        require_unit(axis_col, "axis_col");
        if (std::abs(dot(axis_row, axis_col)) > kUnitTolerance)
            throw GeometryError("array axes must be orthogonal");

        AntennaArray array;
        array.rows = rows;
        array.cols = cols;
        array.spacing_m = spacing_m;
        array.origin = origin;
        array.axis_row = axis_row;
        array.axis_col = axis_col;
        array.element_positions.reserve(std::size_t(rows) * std::size_t(cols));
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c)
                array.element_positions.push_back(origin + (double(r) * spacing_m) * axis_row + (double(c) * spacing_m) * axis_col);
        return array;
    }

    AntennaArray build_centered_array(int rows, int cols, double spacing_m, const Vec3 &center,
                                      const Vec3 &axis_row, const Vec3 &axis_col)
    {
        const Vec3 origin = center - (0.5 * double(rows - 1) * spacing_m) * axis_row - (0.5 * double(cols - 1) * spacing_m) * axis_col;
        return build_array(rows, cols, spacing_m, origin, axis_row, axis_col);
    }

    Trajectory sample_route(const Vec3 &start, const Vec3 &end, int n_points, const std::string &route_id)
    {
        if (n_points < 2)
            throw GeometryError("a sampled route needs at least 2 points");
        Trajectory route;
        route.route_id = route_id;
        route.label = RouteLabel::Correct;
        route.points.reserve(std::size_t(n_points));
        const Vec3 step = end - start;
        for (int k = 0; k < n_points; ++k)
        {
            if (k == n_points - 1)
            {
                route.points.push_back(end);
                break;
            }
            const double t = double(k) / double(n_points - 1);
            route.points.push_back(start + t * step);
        }
        return route;
    }

    Trajectory make_offset_route(const HallConfig &hall, const Trajectory &correct, double offset_m,
                                 const Vec3 &direction, const std::string &route_id)
    {
        require_unit(direction, "offset direction");
        if (!(offset_m >= 0.0) || !std::isfinite(offset_m))
            throw GeometryError("route offset must be a non-negative distance");

        Trajectory route;
        route.route_id = route_id;
        route.label = RouteLabel::Anomalous;
        route.offset_m = offset_m;
        route.points.reserve(correct.points.size());
        const Vec3 shift = offset_m * direction;
        for (const auto &p : correct.points)
        {
            const Vec3 q = p + shift;
            if (!hall.contains(q))
                throw GeometryError("offset route point " + fmt_point(q) + " lies outside the hall");
            route.points.push_back(q);
        }
        return route;
    }

    Scene build_scene(const SceneConfig &config)
    {
        config.hall.validate();
        Scene scene;
        scene.hall = config.hall;

        const double spacing = config.lis.spacing_wavelengths * config.hall.wavelength();
        scene.lis = build_centered_array(config.lis.rows, config.lis.cols, spacing, config.lis.center,
                                         config.lis.axis_row, config.lis.axis_col);
        for (const auto &p : scene.lis.element_positions)
            if (!scene.hall.contains(p))
                throw GeometryError("LIS element " + fmt_point(p) + " lies outside the hall");

        scene.correct = sample_route(config.routes.start, config.routes.end, config.routes.n_points, "correct");
        for (const auto &p : scene.correct.points)
            if (!scene.hall.contains(p))
                throw GeometryError("route point " + fmt_point(p) + " lies outside the hall");

        scene.anomalous = make_offset_route(scene.hall, scene.correct, config.routes.offset_m,
                                            config.routes.offset_direction, "anomalous");
        return scene;
    }

    SceneConfig load_scene_config(const std::string &path)
    {
        using namespace holosense::detail;
        const Tree tree = read_ini(path);
        SceneConfig cfg;

        HallConfig &h = cfg.hall;
        h.width_m = get_double(tree, "hall.width_m", h.width_m);
        h.depth_m = get_double(tree, "hall.depth_m", h.depth_m);
        h.height_m = get_double(tree, "hall.height_m", h.height_m);
        h.wall_reflection_gamma = get_double(tree, "hall.wall_reflection_gamma", h.wall_reflection_gamma);
        h.max_reflection_order = get_int(tree, "hall.max_reflection_order", h.max_reflection_order);
        h.carrier_freq_hz = get_double(tree, "hall.carrier_freq_hz", h.carrier_freq_hz);
        h.tx_power_dbm = get_double(tree, "hall.tx_power_dbm", h.tx_power_dbm);
        h.n_ray_paths = get_int(tree, "hall.n_ray_paths", h.n_ray_paths);

        LisConfig &l = cfg.lis;
        l.rows = get_int(tree, "lis.rows", l.rows);
        l.cols = get_int(tree, "lis.cols", l.cols);
        l.spacing_wavelengths = get_double(tree, "lis.spacing_wavelengths", l.spacing_wavelengths);
        l.center = get_vec3(tree, "lis.center_m", l.center);
        l.axis_row = get_vec3(tree, "lis.axis_row", l.axis_row);
        l.axis_col = get_vec3(tree, "lis.axis_col", l.axis_col);

        RouteConfig &r = cfg.routes;
        r.start = get_vec3(tree, "routes.start_m", r.start);
        r.end = get_vec3(tree, "routes.end_m", r.end);
        r.n_points = get_int(tree, "routes.n_points", r.n_points);
        r.offset_m = get_double(tree, "routes.offset_m", r.offset_m);
        r.offset_direction = get_vec3(tree, "routes.offset_direction", r.offset_direction);
        return cfg;
    }

} // namespace holosense::scene
