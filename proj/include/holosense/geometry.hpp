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

#ifndef HOLOSENSE_GEOMETRY_HPP
#define HOLOSENSE_GEOMETRY_HPP

#include <cmath>

namespace holosense
{
    // Cartesian 3-vector in meters
    struct Vec3
    {
        double x = 0.0;
        double y = 0.0;
        double z = 0.0;

        constexpr Vec3 operator+(const Vec3 &o) const { return {x + o.x, y + o.y, z + o.z}; }
        constexpr Vec3 operator-(const Vec3 &o) const { return {x - o.x, y - o.y, z - o.z}; }
        constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
        constexpr bool operator==(const Vec3 &o) const = default;

        constexpr double operator[](int axis) const { return axis == 0 ? x : (axis == 1 ? y : z); }
        constexpr double &operator[](int axis) { return axis == 0 ? x : (axis == 1 ? y : z); }
    };

    constexpr Vec3 operator*(double s, const Vec3 &v) { return v * s; }

    constexpr double dot(const Vec3 &a, const Vec3 &b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

    inline double norm(const Vec3 &v) { return std::sqrt(dot(v, v)); }

    inline double distance(const Vec3 &a, const Vec3 &b) { return norm(a - b); }

} // namespace holosense

#endif
