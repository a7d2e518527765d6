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

#include "holosense/counter_rng.hpp"
#include "holosense/errors.hpp"
#include "holosense/scene.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace holosense;
using namespace holosense::scene;

namespace
{
    const Vec3 kX{1.0, 0.0, 0.0};
    const Vec3 kY{0.0, 1.0, 0.0};
    const Vec3 kZ{0.0, 0.0, 1.0};
} // namespace

TEST_CASE("single element grid sits at the origin")
{
    const auto a = build_array(1, 1, 0.3, {1.0, 2.0, 3.0}, kX, kY);
    REQUIRE(a.size() == 1);
    CHECK(a.position(0, 0) == Vec3{1.0, 2.0, 3.0});
    CHECK(a.aperture_rows_m() == 0.0);
}

TEST_CASE("2x2 unit grid positions")
{
    const auto a = build_array(2, 2, 1.0, {0.0, 0.0, 0.0}, kX, kY);
    REQUIRE(a.size() == 4);
    CHECK(a.element_positions[0] == Vec3{0, 0, 0});
    CHECK(a.element_positions[1] == Vec3{0, 1, 0});
    CHECK(a.element_positions[2] == Vec3{1, 0, 0});
    CHECK(a.element_positions[3] == Vec3{1, 1, 0});
}

TEST_CASE("128x128 half-wavelength array spans 5.44 m")
{
    HallConfig hall;
    const double spacing = 0.5 * hall.wavelength();
    CHECK(spacing == doctest::Approx(0.042827).epsilon(1e-5));
    const auto a = build_array(128, 128, spacing, {0, 0, 0}, kZ, kX);
    CHECK(a.aperture_rows_m() == doctest::Approx(5.44).epsilon(1e-3));
    CHECK(a.aperture_cols_m() == doctest::Approx(5.44).epsilon(1e-3));
}

TEST_CASE("grid reconstruction matches the affine formula")
{
    rng::Stream s(11);
    for (int trial = 0; trial < 20; ++trial)
    {
        const int rows = 1 + int(s.below(20));
        const int cols = 1 + int(s.below(20));
        const double spacing = 0.01 + s.uniform();
        const Vec3 origin{s.uniform() * 5, s.uniform() * 5, s.uniform() * 5};
        const auto a = build_array(rows, cols, spacing, origin, kZ, kX);
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c)
            {
                const Vec3 expected = origin + kZ * (r * spacing) + kX * (c * spacing);
                CHECK(distance(a.position(r, c), expected) <= 1e-12);
            }
    }
}

TEST_CASE("centered array has its centroid at the requested point")
{
    const Vec3 center{4.0, 0.1, 1.5};
    const auto a = build_centered_array(16, 16, 0.05, center, kZ, kX);
    Vec3 sum;
    for (const auto &p : a.element_positions)
        sum = sum + p;
    CHECK(distance(sum * (1.0 / double(a.size())), center) < 1e-12);
}

TEST_CASE("non-orthonormal axes are rejected")
{
    CHECK_THROWS_AS(build_array(2, 2, 1.0, {}, kX, Vec3{1.0, 1.0, 0.0}), GeometryError);
    CHECK_THROWS_AS(build_array(2, 2, 1.0, {}, Vec3{2.0, 0.0, 0.0}, kY), GeometryError);
    CHECK_THROWS_AS(build_array(0, 2, 1.0, {}, kX, kY), GeometryError);
}

TEST_CASE("sample_route endpoints and midpoint")
{
    const auto two = sample_route({0, 0, 0}, {1, 0, 0}, 2);
    REQUIRE(two.points.size() == 2);
    CHECK(two.points[0] == Vec3{0, 0, 0});
    CHECK(two.points[1] == Vec3{1, 0, 0});

    const auto three = sample_route({0, 0, 0}, {1, 0, 0}, 3);
    CHECK(three.points[1] == Vec3{0.5, 0, 0});

    const auto full = sample_route({4, 14, 1}, {18, 14, 1}, 367);
    CHECK(full.points.size() == 367);
    CHECK(full.points.back() == Vec3{18, 14, 1});
    CHECK(full.label == RouteLabel::Correct);
}

TEST_CASE("offset route keeps count, order and pairwise distance")
{
    HallConfig hall;
    const auto correct = sample_route({4, 14, 1}, {18, 14, 1}, 50);

    const auto zero = make_offset_route(hall, correct, 0.0, kY);
    CHECK(zero.label == RouteLabel::Anomalous);
    CHECK(zero.points == correct.points);

    for (const double offset : {0.5, 0.1})
    {
        const auto moved = make_offset_route(hall, correct, offset, kY);
        REQUIRE(moved.points.size() == correct.points.size());
        CHECK(moved.offset_m == offset);
        for (std::size_t i = 0; i < moved.points.size(); ++i)
            CHECK(distance(moved.points[i], correct.points[i]) == doctest::Approx(offset).epsilon(1e-13));
        for (std::size_t i = 1; i < moved.points.size(); ++i)
            CHECK(moved.points[i][0] > moved.points[i - 1][0]);
    }
}

TEST_CASE("offset that leaves the hall is a geometry error")
{
    HallConfig hall;
    const auto correct = sample_route({4, 21.8, 1}, {18, 21.8, 1}, 5);
    CHECK_THROWS_AS(make_offset_route(hall, correct, 0.5, kY), GeometryError);
}

TEST_CASE("hall validation")
{
    HallConfig hall;
    CHECK_NOTHROW(hall.validate());
    CHECK(hall.contains({0, 0, 0}));
    CHECK(hall.contains({22, 22, 6}));
    CHECK_FALSE(hall.contains({22.001, 1, 1}));

    auto bad = hall;
    bad.wall_reflection_gamma = 1.5;
    CHECK_THROWS_AS(bad.validate(), GeometryError);
    bad = hall;
    bad.height_m = 0.0;
    CHECK_THROWS_AS(bad.validate(), GeometryError);
}

TEST_CASE("build_scene is deterministic and validates placement")
{
    SceneConfig cfg;
    const auto a = build_scene(cfg);
    const auto b = build_scene(cfg);
    CHECK(a.lis.element_positions == b.lis.element_positions);
    CHECK(a.correct.points == b.correct.points);
    CHECK(a.anomalous.points == b.anomalous.points);
    CHECK(a.lis.size() == 32 * 32);

    cfg.lis.center = {11.0, -1.0, 1.0};
    CHECK_THROWS_AS(build_scene(cfg), GeometryError);
}

TEST_CASE("scene config round trip through an INI file")
{
    const auto dir = testing::scratch_dir("scene_ini");
    testing::spit(dir / "s.ini", "[hall]\nwidth_m = 8\ndepth_m = 6\nheight_m = 3\nmax_reflection_order = 1\n"
                                 "[lis]\nrows = 4\ncols = 5\ncenter_m = 4, 0.1, 1.5\n"
                                 "[routes]\nstart_m = 2, 2, 1\nend_m = 6, 2, 1\nn_points = 9\noffset_m = 0.25\n");
    const auto cfg = load_scene_config((dir / "s.ini").string());
    CHECK(cfg.hall.width_m == 8.0);
    CHECK(cfg.hall.max_reflection_order == 1);
    CHECK(cfg.hall.carrier_freq_hz == 3.5e9);
    CHECK(cfg.lis.rows == 4);
    CHECK(cfg.lis.cols == 5);
    CHECK(cfg.routes.n_points == 9);
    CHECK(cfg.routes.offset_m == 0.25);
    CHECK(cfg.routes.end == Vec3{6, 2, 1});

    testing::spit(dir / "bad.ini", "[hall]\nwidth_m = wide\n");
    CHECK_THROWS_AS(load_scene_config((dir / "bad.ini").string()), ConfigError);
    CHECK_THROWS_AS(load_scene_config((dir / "missing.ini").string()), ConfigError);
}
